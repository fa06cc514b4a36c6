"""Command-line front end.

Exit status 0 means the run completed, whatever the verdicts say; 1 means
the tool could not do its job (bad input, budget exceeded, ...); 2 is a
usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .algebra import BudgetExceeded, MethodInapplicable, nil_radical_finite, nilpotency_index
from .constructions import ConstructionError, scalar_extension
from .dsl import ParseError, read_identity_file
from .fields import FieldError, FieldSpec
from .identities import CharacteristicError, holds_in
from .io import FormatError, build, dumps_algebra, load_recipe, read_algebra, subspace_to_rows
from .report import (Report, dumps_report, nilpotent_sum_witness, render_text, replay_report,
                     verdict_entry)
from .varieties import VarietyPresentation, admissibility_probe, nonmatrix_gate
from . import verification as ver

ANALYSES = ("nilpotent-set", "operator-chain", "power-inclusion", "minimal-k", "finite-nil",
            "nil-radical", "nilpotency-index")


class ToolError(Exception):
    pass


def _field(text):
    try:
        return FieldSpec.from_flag(text)
    except (FieldError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text):
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", type=_field, default=None,
                        help="q, gf:<p> or q-sqrt:<d>")
    common.add_argument("--max-degree", type=_positive, default=4)
    common.add_argument("--budget-tuples", type=_positive, default=2_000_000)
    common.add_argument("--budget-enum", type=_positive, default=200_000)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("--out", default=None, help="write the output here instead of stdout")
    common.add_argument("--replay", action="store_true",
                        help="re-evaluate every witness after the run")

    p = argparse.ArgumentParser(prog="nva", description="Nonassociative algebra toolkit.")
    p.add_argument("--version", action="version", version=f"nva {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", parents=[common], help="build an algebra file from a recipe")
    c.add_argument("recipe")

    c = sub.add_parser("check", parents=[common], help="check identities in an algebra")
    c.add_argument("algebra")
    c.add_argument("identities")

    c = sub.add_parser("probe-admissibility", parents=[common],
                       help="least degree where purely Lie products fall into the circle span")
    c.add_argument("presentation")
    c.add_argument("--rational", action="store_true", help="work over Q instead of GF(101)")
    c.add_argument("--bracket-scale", default="1/2")

    c = sub.add_parser("gate", parents=[common], help="nonmatrix gate on a test bank")
    c.add_argument("presentation")
    c.add_argument("--lambda", dest="lambdas", action="append", default=None,
                   help="mutation parameter for the ncjordan bank (repeatable)")

    c = sub.add_parser("analyze", parents=[common], help="finite-dimensional analyses")
    c.add_argument("algebra")
    c.add_argument("analysis", choices=ANALYSES)
    c.add_argument("-n", type=_positive, default=2)
    c.add_argument("-k", type=_positive, default=None)
    c.add_argument("--cutoff", type=_positive, default=None)
    c.add_argument("--sampling", action="store_true")
    c.add_argument("--samples", type=_positive, default=5000)
    c.add_argument("--method", default=None, help="nil-radical method or finite-nil mode")

    c = sub.add_parser("replay", parents=[common], help="re-evaluate the witnesses of a report")
    c.add_argument("report")
    return p


def _emit(args, text: str):
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _finish(args, rep: Report):
    if args.replay:
        results = replay_report(rep.to_json())
        rep.data["replay"] = {"witnesses": len(results), "confirmed": sum(ok for ok, _ in results)}
    obj = rep.to_json()
    _emit(args, dumps_report(obj) if args.format == "structured" else render_text(obj))


def _algebra(args, path):
    A = read_algebra(path)
    if args.field is not None and args.field != A.field:
        A = scalar_extension(A, args.field)
    return A


def _presentation(args, path):
    text = Path(path).read_text(encoding="utf-8")
    return VarietyPresentation.from_text(text, args.field)


def cmd_construct(args, argv):
    recipe = load_recipe(args.recipe)
    from .fields import Q

    A = build(recipe, args.field or Q)
    text = dumps_algebra(A)
    _emit(args, text)
    if args.out:
        print(f"wrote {args.out}: dim {A.dim} over {A.field}", file=sys.stderr)


def cmd_check(args, argv):
    rep = Report("check", argv)
    rep.add_input(args.algebra)
    rep.add_input(args.identities)
    A = _algebra(args, args.algebra)
    ids = read_identity_file(Path(args.identities).read_text(encoding="utf-8"))
    rep.param(field=str(A.field), dim=A.dim, budget_tuples=args.budget_tuples)
    for ident in ids:
        with rep.timed(ident.text):
            verdict = holds_in(A, ident, budget=args.budget_tuples)
        rep.result(verdict_entry(A, verdict))
    _finish(args, rep)


def cmd_probe(args, argv):
    rep = Report("probe-admissibility", argv)
    rep.add_input(args.presentation)
    V = _presentation(args, args.presentation)
    from .fields import Q

    field = Q if args.rational else V.field
    scale = Fraction(args.bracket_scale)
    rep.param(class_tag=V.class_tag, identities=[i.text for i in V.identities], field=str(field),
              max_degree=args.max_degree, bracket_scale=str(scale))
    with rep.timed("probe"):
        r = admissibility_probe(V, args.max_degree, field, bracket_scale=scale)
    rep.result(r.to_json())
    _finish(args, rep)


def cmd_gate(args, argv):
    rep = Report("gate", argv)
    rep.add_input(args.presentation)
    V = _presentation(args, args.presentation)
    kw = {}
    if args.lambdas:
        kw["lambdas"] = [Fraction(x) for x in args.lambdas]
    rep.param(class_tag=V.class_tag, identities=[i.text for i in V.identities], field=str(V.field))
    with rep.timed("gate"):
        g = nonmatrix_gate(V, budget=args.budget_tuples, **kw)
    rep.result(g.to_json())
    _finish(args, rep)


def cmd_analyze(args, argv):
    rep = Report("analyze", argv)
    rep.add_input(args.algebra)
    A = _algebra(args, args.algebra)
    name = args.analysis
    rep.param(analysis=name, field=str(A.field), dim=A.dim)
    with rep.timed(name):
        if name == "nilpotent-set":
            r = ver.nilpotent_set_analysis(A, args.budget_enum, args.sampling, args.samples,
                                           args.seed, args.cutoff)
            out = r.to_json()
            w = r.witnesses.get("sum")
            if w:
                out["witnesses"]["sum"] = nilpotent_sum_witness(A, *w)
            shaped = r.witnesses.get("proof_shape")
            if shaped:
                out["witnesses"]["proof_shape"]["replay"] = nilpotent_sum_witness(A, *shaped["pair"])
        elif name == "operator-chain":
            out = ver.operator_chain_span_check(A, args.n).to_json()
        elif name == "power-inclusion":
            out = ver.power_inclusion_check(A, args.k or args.n, args.n).to_json()
        elif name == "minimal-k":
            out = {"n": args.n, "minimal_k": ver.minimal_k(A, args.n, args.cutoff or 64)}
        elif name == "finite-nil":
            out = ver.finite_nil_implies_nilpotent_check(A, args.budget_enum, args.method or "enumerate",
                                                         args.samples, args.seed, args.cutoff).to_json()
        elif name == "nil-radical":
            method = args.method or ("enumerate-gfp" if A.field.is_finite else "trace-form-char0")
            res = nil_radical_finite(A, method, args.budget_enum, args.cutoff)
            out = {"method": res.method, "dim": res.subspace.dim, "rows": subspace_to_rows(res.subspace),
                   "is_ideal": res.is_ideal, "is_nil": res.is_nil, "verified": res.verified,
                   "diagnostics": list(res.diagnostics)}
        else:
            out = {"nilpotency_index": nilpotency_index(A, args.cutoff or A.dim + 1)}
    rep.result({"analysis": name, **out})
    _finish(args, rep)


def cmd_replay(args, argv):
    obj = json.loads(Path(args.report).read_text(encoding="utf-8"))
    results = replay_report(obj)
    lines = [f"{'confirmed' if ok else 'NOT CONFIRMED'}: {desc}" for ok, desc in results]
    confirmed = sum(ok for ok, _ in results)
    lines.append(f"{confirmed}/{len(results)} witnesses confirmed")
    if args.format == "structured":
        _emit(args, dumps_report({"command": "replay", "version": __version__,
                                  "witnesses": len(results), "confirmed": confirmed,
                                  "details": [{"confirmed": ok, "description": d} for ok, d in results]}))
    else:
        _emit(args, "\n".join(lines) + "\n")
    if confirmed != len(results):
        raise ToolError("some witnesses did not replay")


COMMANDS = {"construct": cmd_construct, "check": cmd_check, "probe-admissibility": cmd_probe,
            "gate": cmd_gate, "analyze": cmd_analyze, "replay": cmd_replay}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    try:
        COMMANDS[args.command](args, argv)
    except (ToolError, ParseError, FormatError, FieldError, ConstructionError, CharacteristicError,
            BudgetExceeded, MethodInapplicable, FileNotFoundError, ValueError) as exc:
        print(f"nva: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
