"""Run reports: structured JSON with a separate timing section, plus a text view."""
from __future__ import annotations

import json
import time
from contextlib import contextmanager
from pathlib import Path

from . import __version__
from .algebra import Element, StructureAlgebra
from .identities import Verdict, evaluate
from .dsl import parse
from .io import algebra_from_dict, algebra_to_dict, digest, element_from_dict, element_to_dict

REPORT_FORMAT = "nva-report/1"


class Report:
    def __init__(self, command: str, argv=None):
        self.data: dict = {"format": REPORT_FORMAT, "command": command,
                           "argv": list(argv or []), "version": __version__,
                           "inputs": [], "parameters": {}, "results": []}
        self.timing: dict = {}

    def add_input(self, path):
        self.data["inputs"].append({"name": Path(path).name, "sha256": digest(path)})

    def param(self, **kw):
        self.data["parameters"].update(kw)

    def result(self, entry: dict):
        self.data["results"].append(entry)

    @contextmanager
    def timed(self, label: str):
        t = time.perf_counter()
        try:
            yield
        finally:
            self.timing[label] = round(time.perf_counter() - t, 6)

    def to_json(self) -> dict:
        out = dict(self.data)
        out["timing"] = dict(self.timing)
        return out

    def dumps(self) -> str:
        return dumps_report(self.to_json())


def dumps_report(obj: dict) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def without_timing(obj: dict) -> dict:
    return {k: v for k, v in obj.items() if k != "timing"}


# -- witnesses -----------------------------------------------------------------


def identity_witness(A: StructureAlgebra, identity_text: str, assignment: dict, value: Element) -> dict:
    """Everything needed to re-evaluate a failure without the original files."""
    return {"kind": "identity", "identity": identity_text,
            "assignment": {k: element_to_dict(v) for k, v in sorted(assignment.items())},
            "value": element_to_dict(value), "algebra": algebra_to_dict(A)}


def verdict_entry(A: StructureAlgebra, verdict: Verdict) -> dict:
    entry = {"identity": verdict.identity, "holds": verdict.holds,
             "components": verdict.components, "evaluations": verdict.evaluations}
    if not verdict.holds:
        entry["witness"] = identity_witness(A, verdict.witness_identity, verdict.witness, verdict.value)
        entry["witness"]["witness_kind"] = verdict.witness_kind
    return entry


def _iter_witnesses(obj):
    if isinstance(obj, dict):
        if obj.get("kind") in ("identity", "nilpotent-sum") and "algebra" in obj:
            yield obj
        for v in obj.values():
            yield from _iter_witnesses(v)
    elif isinstance(obj, list):
        for v in obj:
            yield from _iter_witnesses(v)


def replay_witness(w: dict) -> tuple[bool, str]:
    """(confirmed, description) for one stored witness."""
    A = algebra_from_dict(w["algebra"])
    if w["kind"] == "identity":
        asg = {k: element_from_dict(A, v) for k, v in w["assignment"].items()}
        val = evaluate(A, parse(w["identity"]).poly, asg)
        stored = element_from_dict(A, w["value"])
        ok = not val.is_zero() and val == stored
        return ok, f"{w['identity']} -> {val}"
    from .algebra import _coords_nilpotent

    cutoff = A.dim + 1
    a, b = (element_from_dict(A, x) for x in w["pair"])
    ok = (_coords_nilpotent(A, a.coords, cutoff) and _coords_nilpotent(A, b.coords, cutoff)
          and not _coords_nilpotent(A, (a + b).coords, cutoff))
    return ok, f"nilpotent {a} and {b}, sum {a + b}"


def replay_report(obj: dict) -> list[tuple[bool, str]]:
    return [replay_witness(w) for w in _iter_witnesses(obj)]


def nilpotent_sum_witness(A: StructureAlgebra, a: Element, b: Element) -> dict:
    return {"kind": "nilpotent-sum", "pair": [element_to_dict(a), element_to_dict(b)],
            "sum": element_to_dict(a + b), "algebra": algebra_to_dict(A)}


# -- text rendering -------------------------------------------------------------


def render_text(obj: dict) -> str:
    lines = [f"nva {obj.get('version')}  {obj.get('command')}"]
    for inp in obj.get("inputs", []):
        lines.append(f"  input {inp['name']}  sha256 {inp['sha256'][:16]}")
    for k, v in obj.get("parameters", {}).items():
        lines.append(f"  {k}: {v}")
    for r in obj.get("results", []):
        lines.append("")
        lines.extend(_render_result(r))
    if "replay" in obj:
        rp = obj["replay"]
        lines.append("")
        lines.append(f"replay: {rp['confirmed']}/{rp['witnesses']} witnesses confirmed")
    if obj.get("timing"):
        lines.append("")
        lines.append("timing: " + ", ".join(f"{k} {v:.3f}s" for k, v in obj["timing"].items()))
    return "\n".join(lines) + "\n"


def _render_result(r: dict) -> list[str]:
    out = []
    if "identity" in r and "holds" in r:
        out.append(f"{r['identity']}: {'holds' if r['holds'] else 'FAILS'}")
        w = r.get("witness")
        if w:
            asg = ", ".join(f"{k} = {_fmt(v)}" for k, v in w["assignment"].items())
            out.append(f"  witness for {w['identity']}: {asg}")
            out.append(f"  value: {_fmt(w['value'])}")
        return out
    for k, v in r.items():
        v = _strip_algebras(v)
        out.append(f"{k}: {v if isinstance(v, str) else json.dumps(v, ensure_ascii=False)}")
    return out


def _strip_algebras(v):
    if isinstance(v, dict):
        return {k: _strip_algebras(x) for k, x in v.items() if k != "algebra"}
    if isinstance(v, list):
        return [_strip_algebras(x) for x in v]
    return v


def _fmt(d: dict) -> str:
    if not d:
        return "0"
    return " + ".join(f"{c}*{n}" if c != "1" else n for n, c in d.items())
