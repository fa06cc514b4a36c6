import json
from fractions import Fraction
import subprocess
import sys

import pytest

from nva import constructions as C
from nva.cli import main
from nva.fields import GF, Q, QSqrt
from nva.io import (FormatError, algebra_from_dict, algebra_to_dict, build, dumps_algebra,
                    element_from_dict, element_to_dict, loads_algebra, subspace_from_rows,
                    subspace_to_rows)
from nva.algebra import Subspace
from nva.report import replay_report, without_timing


@pytest.mark.parametrize("A", [C.octonions(Q), C.kokoris_example(GF(7)), C.quaternions(QSqrt(-1)),
                               C.jordan_sym(2, Q)], ids=lambda A: A.meta["name"])
def test_algebra_file_round_trip(A):
    text = dumps_algebra(A)
    B = loads_algebra(text)
    assert B.same_table(A) and B.field == A.field and B.basis == A.basis
    assert dumps_algebra(B) == text


def test_bad_algebra_file():
    with pytest.raises(FormatError):
        loads_algebra('{"format": "other"}')
    d = algebra_to_dict(C.matrix_algebra(2, Q))
    d["table"].append([9, 0, 0, "1"])
    with pytest.raises(Exception):
        algebra_from_dict(d)


def test_element_and_subspace_serialization():
    A = C.quaternions(Q)
    x = 3 * A.e("i") - Fraction(1, 2) * A.e("k")
    assert element_from_dict(A, element_to_dict(x)) == x
    S = Subspace.span(A, [A.e("i"), A.e("j") + A.e("k")])
    assert subspace_from_rows(A, subspace_to_rows(S)) == S


def test_build_recipes():
    assert build({"construct": "cayley-dickson", "mu": [-1, -1, -1]}).same_table(C.octonions(Q))
    assert build({"construct": "matrix", "n": 2}).dim == 4
    zero = build({"construct": "kokoris", "base": {"construct": "truncated-polynomial",
                                                     "num_vars": 2, "degree_cap": 2}})
    assert zero.same_table(C.truncated_polynomial_algebra(2, 2, Q))
    with pytest.raises(FormatError):
        build({"construct": "nonsense"})


def _write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj), encoding="utf-8")
    return str(p)


def test_construct_examples(tmp_path, capsys):
    cd = _write(tmp_path, "cd.json", {"construct": "cayley-dickson", "mu": [-1, -1, -1]})
    out = tmp_path / "oct.json"
    assert main(["construct", cd, "--out", str(out)]) == 0
    assert loads_algebra(out.read_text()).dim == 8
    m = _write(tmp_path, "m.json", {"construct": "matrix", "n": 2})
    assert main(["construct", m]) == 0
    assert loads_algebra(capsys.readouterr().out).dim == 4


def test_construct_idempotent_and_zero_bracket(tmp_path):
    base = {"construct": "truncated-polynomial", "num_vars": 1, "degree_cap": 3}
    r1 = _write(tmp_path, "k.json", {"construct": "kokoris", "base": base})
    r2 = _write(tmp_path, "b.json", base)
    outs = []
    for n, r in enumerate([r1, r1, r2]):
        o = tmp_path / f"out{n}.json"
        assert main(["construct", r, "--out", str(o)]) == 0
        outs.append(o.read_bytes())
    assert outs[0] == outs[1]
    assert loads_algebra(outs[0].decode()).same_table(loads_algebra(outs[2].decode()))


@pytest.fixture
def m2_file(tmp_path):
    return _write(tmp_path, "m2.json", dumps_algebra(C.matrix_algebra(2, Q)))


def test_check_reports(tmp_path, m2_file):
    ids = _write(tmp_path, "ids.txt", "[x,y]^2\n(x,y,z)\n")
    out = tmp_path / "r.json"
    assert main(["check", m2_file, ids, "--format", "structured", "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert [r["holds"] for r in rep["results"]] == [False, True]
    w = rep["results"][0]["witness"]
    assert w["assignment"] == {"x": {"e12": "1"}, "y": {"e21": "1"}}
    assert all(ok for ok, _ in replay_report(rep))
    oct_file = _write(tmp_path, "o.json", dumps_algebra(C.octonions(Q)))
    alt = _write(tmp_path, "alt.txt", "(x,x,y)\n")
    out2 = tmp_path / "o.json.r"
    assert main(["check", oct_file, alt, "--format", "structured", "--out", str(out2)]) == 0
    assert json.loads(out2.read_text())["results"][0]["holds"] is True


def test_structured_reports_are_deterministic(tmp_path, m2_file, capsys):
    ids = _write(tmp_path, "ids.txt", "[x,y]^2\n(x,y,x)\n")
    texts = []
    for _ in range(2):
        assert main(["check", m2_file, ids, "--format", "structured"]) == 0
        rep = json.loads(capsys.readouterr().out)
        assert "timing" in rep
        texts.append(json.dumps(without_timing(rep), indent=2))
    assert texts[0] == texts[1]


def test_probe_and_gate(tmp_path):
    pres = _write(tmp_path, "j.txt", "class: jordan\n")
    out = tmp_path / "p.json"
    assert main(["probe-admissibility", pres, "--max-degree", "4", "--format", "structured",
                 "--out", str(out)]) == 0
    assert json.loads(out.read_text())["results"][0]["index"] == 2
    gate = _write(tmp_path, "g.txt", "class: associative\n[x,y]^2\n")
    out = tmp_path / "g.json"
    assert main(["gate", gate, "--format", "structured", "--replay", "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["results"][0]["nonmatrix"] is True
    assert rep["replay"]["confirmed"] == rep["replay"]["witnesses"] >= 1


def test_analyze_and_replay(tmp_path):
    m2 = _write(tmp_path, "m2.json", dumps_algebra(C.matrix_algebra(2, GF(5))))
    out = tmp_path / "a.json"
    assert main(["analyze", m2, "nilpotent-set", "--format", "structured", "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["results"][0]["closed_under_sum"] is False
    assert main(["replay", str(out)]) == 0
    n4 = _write(tmp_path, "n4.json", dumps_algebra(C.kokoris_nilpotent_example(GF(5))))
    for analysis in ("operator-chain", "power-inclusion", "minimal-k", "finite-nil", "nil-radical",
                     "nilpotency-index"):
        assert main(["analyze", n4, analysis, "-n", "2"]) == 0


def test_replay_detects_tampering(tmp_path, m2_file):
    ids = _write(tmp_path, "ids.txt", "[x,y]^2\n")
    out = tmp_path / "r.json"
    main(["check", m2_file, ids, "--format", "structured", "--out", str(out)])
    rep = json.loads(out.read_text())
    rep["results"][0]["witness"]["assignment"]["y"] = {"e12": "1"}
    bad = _write(tmp_path, "bad.json", rep)
    assert main(["replay", bad]) == 1


def test_exit_codes(tmp_path, m2_file, capsys):
    assert main(["check", m2_file, str(tmp_path / "missing.txt")]) == 1
    bad = _write(tmp_path, "bad.txt", "(x,y\n")
    assert main(["check", m2_file, bad]) == 1
    assert "nva: error:" in capsys.readouterr().err
    big = _write(tmp_path, "o.json", dumps_algebra(C.octonions(Q)))
    ids = _write(tmp_path, "ids.txt", "(x,y,z) o w\n")
    assert main(["check", big, ids, "--budget-tuples", "10"]) == 1
    with pytest.raises(SystemExit) as exc:
        main(["check"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["check", m2_file, ids, "--field", "reals"])
    assert exc.value.code == 2


def test_console_script_module_entry(tmp_path, m2_file):
    ids = _write(tmp_path, "ids.txt", "(x,y,z)\n")
    res = subprocess.run([sys.executable, "-m", "nva.cli", "check", m2_file, ids],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "holds" in res.stdout
