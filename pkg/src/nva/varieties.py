"""Multilinear components of free nonassociative algebras and the linear
algebra of T-ideal consequences: implication, admissibility probing and
nonmatrix gates.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import BudgetExceeded, StructureAlgebra
from .dsl import Identity, parse, read_identity_file
from .fields import FieldSpec, GF, Q
from .identities import CharacteristicError, check_characteristic, holds_in, polarize
from .linalg import Echelon
from .poly import NAPoly, catalan, fill, leaves, multilinear_monomials, trees

DEFAULT_FIELD = GF(101)
COLUMN_BUDGET = 10_000

CLASS_IDENTITIES = {
    "associative": ["(x,y,z)"],
    "alternative": ["(x,x,y)", "(y,x,x)"],
    "jordan": ["[x,y]", "(x^2,y,x)"],
    "ncjordan": ["(x,y,x)", "(x^2,y,x)"],
    "anticommutative": ["x^2"],
    "custom": [],
}


@dataclass
class VarietyPresentation:
    identities: list
    class_tag: str = "custom"
    field: FieldSpec = DEFAULT_FIELD

    def __post_init__(self):
        if self.class_tag not in CLASS_IDENTITIES:
            raise ValueError(f"unknown class {self.class_tag!r}")
        self.identities = [i if isinstance(i, Identity) else parse(i) for i in self.identities]

    @property
    def defining(self) -> list[Identity]:
        """Class identities followed by the presentation's own."""
        return [parse(t) for t in CLASS_IDENTITIES[self.class_tag]] + list(self.identities)

    @classmethod
    def from_text(cls, text: str, field: FieldSpec | None = None) -> "VarietyPresentation":
        tag = "custom"
        fld = field
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if line.lower().startswith("class:"):
                tag = line.split(":", 1)[1].strip()
            elif line.lower().startswith("field:") and fld is None:
                fld = FieldSpec.from_flag(line.split(":", 1)[1].strip())
        ids = read_identity_file(text)
        return cls(ids, tag, fld or DEFAULT_FIELD)

    def to_text(self) -> str:
        lines = [f"class: {self.class_tag}"]
        lines.extend(i.text for i in self.identities)
        return "\n".join(lines) + "\n"


def variety(class_tag: str, *identities, field: FieldSpec = DEFAULT_FIELD) -> VarietyPresentation:
    return VarietyPresentation(list(identities), class_tag, field)


# -- multilinear spaces ------------------------------------------------------------


def multilinear_dimension(n: int) -> int:
    return math.factorial(n) * catalan(n - 1)


class MultilinearSpace:
    """Degree-n multilinear monomials on x1..xn.

    Column order: trees in :func:`nva.poly.trees` order, then permutations
    of the variables in lexicographic order.
    """

    def __init__(self, n: int, budget: int = COLUMN_BUDGET):
        if n < 1:
            raise ValueError("degree must be >= 1")
        size = multilinear_dimension(n)
        if size > budget:
            raise BudgetExceeded(f"degree {n} has {size} monomials, over the budget {budget}")
        self.n = n
        self.names = [f"x{i}" for i in range(1, n + 1)]
        self.monomials = multilinear_monomials(self.names)
        self.index = {m: c for c, m in enumerate(self.monomials)}

    @property
    def dim(self) -> int:
        return len(self.monomials)

    def vector(self, poly: NAPoly) -> dict:
        out = {}
        for m, c in poly.terms.items():
            if m not in self.index:
                raise ValueError(f"{m} is not a multilinear monomial of degree {self.n}")
            out[self.index[m]] = c
        return out

    def poly(self, row: dict) -> NAPoly:
        return NAPoly({self.monomials[c]: _to_fraction(v) for c, v in row.items()})


_SPACES: dict = {}


def multilinear_basis(n: int, budget: int = COLUMN_BUDGET) -> MultilinearSpace:
    if n not in _SPACES:
        _SPACES[n] = MultilinearSpace(n, budget)
    return _SPACES[n]


def _to_fraction(v):
    from .fields import ModP

    if isinstance(v, ModP):
        # smallest representative, symmetric around 0
        x = v.v
        return Fraction(x - v.p if x > v.p // 2 else x)
    return Fraction(v)


def canonical_multilinear(poly: NAPoly) -> NAPoly:
    """Rename the variables of a multilinear polynomial to x1..xd (sorted order)."""
    names = sorted(poly.variables())
    return poly.rename({v: f"x{i}" for i, v in enumerate(names, 1)})


# -- consequences -----------------------------------------------------------------


@dataclass
class ConsequenceSpan:
    space: MultilinearSpace
    echelon: Echelon

    @property
    def rank(self) -> int:
        return self.echelon.rank

    @property
    def quotient_dimension(self) -> int:
        return self.space.dim - self.echelon.rank

    def contains(self, poly: NAPoly) -> bool:
        return self.echelon.contains(self.space.vector(poly))

    def rows(self) -> list[dict]:
        return self.echelon.rows()


class ConsequenceEngine:
    """Builds and caches consequence spans of a presentation, degree by degree.

    Degree-n span = substitutions of multilinear monomials into the
    polarized identities of degree n, plus products of lower-degree
    consequences with monomials on the complementary variables, on either
    side.  Lower degrees are S_n-invariant, so relabelling their echelon
    rows covers every context.
    """

    def __init__(self, presentation: VarietyPresentation, field: FieldSpec | None = None,
                 budget: int = COLUMN_BUDGET):
        self.presentation = presentation
        self.field = field or presentation.field
        self.budget = budget
        self._lin: list[NAPoly] = []
        for ident in presentation.defining:
            for comp in polarize(ident):
                self._lin.append(canonical_multilinear(comp.poly))
        self._spans: dict[int, ConsequenceSpan] = {}
        self._polys: dict[int, list[NAPoly]] = {}

    def _check_char(self, n):
        check_characteristic(self.field, n)
        for p in self._lin:
            check_characteristic(self.field, p.degree())

    def substitution_rows(self, n: int, sources=None):
        """f(m_1, ..., m_d) with monomials on a partition of all n variables."""
        space = multilinear_basis(n, self.budget)
        names = space.names
        sources = self._lin if sources is None else sources
        for f in sources:
            fvars = sorted(f.variables())
            d = len(fvars)
            if d > n:
                continue
            for labels in itertools.product(range(d), repeat=n):
                if len(set(labels)) != d:
                    continue
                blocks = [[names[i] for i in range(n) if labels[i] == b] for b in range(d)]
                choices = [multilinear_monomials(b) for b in blocks]
                for ms in itertools.product(*choices):
                    sub = {fv: NAPoly({m: 1}) for fv, m in zip(fvars, ms)}
                    yield space.vector(f.substitute(sub))

    def span(self, n: int) -> ConsequenceSpan:
        if n in self._spans:
            return self._spans[n]
        self._check_char(n)
        space = multilinear_basis(n, self.budget)
        ech = Echelon(space.dim, self.field)
        for row in self.substitution_rows(n):
            ech.add(row)
        names = space.names
        for k in range(1, n):
            lower = self.span(k)
            if lower.rank == 0:
                continue
            lower_polys = self._polys[k]
            for T in itertools.combinations(range(n), k):
                Tn = [names[i] for i in T]
                B = [names[i] for i in range(n) if i not in T]
                relabel = {f"x{i}": Tn[i - 1] for i in range(1, k + 1)}
                moved = [p.rename(relabel) for p in lower_polys]
                for m in multilinear_monomials(B):
                    mp = NAPoly({m: 1})
                    for p in moved:
                        ech.add(space.vector(p * mp))
                        ech.add(space.vector(mp * p))
        out = ConsequenceSpan(space, ech)
        self._spans[n] = out
        self._polys[n] = [space.poly(r) for r in ech.rows()]
        return out

    def regenerate(self, n: int) -> int:
        """Re-run generation at degree n seeded with the span's own rows.

        Returns the number of new rows; a closed span gives 0.
        """
        span = self.span(n)
        ech = span.echelon.copy()
        added = 0
        for row in self.substitution_rows(n, sources=self._polys[n]):
            added += ech.add(row)
        return added


def consequence_span(V: VarietyPresentation, n: int, field: FieldSpec | None = None) -> ConsequenceSpan:
    return ConsequenceEngine(V, field).span(n)


def implies(V: VarietyPresentation, target, n: int, field: FieldSpec | None = None,
            engine: ConsequenceEngine | None = None) -> bool:
    """True iff every polarized component of ``target`` lies in the consequence span."""
    engine = engine or ConsequenceEngine(V, field)
    comps = polarize(target if isinstance(target, Identity) else parse(target))
    for comp in comps:
        d = comp.poly.degree()
        if d > n:
            raise ValueError(f"target component of degree {d} exceeds n = {n}")
        if not engine.span(d).contains(canonical_multilinear(comp.poly)):
            return False
    return True


# -- admissibility --------------------------------------------------------------


def purely_lie(tree, names, scale=Fraction(1, 2)) -> NAPoly:
    """The bracket monomial of shape ``tree``: every product becomes scale*[u, v]."""
    it = iter(names)

    def go(t):
        if t is None:
            return NAPoly.var(next(it))
        a, b = go(t[0]), go(t[1])
        return (a * b - b * a).scale(scale)

    return go(tree)


def circle_rows(space: MultilinearSpace):
    names = space.names
    n = space.n
    for k in range(1, n):
        for U in itertools.combinations(names, k):
            W = [x for x in names if x not in U]
            if U[0] != names[0] and k * 2 == n:
                # (U, W) and (W, U) give the same circle products
                continue
            for u in multilinear_monomials(U):
                for w in multilinear_monomials(W):
                    uu, ww = NAPoly({u: 1}), NAPoly({w: 1})
                    yield space.vector(uu * ww + ww * uu)


@dataclass
class DegreeReport:
    degree: int
    columns: int
    consequence_rank: int
    combined_rank: int
    lie_products: int
    holds: bool
    witness: str | None = None

    def to_json(self):
        return dict(self.__dict__)


@dataclass
class AdmissibilityReport:
    index: int | None
    max_degree: int
    field: str
    degrees: list = field(default_factory=list)

    def to_json(self):
        return {"index": self.index, "max_degree": self.max_degree, "field": self.field,
                "degrees": [d.to_json() for d in self.degrees]}


def admissibility_probe(V: VarietyPresentation, max_degree: int, field: FieldSpec | None = None,
                        bracket_scale=Fraction(1, 2), stop_at_first: bool = True,
                        engine: ConsequenceEngine | None = None) -> AdmissibilityReport:
    """Least m <= max_degree with every purely Lie product of degree m inside
    span(consequences of degree m, circle products of degree m)."""
    fld = field or V.field
    check_characteristic(fld, max_degree)
    engine = engine or ConsequenceEngine(V, fld)
    report = AdmissibilityReport(None, max_degree, str(fld))
    for m in range(1, max_degree + 1):
        space = multilinear_basis(m)
        cons = engine.span(m)
        ech = cons.echelon.copy()
        for row in circle_rows(space):
            ech.add(row)
        witness = None
        count = 0
        for t in trees(m):
            for perm in itertools.permutations(space.names):
                count += 1
                w = purely_lie(t, perm, bracket_scale)
                if not ech.contains(space.vector(w)):
                    witness = str(_lie_text(t, perm))
                    break
            if witness:
                break
        ok = witness is None
        report.degrees.append(DegreeReport(m, space.dim, cons.rank, ech.rank, count, ok, witness))
        if ok and report.index is None:
            report.index = m
            if stop_at_first:
                break
    return report


def _lie_text(tree, names):
    it = iter(names)

    def go(t):
        if t is None:
            return next(it)
        return f"[{go(t[0])},{go(t[1])}]"

    return go(tree)


# -- nonmatrix gate ----------------------------------------------------------------


@dataclass
class BankEntry:
    name: str
    role: str  # gate or diagnostic
    status: str  # in-variety, excluded, undecided
    algebra: StructureAlgebra | None = None
    failed_identity: str | None = None
    witness: dict | None = None
    value: object = None
    note: str | None = None

    def to_json(self):
        from .report import identity_witness

        out = {"name": self.name, "role": self.role, "status": self.status}
        if self.failed_identity is not None:
            out["witness"] = identity_witness(self.algebra, self.failed_identity, self.witness,
                                              self.value)
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class GateReport:
    class_tag: str
    nonmatrix: bool | None
    wording: str
    entries: list = field(default_factory=list)

    def to_json(self):
        return {"class": self.class_tag, "nonmatrix": self.nonmatrix, "wording": self.wording,
                "entries": [e.to_json() for e in self.entries]}


DEFAULT_LAMBDAS = (Fraction(0), Fraction(1, 3), Fraction(2), Fraction(-1))


def gate_bank(class_tag: str, field: FieldSpec, lambdas=DEFAULT_LAMBDAS):
    """(name, role, algebra factory) triples for a variety class."""
    from . import constructions as C
    from .algebra import derived_algebra

    if class_tag in ("associative", "alternative"):
        return [("M2", "gate", lambda: C.matrix_algebra(2, field)),
                ("split-octonions", "diagnostic", lambda: C.split_octonions(field))]
    if class_tag == "jordan":
        return [("H2", "gate", lambda: C.jordan_sym(2, field))]
    if class_tag == "ncjordan":
        bank = []
        for lam in lambdas:
            bank.append((f"M2^({lam})", "gate",
                         lambda lam=lam: derived_algebra(C.matrix_algebra(2, field), "mutation", lam)))
        bank.append(("quaternions", "gate", lambda: C.quaternions(field)))
        bank.append(("octonions", "gate", lambda: C.octonions(field)))
        bank.append(("H2", "gate", lambda: C.jordan_sym(2, field)))
        return bank
    return [("M2", "gate", lambda: C.matrix_algebra(2, field))]


def nonmatrix_gate(V: VarietyPresentation, budget: int = 300_000, lambdas=DEFAULT_LAMBDAS,
                   extra_bank=()) -> GateReport:
    """Evaluate every defining identity of V on the class's test algebras."""
    entries = []
    bank = list(gate_bank(V.class_tag, V.field, lambdas)) + list(extra_bank)
    for name, role, make in bank:
        A = make()
        status, entry = "in-variety", None
        for ident in V.defining:
            try:
                verdict = holds_in(A, ident, budget=budget)
            except BudgetExceeded as exc:
                status = "undecided"
                entry = BankEntry(name, role, status, note=str(exc))
                continue
            if not verdict.holds:
                entry = BankEntry(name, role, "excluded", A, verdict.witness_identity,
                                  verdict.witness, verdict.value)
                status = "excluded"
                break
        entries.append(entry if entry is not None and status != "in-variety"
                       else BankEntry(name, role, status))
    gates = [e for e in entries if e.role == "gate"]
    if any(e.status == "in-variety" for e in gates):
        verdict = False
    elif all(e.status == "excluded" for e in gates):
        verdict = True
    else:
        verdict = None
    if V.class_tag == "ncjordan":
        wording = ("excluded all bank algebras (sufficient evidence relative to the bank; "
                   "not a check over all simple quadratic algebras)" if verdict
                   else "some bank algebra lies in the variety" if verdict is False
                   else "undecided within budget")
    else:
        wording = {True: "all gate algebras excluded: nonmatrix",
                   False: "a gate algebra lies in the variety: not nonmatrix",
                   None: "undecided within budget"}[verdict]
    return GateReport(V.class_tag, verdict, wording, entries)
