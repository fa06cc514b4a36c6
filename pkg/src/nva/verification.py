"""Finite-dimensional checks of nilpotency statements.

Each function returns raw findings; none of them claims more than what it
computed on the algebra it was given.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .algebra import (BudgetExceeded, Element, MethodInapplicable, StructureAlgebra, Subspace,
                      _coords_nilpotent, enumerate_elements, nilpotency_index, plus_power_space,
                      power_space, subspace_product, subspace_sum)

DEFAULT_ENUM_BUDGET = 200_000


@dataclass
class NilpotentSetReport:
    closed_under_sum: bool
    is_subspace: bool
    is_ideal: bool
    nilpotent_count: int
    mode: str  # enumerated or sampled
    witnesses: dict = field(default_factory=dict)

    def to_json(self):
        from .io import element_to_dict

        def conv(w):
            if isinstance(w, Element):
                return element_to_dict(w)
            if isinstance(w, (list, tuple)):
                return [conv(x) for x in w]
            if isinstance(w, dict):
                return {k: conv(v) for k, v in w.items()}
            return w

        return {"closed_under_sum": self.closed_under_sum, "is_subspace": self.is_subspace,
                "is_ideal": self.is_ideal, "nilpotent_count": self.nilpotent_count,
                "mode": self.mode, "witnesses": conv(self.witnesses)}


def _nilpotent_coords(A, budget, sampling, samples, seed, cutoff):
    if A.field.is_finite and A.field.p ** A.dim <= budget:
        return [c for c in enumerate_elements(A, budget) if _coords_nilpotent(A, c, cutoff)], "enumerated"
    if not sampling:
        if not A.field.is_finite:
            raise MethodInapplicable("nilpotent-set enumeration needs a finite field")
        raise BudgetExceeded(f"{A.field.p}^{A.dim} elements exceed the budget {budget}")
    rng = random.Random(seed)
    f = A.field
    found = {tuple([f.zero] * A.dim)}
    for _ in range(samples):
        c = tuple(f(rng.randrange(f.p)) if f.is_finite else f(rng.randint(-3, 3)) for _ in range(A.dim))
        if _coords_nilpotent(A, c, cutoff):
            found.add(c)
    return sorted(found, key=lambda c: tuple(int(x.v) if hasattr(x, "v") else x for x in c)), "sampled"


def _shape_candidates(A: StructureAlgebra):
    """Non-unit basis vectors, then sums and differences of two of them."""
    unit = A.meta.get("unit_index")
    es = [e for i, e in enumerate(A.basis_elements()) if i != unit]
    yield from es
    for a, b in itertools.combinations(es, 2):
        yield a + b
        yield a - b


def proof_shape_witness(A: StructureAlgebra, cutoff: int | None = None):
    """(u + e v, u - e v) with e^2 = -1, both nilpotent, sum 2u not nilpotent.

    u and v range over non-unit basis vectors first, then over sums and
    differences of two basis vectors (M2 needs u = e11 - e22).  Returns
    the first such pair, or None.
    """
    cutoff = cutoff or A.dim + 1
    roots = A.field.square_roots(A.field(-1))
    if not roots:
        return None
    cands = list(_shape_candidates(A))
    for eps in roots:
        for u, w in itertools.permutations(cands, 2):
            n, m = u + eps * w, u - eps * w
            if (_coords_nilpotent(A, n.coords, cutoff) and _coords_nilpotent(A, m.coords, cutoff)
                    and not _coords_nilpotent(A, (n + m).coords, cutoff)):
                return {"u": str(u), "v": str(w), "epsilon": A.field.format(eps),
                        "pair": [n, m], "sum": n + m}
    return None


def nilpotent_set_analysis(A: StructureAlgebra, budget: int = DEFAULT_ENUM_BUDGET,
                           sampling: bool = False, samples: int = 5000, seed: int = 0,
                           cutoff: int | None = None) -> NilpotentSetReport:
    """Is the set of nilpotent elements closed under sums, a subspace, an ideal?"""
    cutoff = cutoff or A.dim + 1
    coords, mode = _nilpotent_coords(A, budget, sampling, samples, seed, cutoff)
    nil = set(coords)
    witnesses: dict = {}
    closed = True
    for i, a in enumerate(coords):
        for b in coords[i + 1:]:
            s = tuple(x + y for x, y in zip(a, b))
            if s not in nil and not _coords_nilpotent(A, s, cutoff):
                closed = False
                witnesses["sum"] = [Element(A, a), Element(A, b)]
                break
        if not closed:
            break
    # scalar multiples of nilpotents are nilpotent, so closure under sums
    # is the whole subspace question
    is_subspace = closed
    is_ideal = False
    if is_subspace:
        S = Subspace.span(A, [Element(A, c) for c in coords])
        W = Subspace.whole(A)
        is_ideal = True
        for s in S.basis():
            for w in W.basis():
                for p in (s * w, w * s):
                    if not S.contains(p):
                        is_ideal = False
                        witnesses["product"] = [s, w, p]
                        break
                if not is_ideal:
                    break
            if not is_ideal:
                break
    if not closed:
        shaped = proof_shape_witness(A, cutoff)
        if shaped is not None:
            witnesses["proof_shape"] = shaped
    return NilpotentSetReport(closed, is_subspace, is_ideal, len(nil), mode, witnesses)


# -- operator chains and power inclusions ----------------------------------


@dataclass
class InclusionReport:
    included: bool
    left_dim: int
    right_dim: int
    witness: Element | None = None
    detail: dict = field(default_factory=dict)

    def to_json(self):
        from .io import element_to_dict

        out = {"included": self.included, "left_dim": self.left_dim, "right_dim": self.right_dim}
        if self.witness is not None:
            out["witness"] = element_to_dict(self.witness)
        out.update(self.detail)
        return out


def chain_span(A: StructureAlgebra, n: int) -> Subspace:
    """span{a_1 T_{a_2} ... T_{a_n}}, each T a left or right multiplication."""
    W = Subspace.whole(A)
    S = W
    for _ in range(n - 1):
        S = subspace_sum(subspace_product(S, W), subspace_product(W, S))
    return S


def _first_outside(S: Subspace, T: Subspace):
    for b in S.basis():
        if not T.contains(b):
            return b
    return None


def operator_chain_span_check(A: StructureAlgebra, n: int, max_power: int = 256) -> InclusionReport:
    """A^(2^n) inside the span of length-n multiplication chains."""
    k = 2 ** n
    if k > max_power:
        raise BudgetExceeded(f"power 2^{n} = {k} over the budget {max_power}")
    P = power_space(A, k)
    S = chain_span(A, n)
    w = _first_outside(P, S)
    return InclusionReport(w is None, P.dim, S.dim, w, {"power": k, "chain_length": n})


def power_inclusion_check(A: StructureAlgebra, k: int, n: int) -> InclusionReport:
    """A^k inside (A^(+))^n."""
    P = power_space(A, k)
    Q = plus_power_space(A, n)
    w = _first_outside(P, Q)
    return InclusionReport(w is None, P.dim, Q.dim, w, {"k": k, "n": n})


def minimal_k(A: StructureAlgebra, n: int, cutoff: int = 64) -> int | None:
    """Least k <= cutoff with A^k inside (A^(+))^n."""
    Q = plus_power_space(A, n)
    for k in range(1, cutoff + 1):
        P = power_space(A, k)
        if P.issubset(Q):
            return k
    return None


def tower_bound(n: int, first: int, m: int, max_bits: int = 4096):
    """f(1) = 1, f(2) = first, f(j) = 2^(f(j-1) + m), as a number.

    Values too large to write down come back as a string ``2^(...)``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return 1
    val = first
    for _ in range(3, n + 1):
        if isinstance(val, str) or val + m > max_bits:
            val = f"2^({val}+{m})"
        else:
            val = 2 ** (val + m)
    return val


# -- nil implies nilpotent ------------------------------------------------------


@dataclass
class NilReport:
    nil: bool
    mode: str
    nilpotency_index: int | None
    alarm: bool
    non_nilpotent_element: Element | None = None

    def to_json(self):
        from .io import element_to_dict

        out = {"nil": self.nil, "mode": self.mode, "nilpotency_index": self.nilpotency_index,
               "alarm": self.alarm}
        if self.non_nilpotent_element is not None:
            out["non_nilpotent_element"] = element_to_dict(self.non_nilpotent_element)
        return out


def finite_nil_implies_nilpotent_check(A: StructureAlgebra, budget: int = DEFAULT_ENUM_BUDGET,
                                       mode: str = "enumerate", samples: int = 5000, seed: int = 0,
                                       cutoff: int | None = None) -> NilReport:
    """Is A nil, and if so, is A^n = 0 for some n <= cutoff?

    ``mode`` is ``enumerate`` (every element, finite fields), ``sample``
    (seeded random elements) or ``generators`` (nil-ness certified from
    basis powers; valid only when A is commutative and spanned by products
    of the basis, the caller's responsibility).  A nil algebra that is not
    nilpotent within the cutoff is flagged as an alarm, nothing more.
    """
    cutoff = cutoff or A.dim + 1
    ecut = A.dim + 1
    bad = None
    if mode == "enumerate":
        for c in enumerate_elements(A, budget):
            if not _coords_nilpotent(A, c, ecut):
                bad = Element(A, c)
                break
    elif mode == "sample":
        rng = random.Random(seed)
        f = A.field
        for _ in range(samples):
            c = tuple(f(rng.randrange(f.p)) if f.is_finite else f(rng.randint(-3, 3)) for _ in range(A.dim))
            if not _coords_nilpotent(A, c, ecut):
                bad = Element(A, c)
                break
    elif mode == "generators":
        for e in A.basis_elements():
            if not _coords_nilpotent(A, e.coords, ecut):
                bad = e
                break
    else:
        raise MethodInapplicable(f"unknown mode {mode!r}")
    nil = bad is None
    index = nilpotency_index(A, cutoff) if nil else None
    return NilReport(nil, mode, index, nil and index is None, bad)


# -- quadratic algebra calculus -------------------------------------------------


@dataclass
class QuadraticCalculusReport:
    pairs: int
    expansion_holds: bool
    reduced_formula_holds: bool
    cross_identity_holds: bool
    expansion_failure: tuple | None = None
    reduced_failure: tuple | None = None
    cross_witness: tuple | None = None

    def to_json(self):
        return {"pairs": self.pairs, "expansion_holds": self.expansion_holds,
                "reduced_formula_holds": self.reduced_formula_holds, "cross_identity_holds": self.cross_identity_holds,
                "expansion_failure": self.expansion_failure, "reduced_failure": self.reduced_failure,
                "cross_witness": self.cross_witness}


def quadratic_calculus_check(A: StructureAlgebra) -> QuadraticCalculusReport:
    """Associator calculus on A = F1 + V over all basis pairs u, v of V.

    With uv = (u, v)1 + u x v:
      expansion: (u, v, v) = (u, v)v + (u x v, v)1 + (u x v) x v - (v, v)u
      reduced:   (u, v, v) = (u, v)v - (v, v)u
      cross:     (u x v) x u = 0
    The reduced form follows from the expansion once the cross identity holds.
    """
    from .constructions import quadratic_data_from

    q = quadratic_data_from(A)
    f = A.field
    n = q.v_dim
    one = A.basis_element(0)
    es = [[f.one if k == i else f.zero for k in range(n)] for i in range(n)]

    def lift(vcoords):
        return A.element([f.zero] + list(vcoords))

    exp_fail = red_fail = cross = None
    pairs = 0
    for a in range(n):
        for b in range(n):
            pairs += 1
            u, v = es[a], es[b]
            U, Vv = lift(u), lift(v)
            assoc = (U * Vv) * Vv - U * (Vv * Vv)
            uxv = q.cross_coords(u, v)
            expansion = (q.pair(u, v) * Vv + q.pair(uxv, v) * one + lift(q.cross_coords(uxv, v))
                         - q.pair(v, v) * U)
            reduced = q.pair(u, v) * Vv - q.pair(v, v) * U
            names = (A.basis[a + 1], A.basis[b + 1])
            if exp_fail is None and assoc != expansion:
                exp_fail = names
            if red_fail is None and assoc != reduced:
                red_fail = names + (str(assoc), str(reduced))
            t = q.cross_coords(uxv, u)
            if cross is None and any(t):
                cross = names + (str(lift(t)),)
    return QuadraticCalculusReport(pairs, exp_fail is None, red_fail is None, cross is None,
                                   exp_fail, red_fail, cross)
