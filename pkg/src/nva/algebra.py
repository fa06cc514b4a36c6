"""Finite-dimensional algebras given by structure constants.

An algebra is a table ``(i, j) -> [(k, c), ...]`` meaning
``e_i e_j = sum c e_k``.  Nothing about associativity, commutativity or
units is assumed; everything else in the package is built on :meth:`mul`.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property

from .fields import FieldSpec, FieldError
from .linalg import Echelon, nullspace


class AlgebraMismatch(ValueError):
    """Operands live in different algebras."""


class MethodInapplicable(ValueError):
    pass


class StructureAlgebra:

    def __init__(self, field: FieldSpec, dim: int, table, basis=None, meta=None):
        if dim < 1:
            raise ValueError("dimension must be positive")
        self.field = field
        self.dim = dim
        self.basis = tuple(basis) if basis is not None else tuple(f"e{i}" for i in range(dim))
        if len(self.basis) != dim:
            raise ValueError(f"{len(self.basis)} basis names for dimension {dim}")
        clean = {}
        for (i, j), terms in dict(table).items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise ValueError(f"table index ({i}, {j}) out of range")
            acc: dict[int, object] = {}
            for k, c in terms:
                if not 0 <= k < dim:
                    raise ValueError(f"table output index {k} out of range")
                acc[k] = acc.get(k, field.zero) + field(c)
            row = tuple((k, c) for k, c in sorted(acc.items()) if c)
            if row:
                clean[(i, j)] = row
        self.table = clean
        self.meta = dict(meta or {})
        mt = [[() for _ in range(dim)] for _ in range(dim)]
        for (i, j), row in clean.items():
            mt[i][j] = row
        self._mt = mt
        self._cache = {}

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_products(cls, field, basis, products: dict, meta=None):
        """Build from ``{(name_i, name_j): {name_k: coeff}}``."""
        index = {b: n for n, b in enumerate(basis)}
        table = {}
        for (a, b), out in products.items():
            table[(index[a], index[b])] = [(index[k], c) for k, c in out.items()]
        return cls(field, len(basis), table, basis, meta)

    @classmethod
    def from_function(cls, field, basis, fn, meta=None):
        """``fn(i, j)`` returns a dense coordinate list for ``e_i e_j``."""
        dim = len(basis)
        table = {}
        for i in range(dim):
            for j in range(dim):
                v = fn(i, j)
                row = [(k, c) for k, c in enumerate(v) if c]
                if row:
                    table[(i, j)] = row
        return cls(field, dim, table, basis, meta)

    def with_meta(self, **kw) -> "StructureAlgebra":
        meta = dict(self.meta)
        meta.update(kw)
        return StructureAlgebra(self.field, self.dim, self.table, self.basis, meta)

    # -- identity ---------------------------------------------------------------

    def _key(self):
        return (self.field, self.dim, self.basis, tuple(sorted(self.table.items())))

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, StructureAlgebra):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def same_table(self, other: "StructureAlgebra") -> bool:
        """Equal multiplication ignoring basis names and metadata."""
        return (self.field == other.field and self.dim == other.dim
                and self.table == other.table)

    def __repr__(self):
        name = self.meta.get("name", "algebra")
        return f"<{name} dim={self.dim} over {self.field}>"

    # -- elements -----------------------------------------------------------

    def element(self, coords) -> "Element":
        coords = tuple(self.field(c) for c in coords)
        if len(coords) != self.dim:
            raise ValueError(f"expected {self.dim} coordinates, got {len(coords)}")
        return Element(self, coords)

    def basis_element(self, i) -> "Element":
        if isinstance(i, str):
            i = self.basis.index(i)
        z, o = self.field.zero, self.field.one
        return Element(self, tuple(o if k == i else z for k in range(self.dim)))

    def e(self, name) -> "Element":
        return self.basis_element(name)

    @property
    def zero(self) -> "Element":
        return Element(self, (self.field.zero,) * self.dim)

    def basis_elements(self) -> list["Element"]:
        return [self.basis_element(i) for i in range(self.dim)]

    def combo(self, coeffs: dict) -> "Element":
        """Element from ``{basis_name: coeff}``."""
        coords = [self.field.zero] * self.dim
        for name, c in coeffs.items():
            coords[self.basis.index(name)] += self.field(c)
        return Element(self, tuple(coords))

    # -- multiplication -----------------------------------------------------

    def mul_coords(self, u, v) -> list:
        zero = self.field.zero
        out = [zero] * self.dim
        vnz = [(j, vj) for j, vj in enumerate(v) if vj]
        if not vnz:
            return out
        mt = self._mt
        for i, ui in enumerate(u):
            if not ui:
                continue
            row = mt[i]
            for j, vj in vnz:
                terms = row[j]
                if terms:
                    c = ui * vj
                    for k, ck in terms:
                        out[k] = out[k] + c * ck
        return out

    def mul_sparse(self, u: dict, v: dict) -> dict:
        out: dict = {}
        mt = self._mt
        for i, ui in u.items():
            row = mt[i]
            for j, vj in v.items():
                terms = row[j]
                if terms:
                    c = ui * vj
                    for k, ck in terms:
                        out[k] = out.get(k, 0) + c * ck
        return {k: c for k, c in out.items() if c}

    def mul(self, u: "Element", v: "Element") -> "Element":
        self._check(u)
        self._check(v)
        return Element(self, tuple(self.mul_coords(u.coords, v.coords)))

    def _check(self, u: "Element"):
        if u.algebra is not self and u.algebra != self:
            raise AlgebraMismatch(f"element of {u.algebra!r} used in {self!r}")

    def commutator(self, u, v):
        return self.mul(u, v) - self.mul(v, u)

    def associator(self, u, v, w):
        return self.mul(self.mul(u, v), w) - self.mul(u, self.mul(v, w))

    def circle(self, u, v):
        return self.mul(u, v) + self.mul(v, u)

    def left_mult_matrix(self, u: "Element") -> list[list]:
        """Matrix of L_u in column convention: column j is u e_j."""
        cols = [self.mul_coords(u.coords, b.coords) for b in self.basis_elements()]
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]

    def right_mult_matrix(self, u: "Element") -> list[list]:
        cols = [self.mul_coords(b.coords, u.coords) for b in self.basis_elements()]
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]

    # -- structural flags ---------------------------------------------------

    @cached_property
    def is_commutative(self) -> bool:
        return all(self._mt[i][j] == self._mt[j][i]
                   for i in range(self.dim) for j in range(i + 1, self.dim))

    @cached_property
    def is_anticommutative(self) -> bool:
        for i in range(self.dim):
            if self._mt[i][i]:
                return False
            for j in range(i + 1, self.dim):
                a = dict(self._mt[i][j])
                b = dict(self._mt[j][i])
                if set(a) != set(b) or any(a[k] != -b[k] for k in a):
                    return False
        return True

    @cached_property
    def is_associative(self) -> bool:
        return self.first_nonassociative_triple() is None

    def first_nonassociative_triple(self):
        es = self.basis_elements()
        for a, b, c in itertools.product(range(self.dim), repeat=3):
            if any(self.associator(es[a], es[b], es[c]).coords):
                return (a, b, c)
        return None

    @cached_property
    def unit(self) -> "Element | None":
        """The two-sided unit, if there is one."""
        # solve u e_j = e_j and e_j u = e_j, linear in u
        f = self.field
        rows, rhs = [], []
        for j in range(self.dim):
            for side in (0, 1):
                for k in range(self.dim):
                    row = {}
                    for i in range(self.dim):
                        terms = self._mt[i][j] if side == 0 else self._mt[j][i]
                        for kk, c in terms:
                            if kk == k:
                                row[i] = row.get(i, f.zero) + c
                    rows.append(row)
                    rhs.append(f.one if k == j else f.zero)
        from .linalg import solve
        x = solve(rows, rhs, self.dim, f)
        return None if x is None else Element(self, tuple(x))

    @property
    def is_unital(self) -> bool:
        return self.unit is not None


@dataclass(frozen=True, eq=False)
class Element:
    algebra: StructureAlgebra
    coords: tuple

    def __post_init__(self):
        if len(self.coords) != self.algebra.dim:
            raise ValueError("coordinate length does not match algebra dimension")

    def _same(self, other):
        if not isinstance(other, Element):
            return False
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise AlgebraMismatch("elements of different algebras")
        return True

    def __add__(self, other):
        if not self._same(other):
            return NotImplemented
        return Element(self.algebra, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        if not self._same(other):
            return NotImplemented
        return Element(self.algebra, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return Element(self.algebra, tuple(-a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, Element):
            return self.algebra.mul(self, other)
        c = self.algebra.field(other)
        return Element(self.algebra, tuple(c * a for a in self.coords))

    def __rmul__(self, other):
        c = self.algebra.field(other)
        return Element(self.algebra, tuple(c * a for a in self.coords))

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not any(self.coords)
        if not isinstance(other, Element):
            return NotImplemented
        return self.algebra == other.algebra and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __bool__(self):
        return any(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def sparse(self) -> dict:
        return {i: c for i, c in enumerate(self.coords) if c}

    def __repr__(self):
        return f"Element({format_element(self)})"

    def __str__(self):
        return format_element(self)


def format_element(u: Element) -> str:
    from .fields import format_scalar

    parts = []
    for name, c in zip(u.algebra.basis, u.coords):
        if not c:
            continue
        s = format_scalar(c)
        if s == "1":
            parts.append(f"+{name}")
        elif s == "-1":
            parts.append(f"-{name}")
        else:
            sign = "" if s.startswith("-") else "+"
            parts.append(f"{sign}{s}*{name}" if "+" not in s[1:] and "-" not in s[1:] else f"+({s})*{name}")
    if not parts:
        return "0"
    out = "".join(parts)
    return out[1:] if out.startswith("+") else out


def commutator(u: Element, v: Element) -> Element:
    return u.algebra.commutator(u, v)


def associator(u: Element, v: Element, w: Element) -> Element:
    return u.algebra.associator(u, v, w)


def circle(u: Element, v: Element) -> Element:
    return u.algebra.circle(u, v)


def mul(A: StructureAlgebra, u: Element, v: Element) -> Element:
    return A.mul(u, v)


# -- subspaces ---------------------------------------------------------------


class Subspace:
    """A subspace in canonical reduced echelon form.

    ``rows`` is a tuple of sparse rows ``((col, value), ...)`` sorted by
    pivot; two equal subspaces have identical ``rows``.
    """

    __slots__ = ("algebra", "rows", "_ech")

    def __init__(self, algebra: StructureAlgebra, ech: Echelon):
        self.algebra = algebra
        self._ech = ech
        self.rows = tuple(tuple(sorted(r.items())) for r in ech.rows())

    @classmethod
    def span(cls, algebra: StructureAlgebra, vectors) -> "Subspace":
        ech = Echelon(algebra.dim, algebra.field)
        for v in vectors:
            if isinstance(v, Element):
                algebra._check(v)
                v = v.sparse()
            elif not isinstance(v, dict):
                v = {i: c for i, c in enumerate(v) if c}
            ech.add(v)
        return cls(algebra, ech)

    @classmethod
    def whole(cls, algebra) -> "Subspace":
        return cls.span(algebra, [{i: algebra.field.one} for i in range(algebra.dim)])

    @classmethod
    def zero(cls, algebra) -> "Subspace":
        return cls.span(algebra, [])

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __len__(self):
        return len(self.rows)

    def sparse_rows(self) -> list[dict]:
        return [dict(r) for r in self.rows]

    def basis(self) -> list[Element]:
        zero = self.algebra.field.zero
        out = []
        for r in self.rows:
            coords = [zero] * self.algebra.dim
            for c, v in r:
                coords[c] = v
            out.append(Element(self.algebra, tuple(coords)))
        return out

    def dense_rows(self) -> list[list]:
        return [list(e.coords) for e in self.basis()]

    @property
    def pivots(self) -> list[int]:
        return [r[0][0] for r in self.rows]

    def contains(self, v) -> bool:
        if isinstance(v, Element):
            self.algebra._check(v)
            v = v.sparse()
        return self._ech.contains(v)

    def __contains__(self, v):
        return self.contains(v)

    def issubset(self, other: "Subspace") -> bool:
        _same_algebra(self, other)
        return all(other._ech.contains(dict(r)) for r in self.rows)

    def __le__(self, other):
        return self.issubset(other)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.algebra == other.algebra and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def is_zero(self) -> bool:
        return not self.rows

    def coordinates(self, v) -> list:
        """Coordinates of ``v`` in the echelon basis (v must lie in the span)."""
        if isinstance(v, Element):
            v = v.sparse()
        if not self._ech.contains(v):
            raise ValueError("vector is not in the subspace")
        zero = self.algebra.field.zero
        return [v.get(p, zero) for p in self.pivots]

    def to_json(self) -> list[list[str]]:
        from .fields import format_scalar

        return [[format_scalar(c) for c in row] for row in self.dense_rows()]

    def __repr__(self):
        return f"<Subspace dim={self.dim} of {self.algebra!r}>"


def _same_algebra(S: Subspace, T: Subspace):
    if S.algebra is not T.algebra and S.algebra != T.algebra:
        raise AlgebraMismatch("subspaces of different algebras")


def subspace_sum(S: Subspace, T: Subspace) -> Subspace:
    _same_algebra(S, T)
    ech = S._ech.copy()
    ech.extend(dict(r) for r in T.rows)
    return Subspace(S.algebra, ech)


def subspace_product(S: Subspace, T: Subspace, algebra: StructureAlgebra | None = None) -> Subspace:
    """span{ s t } over basis vectors; ``algebra`` overrides the product."""
    _same_algebra(S, T)
    A = algebra or S.algebra
    ech = Echelon(A.dim, A.field)
    trows = [dict(r) for r in T.rows]
    for s in S.rows:
        s = dict(s)
        for t in trows:
            ech.add(A.mul_sparse(s, t))
            if ech.rank == A.dim:
                return Subspace(S.algebra, ech)
    return Subspace(S.algebra, ech)


def _powers(A: StructureAlgebra, n: int, key: str, mult: StructureAlgebra) -> Subspace:
    if n < 1:
        raise ValueError("power index must be >= 1")
    memo = A._cache.setdefault(key, {1: Subspace.whole(A)})
    for m in range(2, n + 1):
        if m in memo:
            continue
        ech = Echelon(A.dim, A.field)
        for i in range(1, m):
            prod = subspace_product(memo[i], memo[m - i], mult)
            ech.extend(dict(r) for r in prod.rows)
        memo[m] = Subspace(A, ech)
    return memo[n]


def power_space(A: StructureAlgebra, n: int) -> Subspace:
    """A^n: sum over i + j = n of A^i A^j (every bracketing)."""
    return _powers(A, n, "power", A)


def plus_power_space(A: StructureAlgebra, n: int) -> Subspace:
    """(A^(+))^n as a subspace of A."""
    P = derived_algebra(A, "plus")
    return _powers(A, n, "plus_power", P)


def generated_subalgebra(A: StructureAlgebra, gens) -> Subspace:
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    S = Subspace.span(A, gens)
    while True:
        T = subspace_sum(S, subspace_product(S, S))
        if T.dim == S.dim:
            return S
        S = T


def generated_ideal(A: StructureAlgebra, gens) -> Subspace:
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    S = Subspace.span(A, gens)
    W = Subspace.whole(A)
    while True:
        T = subspace_sum(S, subspace_sum(subspace_product(S, W), subspace_product(W, S)))
        if T.dim == S.dim:
            return S
        S = T


def is_ideal(S: Subspace) -> bool:
    W = Subspace.whole(S.algebra)
    return subspace_product(S, W).issubset(S) and subspace_product(W, S).issubset(S)


def is_subalgebra(S: Subspace) -> bool:
    return subspace_product(S, S).issubset(S)


def restrict(A: StructureAlgebra, S: Subspace, names=None) -> StructureAlgebra:
    """The subalgebra S as an algebra in its echelon basis."""
    if S.is_zero():
        raise ValueError("zero subspace has no algebra structure")
    rows = [dict(r) for r in S.rows]
    piv = S.pivots
    table = {}
    for a, ra in enumerate(rows):
        for b, rb in enumerate(rows):
            prod = A.mul_sparse(ra, rb)
            if not S._ech.contains(prod):
                raise ValueError("subspace is not closed under multiplication")
            coords = [(k, prod.get(p)) for k, p in enumerate(piv) if prod.get(p)]
            if coords:
                table[(a, b)] = coords
    if names is None:
        names = [f"s{k}" for k in range(len(rows))]
    return StructureAlgebra(A.field, len(rows), table, names,
                            {"name": f"subalgebra of {A.meta.get('name', 'algebra')}"})


def quotient(A: StructureAlgebra, I: Subspace) -> StructureAlgebra:
    """A/I for an ideal I, basis = non-pivot coordinates."""
    piv = set(I.pivots)
    keep = [i for i in range(A.dim) if i not in piv]
    if not keep:
        raise ValueError("quotient by the whole algebra is zero")
    pos = {c: n for n, c in enumerate(keep)}
    table = {}
    for a, i in enumerate(keep):
        for b, j in enumerate(keep):
            prod = I._ech.reduce(A.mul_sparse({i: A.field.one}, {j: A.field.one}))
            coords = [(pos[c], v) for c, v in prod.items()]
            if coords:
                table[(a, b)] = coords
    return StructureAlgebra(A.field, len(keep), table, [A.basis[i] for i in keep],
                            {"name": f"{A.meta.get('name', 'algebra')}/I"})


# -- derived algebras --------------------------------------------------------


def derived_algebra(A: StructureAlgebra, kind: str, lam=None) -> StructureAlgebra:
    """``plus``, ``minus``, ``mutation`` (needs ``lam``) or ``unital_hull``."""
    f = A.field
    cache_key = ("derived", kind, None if lam is None else f(lam))
    if cache_key in A._cache:
        return A._cache[cache_key]
    name = A.meta.get("name", "A")
    if kind in ("plus", "minus"):
        if f.characteristic == 2:
            raise FieldError(f"{kind} algebra needs 2 invertible")
        half = f(Fraction(1, 2))
        sign = f.one if kind == "plus" else -f.one

        def prod(i, j):
            out = [f.zero] * A.dim
            for k, c in A._mt[i][j]:
                out[k] += half * c
            for k, c in A._mt[j][i]:
                out[k] += sign * half * c
            return out

        out = StructureAlgebra.from_function(f, A.basis, prod, {"name": f"{name}({'+' if kind == 'plus' else '-'})"})
    elif kind == "mutation":
        if lam is None:
            raise ValueError("mutation needs a parameter")
        lam = f(lam)
        other = f.one - lam

        def prod(i, j):
            out = [f.zero] * A.dim
            for k, c in A._mt[i][j]:
                out[k] += lam * c
            for k, c in A._mt[j][i]:
                out[k] += other * c
            return out

        out = StructureAlgebra.from_function(f, A.basis, prod,
                                             {"name": f"{name}^({f.format(lam)})", "mutation": f.format(lam)})
    elif kind == "unital_hull":
        names = ["1"] + [b if b != "1" else "1'" for b in A.basis]
        table = {(0, 0): [(0, 1)]}
        for i in range(A.dim):
            table[(0, i + 1)] = [(i + 1, 1)]
            table[(i + 1, 0)] = [(i + 1, 1)]
        for (i, j), terms in A.table.items():
            table[(i + 1, j + 1)] = [(k + 1, c) for k, c in terms]
        out = StructureAlgebra(f, A.dim + 1, table, names, {"name": f"{name}#"})
    else:
        raise ValueError(f"unknown derived algebra kind {kind!r}")
    A._cache[cache_key] = out
    return out


# -- nilpotency --------------------------------------------------------------


def nilpotency_index(A: StructureAlgebra, cutoff: int) -> int | None:
    """Least n <= cutoff with A^n = 0, or None when it exceeds the cutoff."""
    if cutoff < 1:
        raise ValueError("cutoff must be >= 1")
    for n in range(1, cutoff + 1):
        if power_space(A, n).is_zero():
            return n
    return None


def element_power(u: Element, n: int) -> Element:
    """Principal right power: u^1 = u, u^(k+1) = u^k u."""
    if n < 1:
        raise ValueError("power must be >= 1")
    A = u.algebra
    out = u.coords
    for _ in range(n - 1):
        out = A.mul_coords(out, u.coords)
    return Element(A, tuple(out))


def element_left_power(u: Element, n: int) -> Element:
    A = u.algebra
    out = u.coords
    for _ in range(n - 1):
        out = A.mul_coords(u.coords, out)
    return Element(A, tuple(out))


def nilpotent_exponent(u: Element, cutoff: int | None = None) -> int | None:
    """Least k <= cutoff with u^k = 0 (principal right powers)."""
    A = u.algebra
    if cutoff is None:
        cutoff = A.dim + 1
    if cutoff < 1:
        raise ValueError("cutoff must be >= 1")
    cur = u.coords
    for k in range(1, cutoff + 1):
        if not any(cur):
            return k
        if k < cutoff:
            cur = A.mul_coords(cur, u.coords)
    return None


def is_nilpotent_element(u: Element, cutoff: int | None = None) -> bool:
    return nilpotent_exponent(u, cutoff) is not None


def _coords_nilpotent(A: StructureAlgebra, coords, cutoff: int) -> bool:
    cur = coords
    for k in range(1, cutoff + 1):
        if not any(cur):
            return True
        if k < cutoff:
            cur = A.mul_coords(cur, coords)
    return False


def enumerate_elements(A: StructureAlgebra, budget: int):
    """Every element of a finite-field algebra, coordinates in lexicographic order."""
    f = A.field
    if not f.is_finite:
        raise MethodInapplicable("enumeration needs a finite field")
    if f.p ** A.dim > budget:
        raise BudgetExceeded(f"{f.p}^{A.dim} elements exceed the enumeration budget {budget}")
    vals = list(f.elements())
    for coords in itertools.product(vals, repeat=A.dim):
        yield coords


def enumerate_subspace(S: Subspace, budget: int):
    A = S.algebra
    f = A.field
    if not f.is_finite:
        raise MethodInapplicable("enumeration needs a finite field")
    if f.p ** S.dim > budget:
        raise BudgetExceeded(f"{f.p}^{S.dim} elements exceed the enumeration budget {budget}")
    basis = [e.coords for e in S.basis()]
    vals = list(f.elements())
    for cs in itertools.product(vals, repeat=S.dim):
        out = [f.zero] * A.dim
        for c, b in zip(cs, basis):
            if c:
                for k in range(A.dim):
                    if b[k]:
                        out[k] += c * b[k]
        yield tuple(out)


class BudgetExceeded(RuntimeError):
    pass


@dataclass
class NilRadicalResult:
    subspace: Subspace
    method: str
    is_ideal: bool
    is_nil: bool
    diagnostics: list = dc_field(default_factory=list)

    @property
    def verified(self) -> bool:
        return self.is_ideal and self.is_nil


def nil_radical_finite(A: StructureAlgebra, method: str = "enumerate-gfp",
                       budget: int = 200_000, cutoff: int | None = None) -> NilRadicalResult:
    """Largest nil ideal found by the chosen method, re-verified afterwards."""
    if cutoff is None:
        cutoff = A.dim + 1
    if method == "enumerate-gfp":
        return _nil_radical_enumerate(A, budget, cutoff)
    if method == "trace-form-char0":
        return _nil_radical_trace_form(A, cutoff)
    raise MethodInapplicable(f"unknown method {method!r}")


def _subspace_is_nil(S: Subspace, budget: int, cutoff: int) -> bool:
    A = S.algebra
    return all(_coords_nilpotent(A, c, cutoff) for c in enumerate_subspace(S, budget))


def _nil_radical_enumerate(A, budget, cutoff):
    f = A.field
    if not f.is_finite:
        raise MethodInapplicable("enumerate-gfp needs a prime field")
    cand = Subspace.zero(A)
    diagnostics = []
    for coords in enumerate_elements(A, budget):
        if not any(coords) or cand.contains(dict(enumerate(coords))):
            continue
        if not _coords_nilpotent(A, coords, cutoff):
            continue
        I = generated_ideal(A, [Element(A, coords)])
        trial = subspace_sum(cand, I)
        if _subspace_is_nil(trial, budget, cutoff):
            cand = trial
        else:
            diagnostics.append({"rejected_generator": [f.format(c) for c in coords]})
    nil = _subspace_is_nil(cand, budget, cutoff)
    return NilRadicalResult(cand, "enumerate-gfp", is_ideal(cand), nil, diagnostics[:5])


def _nil_radical_trace_form(A, cutoff):
    from .identities import is_flexible, is_jordan_admissible

    f = A.field
    if f.characteristic != 0:
        raise MethodInapplicable("trace-form-char0 needs characteristic 0")
    if not (is_flexible(A) and is_jordan_admissible(A)):
        raise MethodInapplicable("trace-form-char0 needs a flexible Jordan-admissible algebra")
    P = derived_algebra(A, "plus")
    es = P.basis_elements()
    R = [P.right_mult_matrix(e) for e in es]
    n = A.dim

    def trace_prod(X, Y):
        return sum((X[i][k] * Y[k][i] for i in range(n) for k in range(n)), f.zero)

    gram = [{j: trace_prod(R[i], R[j]) for j in range(n)} for i in range(n)]
    rad = Subspace.span(A, nullspace(gram, n, f))
    diagnostics = []
    ideal = is_ideal(rad)
    if not ideal:
        diagnostics.append("form radical is not an ideal of A")
    nil = True
    if not rad.is_zero():
        if ideal and is_subalgebra(rad):
            idx = nilpotency_index(restrict(A, rad), max(cutoff, rad.dim + 1))
            nil = idx is not None
        else:
            nil = False
        if not nil:
            diagnostics.append("form radical is not a nilpotent subalgebra")
    return NilRadicalResult(rad, "trace-form-char0", ideal, nil, diagnostics)
