"""Concrete algebra families: matrices, Jordan algebras, Cayley-Dickson
doublings, quadratic algebras, Kokoris algebras from Poisson data, and
random generators used by the property suites.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .algebra import StructureAlgebra, Element, derived_algebra
from .fields import FieldSpec, FieldError, Q, QuadExt
from .linalg import nullspace


class ConstructionError(ValueError):
    """Input data violates a construction invariant; ``witness`` says where."""

    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


def _idx_name(i, j, n):
    return f"e{i + 1}{j + 1}" if n < 10 else f"e{i + 1}_{j + 1}"


def field_algebra(field: FieldSpec = Q) -> StructureAlgebra:
    """F itself, with the identity involution."""
    return StructureAlgebra(field, 1, {(0, 0): [(0, 1)]}, ["1"],
                            {"name": "F", "involution": [[field.one]], "unit_index": 0})


def matrix_algebra(n: int, field: FieldSpec = Q) -> StructureAlgebra:
    if n < 1:
        raise ValueError("n must be >= 1")
    names = [_idx_name(i, j, n) for i in range(n) for j in range(n)]
    table = {}
    for i, j, l in itertools.product(range(n), repeat=3):
        # e_ij e_jl = e_il
        table[(i * n + j, j * n + l)] = [(i * n + l, 1)]
    return StructureAlgebra(field, n * n, table, names, {"name": f"M{n}"})


def _sym_basis(n):
    diag = [((i, i),) for i in range(n)]
    off = [((i, j), (j, i)) for i in range(n) for j in range(i + 1, n)]
    return diag + off


def jordan_sym(n: int, field: FieldSpec = Q) -> StructureAlgebra:
    """Symmetric n x n matrices under x.y = (xy + yx)/2."""
    if field.characteristic == 2:
        raise FieldError("Jordan algebras need characteristic != 2")
    basis = _sym_basis(n)
    names = [f"e{p[0][0] + 1}{p[0][1] + 1}" if len(p) == 1 else f"s{p[0][0] + 1}{p[0][1] + 1}"
             for p in basis]
    half = field(Fraction(1, 2))

    def as_matrix(b):
        m = [[field.zero] * n for _ in range(n)]
        for (i, j) in b:
            m[i][j] = field.one
        return m

    def mm(x, y):
        return [[sum((x[i][k] * y[k][j] for k in range(n)), field.zero) for j in range(n)]
                for i in range(n)]

    mats = [as_matrix(b) for b in basis]

    def prod(a, b):
        x, y = mats[a], mats[b]
        xy, yx = mm(x, y), mm(y, x)
        out = []
        for pos in basis:
            i, j = pos[0]
            out.append(half * (xy[i][j] + yx[i][j]))
        return out

    return StructureAlgebra.from_function(field, names, prod, {"name": f"H{n}"})


def jordan_plus(n: int, field: FieldSpec = Q) -> StructureAlgebra:
    if field.characteristic == 2:
        raise FieldError("Jordan algebras need characteristic != 2")
    return derived_algebra(matrix_algebra(n, field), "plus").with_meta(name=f"M{n}(+)")


def bilinear_form_jordan(v_dim: int, form, field: FieldSpec = Q) -> StructureAlgebra:
    """J(V, f) = F1 + V with (a + v)(b + u) = (ab + f(v, u)) + (au + bv)."""
    form = [[field(c) for c in row] for row in form]
    if len(form) != v_dim or any(len(r) != v_dim for r in form):
        raise ValueError("form must be a v_dim x v_dim matrix")
    if any(form[i][j] != form[j][i] for i in range(v_dim) for j in range(v_dim)):
        raise ConstructionError("form is not symmetric")
    names = ["1"] + [f"v{i + 1}" for i in range(v_dim)]
    table = {(0, 0): [(0, 1)]}
    for i in range(v_dim):
        table[(0, i + 1)] = [(i + 1, 1)]
        table[(i + 1, 0)] = [(i + 1, 1)]
        for j in range(v_dim):
            if form[i][j]:
                table[(i + 1, j + 1)] = [(0, form[i][j])]
    return StructureAlgebra(field, v_dim + 1, table, names,
                            {"name": f"J(V{v_dim},f)", "unit_index": 0})


# -- Cayley-Dickson ------------------------------------------------------------


def _cd_names(dim):
    if dim == 2:
        return ["1", "i"]
    if dim == 4:
        return ["1", "i", "j", "k"]
    return ["1"] + [f"e{i}" for i in range(1, dim)]


def cayley_dickson(A: StructureAlgebra, mu) -> StructureAlgebra:
    """Double A: (a, b)(c, d) = (ac + mu conj(d) b, da + b conj(c)).

    The involution of the result is conj(a, b) = (conj(a), -b).  The trace
    and norm satisfy x^2 - t(x) x + n(x) 1 = 0, which is checked on the
    basis before returning.
    """
    inv = A.meta.get("involution")
    if inv is None:
        raise ConstructionError("Cayley-Dickson input needs involution metadata")
    u = A.unit
    if u is None:
        raise ConstructionError("Cayley-Dickson input must be unital")
    f = A.field
    mu = f(mu)
    n = A.dim

    def conj(coords):
        # inv[i] is the image of e_i
        out = [f.zero] * n
        for i, c in enumerate(coords):
            if c:
                for k in range(n):
                    if inv[i][k]:
                        out[k] += c * inv[i][k]
        return out

    zero = [f.zero] * n
    es = [e.coords for e in A.basis_elements()]

    def split(i):
        return (es[i], zero) if i < n else (zero, es[i - n])

    def add(x, y):
        return [a + b for a, b in zip(x, y)]

    def prod(i, j):
        a, b = split(i)
        c, d = split(j)
        first = add(A.mul_coords(a, c), [mu * t for t in A.mul_coords(conj(d), b)])
        second = add(A.mul_coords(d, a), A.mul_coords(b, conj(c)))
        return first + second

    names = _cd_names(2 * n)
    new_inv = [conj(es[i]) + zero for i in range(n)] + [zero + [-t for t in es[i]] for i in range(n)]
    mus = list(A.meta.get("cd_mu", [])) + [f.format(mu)]
    out = StructureAlgebra.from_function(
        f, names, prod,
        {"name": f"CD{tuple(mus)}", "involution": new_inv, "unit_index": 0, "cd_mu": mus,
         "quadratic": True})
    for x in out.basis_elements():
        t, nn = trace(x), norm(x)
        res = x * x - t * x + nn * out.basis_element(0)
        if not res.is_zero():
            raise ConstructionError("doubling is not quadratic on the basis", witness=str(x))
    return out


def _involution_image(x: Element) -> Element:
    A = x.algebra
    inv = A.meta["involution"]
    out = [A.field.zero] * A.dim
    for i, c in enumerate(x.coords):
        if c:
            for k in range(A.dim):
                if inv[i][k]:
                    out[k] += c * inv[i][k]
    return Element(A, tuple(out))


def conjugate(x: Element) -> Element:
    return _involution_image(x)


def trace(x: Element):
    """t(x) = x + conj(x), read off the unit coordinate."""
    s = x + _involution_image(x)
    return s.coords[x.algebra.meta.get("unit_index", 0)]


def norm(x: Element):
    """n(x) = x conj(x), read off the unit coordinate."""
    s = x * _involution_image(x)
    return s.coords[x.algebra.meta.get("unit_index", 0)]


def cd_tower(mus, field: FieldSpec = Q) -> StructureAlgebra:
    A = field_algebra(field)
    for m in mus:
        A = cayley_dickson(A, m)
    return A


def complex_numbers(field: FieldSpec = Q) -> StructureAlgebra:
    return cd_tower([-1], field)


def quaternions(field: FieldSpec = Q) -> StructureAlgebra:
    return cd_tower([-1, -1], field).with_meta(name="quaternions")


def octonions(field: FieldSpec = Q) -> StructureAlgebra:
    return cd_tower([-1, -1, -1], field).with_meta(name="octonions")


def split_octonions(field: FieldSpec = Q) -> StructureAlgebra:
    return cd_tower([-1, -1, 1], field).with_meta(name="split-octonions")


CD_PRESETS = {
    "complex": [-1],
    "quaternions": [-1, -1],
    "octonions": [-1, -1, -1],
    "split-quaternions": [-1, 1],
    "split-octonions": [-1, -1, 1],
}


# -- quadratic algebras ------------------------------------------------------


@dataclass
class QuadraticData:
    """V with a symmetric form (u, v) and an anticommutative product u x v.

    ``cross`` maps (i, j) to a list of (k, coeff) on the basis of V.
    """

    field: FieldSpec
    v_dim: int
    form: list
    cross: dict

    def __post_init__(self):
        f = self.field
        self.form = [[f(c) for c in row] for row in self.form]
        n = self.v_dim
        if len(self.form) != n or any(len(r) != n for r in self.form):
            raise ConstructionError("form must be v_dim x v_dim")
        self._cross = [[[f.zero] * n for _ in range(n)] for _ in range(n)]
        for (i, j), terms in self.cross.items():
            for k, c in terms:
                self._cross[i][j][k] += f(c)

    def cross_coords(self, u, v) -> list:
        f = self.field
        n = self.v_dim
        out = [f.zero] * n
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                row = self._cross[i][j]
                for k in range(n):
                    if row[k]:
                        out[k] += a * b * row[k]
        return out

    def pair(self, u, v):
        f = self.field
        return sum((u[i] * self.form[i][j] * v[j] for i in range(self.v_dim)
                    for j in range(self.v_dim) if u[i] and v[j]), f.zero)

    def violations(self) -> list[str]:
        n = self.v_dim
        out = []
        for i in range(n):
            for j in range(n):
                if self.form[i][j] != self.form[j][i]:
                    out.append(f"form not symmetric at ({i}, {j})")
                a, b = self._cross[i][j], self._cross[j][i]
                if any(x + y for x, y in zip(a, b)):
                    out.append(f"cross not antisymmetric at ({i}, {j})")
        es = [[self.field.one if k == i else self.field.zero for k in range(n)] for i in range(n)]
        for i, j, k in itertools.product(range(n), repeat=3):
            lhs = self.pair(self.cross_coords(es[i], es[j]), es[k])
            rhs = self.pair(es[i], self.cross_coords(es[j], es[k]))
            if lhs != rhs:
                out.append(f"(u x v, w) != (u, v x w) at ({i}, {j}, {k})")
        return out


def quadratic_algebra(q: QuadraticData, names=None) -> StructureAlgebra:
    """F1 + V with (a + v)(b + u) = (ab + (v, u)) + (au + bv + v x u)."""
    bad = q.violations()
    if bad:
        raise ConstructionError("quadratic data violates its invariants", witness=bad[0])
    f = q.field
    n = q.v_dim
    names = list(names) if names else ["1"] + [f"v{i + 1}" for i in range(n)]
    table = {(0, 0): [(0, 1)]}
    for i in range(n):
        table[(0, i + 1)] = [(i + 1, 1)]
        table[(i + 1, 0)] = [(i + 1, 1)]
        for j in range(n):
            terms = []
            if q.form[i][j]:
                terms.append((0, q.form[i][j]))
            for k, c in enumerate(q._cross[i][j]):
                if c:
                    terms.append((k + 1, c))
            if terms:
                table[(i + 1, j + 1)] = terms
    # conj(a + v) = a - v
    inv = [[f.one] + [f.zero] * n] + [
        [f.zero] + [-f.one if k == i else f.zero for k in range(n)] for i in range(n)]
    return StructureAlgebra(f, n + 1, table, names,
                            {"name": "quadratic", "unit_index": 0, "involution": inv, "quadratic": True})


def quadratic_data_from(A: StructureAlgebra) -> QuadraticData:
    """Read (V, (,), x) off a quadratic algebra whose basis is 1, then trace-zero vectors."""
    if A.meta.get("unit_index", 0) != 0 or A.unit is None or A.unit != A.basis_element(0):
        raise ConstructionError("expected the unit as the first basis vector")
    f = A.field
    n = A.dim - 1
    form = [[f.zero] * n for _ in range(n)]
    cross = {}
    for i in range(n):
        for j in range(n):
            p = A.mul_coords(A.basis_element(i + 1).coords, A.basis_element(j + 1).coords)
            form[i][j] = p[0]
            terms = [(k - 1, c) for k, c in enumerate(p) if k and c]
            if terms:
                cross[(i, j)] = terms
    return QuadraticData(f, n, form, cross)


def quaternion_quadratic_data(field: FieldSpec = Q) -> QuadraticData:
    """Trace-zero quaternions: form = -identity, standard cross product."""
    cross = {(0, 1): [(2, 1)], (1, 0): [(2, -1)],
             (1, 2): [(0, 1)], (2, 1): [(0, -1)],
             (2, 0): [(1, 1)], (0, 2): [(1, -1)]}
    form = [[-1 if i == j else 0 for j in range(3)] for i in range(3)]
    return QuadraticData(field, 3, form, cross)


# -- Poisson data and Kokoris algebras ----------------------------------------


def _bracket_algebra(base: StructureAlgebra, bracket: dict) -> StructureAlgebra:
    return StructureAlgebra(base.field, base.dim, bracket, base.basis, {"name": "bracket"})


@dataclass
class PoissonData:
    """Commutative associative ``base`` plus an antisymmetric bracket table
    ``(i, j) -> [(k, c)]`` satisfying Leibniz; checked on construction."""

    base: StructureAlgebra
    bracket: dict

    def __post_init__(self):
        B = self.base
        if not B.is_commutative:
            raise ConstructionError("base algebra is not commutative")
        if not B.is_associative:
            raise ConstructionError("base algebra is not associative",
                                    witness=B.first_nonassociative_triple())
        self._br = _bracket_algebra(B, self.bracket)
        if not self._br.is_anticommutative:
            raise ConstructionError("bracket is not antisymmetric")
        w = self.leibniz_failure()
        if w is not None:
            raise ConstructionError("Leibniz identity fails", witness=w)

    def br(self, x: Element, y: Element) -> Element:
        return Element(self.base, tuple(self._br.mul_coords(x.coords, y.coords)))

    def leibniz_failure(self):
        """First basis triple with {xy, z} != x{y, z} + y{x, z}, or None."""
        es = self.base.basis_elements()
        for a, b, c in itertools.product(range(len(es)), repeat=3):
            x, y, z = es[a], es[b], es[c]
            lhs = self.br(x * y, z)
            rhs = x * self.br(y, z) + y * self.br(x, z)
            if lhs != rhs:
                names = self.base.basis
                return (names[a], names[b], names[c])
        return None


def kokoris_from_poisson(p: PoissonData) -> StructureAlgebra:
    """a * b = a.b + {a, b}."""
    B = p.base
    f = B.field

    def prod(i, j):
        out = list(B._mt[i][j]) + list(p._br._mt[i][j])
        v = [f.zero] * B.dim
        for k, c in out:
            v[k] += c
        return v

    meta = {"name": f"kokoris({B.meta.get('name', 'base')})"}
    if "unit_index" in B.meta:
        meta["unit_index"] = B.meta["unit_index"]
    A = StructureAlgebra.from_function(f, B.basis, prod, meta)
    if f.characteristic != 2:
        P = derived_algebra(A, "plus")
        if not P.same_table(B):
            raise ConstructionError("plus algebra of the Kokoris product differs from the base")
    return A


def kokoris_example(field: FieldSpec = Q) -> StructureAlgebra:
    """F1 + N, N = span(a, b, c) with N.N = 0 and {a, b} = c."""
    base = StructureAlgebra.from_products(
        field, ["1", "a", "b", "c"],
        {("1", x): {x: 1} for x in ["1", "a", "b", "c"]} | {(x, "1"): {x: 1} for x in ["a", "b", "c"]},
        {"name": "F1+N", "unit_index": 0})
    data = PoissonData(base, {(1, 2): [(3, 1)], (2, 1): [(3, -1)]})
    return kokoris_from_poisson(data).with_meta(name="kokoris-unital")


def kokoris_nilpotent_example(field: FieldSpec = Q) -> StructureAlgebra:
    """4-dim nilpotent Kokoris algebra: a.a = d, {a, b} = c, all else 0."""
    base = StructureAlgebra.from_products(field, ["a", "b", "c", "d"], {("a", "a"): {"d": 1}},
                                          {"name": "N4"})
    data = PoissonData(base, {(0, 1): [(2, 1)], (1, 0): [(2, -1)]})
    return kokoris_from_poisson(data).with_meta(name="kokoris-nilpotent")


# truncated polynomial algebras F[x_1..x_v]/(degree > cap)


def _monomials(num_vars, cap):
    out = []
    for d in range(cap + 1):
        level = [e for e in itertools.product(range(d + 1), repeat=num_vars) if sum(e) == d]
        out.extend(sorted(level, reverse=True))
    return out


def _mono_name(e):
    parts = []
    for i, k in enumerate(e):
        if k == 1:
            parts.append(f"x{i + 1}")
        elif k > 1:
            parts.append(f"x{i + 1}^{k}")
    return "".join(parts) or "1"


def truncated_polynomial_algebra(num_vars: int, cap: int, field: FieldSpec = Q) -> StructureAlgebra:
    monos = _monomials(num_vars, cap)
    index = {e: n for n, e in enumerate(monos)}
    table = {}
    for a, ea in enumerate(monos):
        for b, eb in enumerate(monos):
            s = tuple(x + y for x, y in zip(ea, eb))
            if s in index:
                table[(a, b)] = [(index[s], 1)]
    return StructureAlgebra(field, len(monos), table, [_mono_name(e) for e in monos],
                            {"name": f"F[x1..x{num_vars}]/(deg>{cap})", "unit_index": 0,
                             "monomials": monos})


def _poly_mul(f, g):
    out = {}
    for ea, ca in f.items():
        for eb, cb in g.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def _poly_diff(f, i):
    out = {}
    for e, c in f.items():
        if e[i]:
            e2 = list(e)
            e2[i] -= 1
            out[tuple(e2)] = out.get(tuple(e2), 0) + c * e[i]
    return {e: c for e, c in out.items() if c}


def _poly_add(f, g, s=1):
    out = dict(f)
    for e, c in g.items():
        out[e] = out.get(e, 0) + s * c
    return {e: c for e, c in out.items() if c}


def polynomial_bracket(f: dict, g: dict, c_table: dict, num_vars: int) -> dict:
    """{f, g} = sum_{i<j} c_ij (df/dx_i dg/dx_j - df/dx_j dg/dx_i).

    Polynomials are ``{exponent tuple: coeff}``; ``c_table[(i, j)]`` for
    i < j is a polynomial (0-based variable indices).
    """
    out = {}
    for i in range(num_vars):
        for j in range(i + 1, num_vars):
            c = c_table.get((i, j))
            if not c:
                continue
            term = _poly_add(_poly_mul(_poly_diff(f, i), _poly_diff(g, j)),
                             _poly_mul(_poly_diff(f, j), _poly_diff(g, i)), -1)
            out = _poly_add(out, _poly_mul(c, term))
    return out


def _normalize_c_table(c_table, num_vars):
    norm_ = {}
    for (i, j), poly in c_table.items():
        if i == j:
            if poly:
                raise ConstructionError("c_ii must vanish", witness=(i, i))
            continue
        if isinstance(poly, (int, Fraction)):
            poly = {(0,) * num_vars: poly} if poly else {}
        poly = {tuple(e): c for e, c in poly.items() if c}
        if i < j:
            key, val = (i, j), poly
        else:
            key, val = (j, i), {e: -c for e, c in poly.items()}
        if key in norm_ and norm_[key] != val:
            raise ConstructionError("c table is not antisymmetric", witness=key)
        norm_[key] = val
    return norm_


def poisson_polynomial_truncated(num_vars: int, degree_cap: int, c_table: dict,
                                 field: FieldSpec = Q) -> PoissonData:
    """The polynomial bracket on F[x]/(deg > cap), checked to be well defined."""
    if field.characteristic and field.characteristic <= degree_cap:
        raise FieldError("characteristic must be 0 or exceed the degree cap")
    c = _normalize_c_table(c_table, num_vars)
    base = truncated_polynomial_algebra(num_vars, degree_cap, field)
    monos = base.meta["monomials"]
    index = {e: n for n, e in enumerate(monos)}
    # ideal generators beyond cap+2 only produce brackets of degree > cap
    for d in (degree_cap + 1, degree_cap + 2):
        for e in itertools.product(range(d + 1), repeat=num_vars):
            if sum(e) != d:
                continue
            for g in monos:
                br = polynomial_bracket({e: 1}, {g: 1}, c, num_vars)
                low = {k: v for k, v in br.items() if sum(k) <= degree_cap}
                if low:
                    raise ConstructionError(
                        "bracket does not preserve the truncation ideal",
                        witness=(_mono_name(e), _mono_name(g), {_mono_name(k): str(v) for k, v in low.items()}))
    bracket = {}
    for a, ea in enumerate(monos):
        for b, eb in enumerate(monos):
            br = polynomial_bracket({ea: 1}, {eb: 1}, c, num_vars)
            terms = [(index[k], v) for k, v in br.items() if k in index]
            if terms:
                bracket[(a, b)] = terms
    return PoissonData(base, bracket)


# -- scalar extension ----------------------------------------------------------


def scalar_extension(A: StructureAlgebra, new_field: FieldSpec) -> StructureAlgebra:
    if not new_field.extends(A.field):
        raise FieldError(f"{new_field} does not extend {A.field}")
    table = {k: [(kk, new_field(c)) for kk, c in v] for k, v in A.table.items()}
    meta = dict(A.meta)
    if "involution" in meta:
        meta["involution"] = [[new_field(c) for c in row] for row in meta["involution"]]
    return StructureAlgebra(new_field, A.dim, table, A.basis, meta)


# -- random corpora ------------------------------------------------------------


def _rand_scalar(field, rng, density=1.0):
    if rng.random() > density:
        return field.zero
    if field.is_finite:
        return field(rng.randrange(field.p))
    return field(rng.randint(-3, 3))


def random_algebra(field: FieldSpec, dim: int, rng: random.Random, density: float = 0.5,
                   kind: str = "any") -> StructureAlgebra:
    """``kind`` is ``any``, ``commutative`` or ``anticommutative``."""
    vals = {}
    for i in range(dim):
        for j in range(dim):
            if kind != "any" and j < i:
                continue
            if kind == "anticommutative" and i == j:
                continue
            vals[(i, j)] = [_rand_scalar(field, rng, density) for _ in range(dim)]
            if kind == "commutative":
                vals[(j, i)] = vals[(i, j)]
            elif kind == "anticommutative":
                vals[(j, i)] = [-c for c in vals[(i, j)]]
    table = {k: [(kk, c) for kk, c in enumerate(v) if c] for k, v in vals.items()}
    return StructureAlgebra(field, dim, table, None, {"name": f"random-{kind}"})


def _flexible_bracket_space(dot: StructureAlgebra) -> list[list]:
    """Anticommutative tables b with b(x, x.y) = x.b(x, y) (linearized).

    Unknowns are b[i][j][k] for i < j; returns a nullspace basis.
    """
    f, n = dot.field, dot.dim
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    col = {}
    for p, (i, j) in enumerate(pairs):
        for k in range(n):
            col[(i, j, k)] = p * n + k
    ncols = len(pairs) * n

    def bterm(i, j, k):
        # coefficient handle for b(e_i, e_j)_k as (col, sign)
        if i == j:
            return None
        if i < j:
            return col[(i, j, k)], 1
        return col[(j, i, k)], -1

    rows = []
    # b(x, z.y) + b(z, x.y) - x.b(z, y) - z.b(x, y) = 0 on basis x, y, z
    for x, y, z in itertools.product(range(n), repeat=3):
        eqs = [dict() for _ in range(n)]

        def add_b(a, bvec, coeff):
            # b(e_a, sum bvec_m e_m), all output coordinates
            for m, cm in bvec:
                for k in range(n):
                    h = bterm(a, m, k)
                    if h:
                        eqs[k][h[0]] = eqs[k].get(h[0], f.zero) + coeff * cm * h[1]

        def add_dot_b(a, s, t, coeff):
            # e_a . b(e_s, e_t)
            for m in range(n):
                h = bterm(s, t, m)
                if not h:
                    continue
                for k, c in dot._mt[a][m]:
                    eqs[k][h[0]] = eqs[k].get(h[0], f.zero) + coeff * c * h[1]

        add_b(x, dot._mt[z][y], f.one)
        add_b(z, dot._mt[x][y], f.one)
        add_dot_b(x, z, y, -f.one)
        add_dot_b(z, x, y, -f.one)
        rows.extend(e for e in eqs if e)
    return nullspace(rows, ncols, f), pairs


def random_flexible_algebra(field: FieldSpec, dim: int, rng: random.Random,
                            dot: StructureAlgebra | None = None) -> StructureAlgebra:
    """Commutative product ``dot`` plus a random flexible bracket.

    The result's plus algebra is ``dot``; flexibility forces the bracket into
    a linear space computed from ``dot``.
    """
    if dot is None:
        dot = random_algebra(field, dim, rng, density=rng.choice([0.2, 0.5]), kind="commutative")
    if not dot.is_commutative:
        raise ValueError("dot product must be commutative")
    space, pairs = _flexible_bracket_space(dot)
    n = dot.dim
    coeffs = [_rand_scalar(field, rng) for _ in space]
    vec = [field.zero] * (len(pairs) * n)
    for c, b in zip(coeffs, space):
        if c:
            vec = [v + c * x for v, x in zip(vec, b)]
    table = {k: list(v) for k, v in dot.table.items()}
    for p, (i, j) in enumerate(pairs):
        for k in range(n):
            c = vec[p * n + k]
            if c:
                table.setdefault((i, j), []).append((k, c))
                table.setdefault((j, i), []).append((k, -c))
    return StructureAlgebra(field, n, table, dot.basis, {"name": "random-flexible"})


def random_commutative_associative(field: FieldSpec, dim: int, rng: random.Random) -> StructureAlgebra:
    """A random commutative associative algebra of the given dimension.

    Built from truncated polynomial pieces, zero-product pieces and
    ``F`` summands so the dimension is hit exactly.
    """
    pieces = []
    left = dim
    while left:
        choice = rng.choice(["field", "zero", "poly"])
        if choice == "poly" and left >= 2:
            nv, cap = rng.choice([(1, left - 1), (1, min(left - 1, 2))] + ([(2, 1)] if left >= 3 else []))
            P = truncated_polynomial_algebra(nv, cap, field)
            # drop the unit sometimes to get a nilpotent piece
            if rng.random() < 0.5 and P.dim > 1 and P.dim - 1 <= left:
                from .algebra import Subspace, restrict
                S = Subspace.span(P, [P.basis_element(i) for i in range(1, P.dim)])
                P = restrict(P, S)
            if P.dim <= left:
                pieces.append(P)
                left -= P.dim
                continue
        if choice == "zero":
            pieces.append(StructureAlgebra(field, 1, {}, ["z"]))
        else:
            pieces.append(field_algebra(field))
        left -= 1
    return direct_sum(pieces)


def direct_sum(pieces) -> StructureAlgebra:
    field = pieces[0].field
    table = {}
    off = 0
    names = []
    for P in pieces:
        for (i, j), terms in P.table.items():
            table[(i + off, j + off)] = [(k + off, c) for k, c in terms]
        names.extend(f"{b}_{len(names) + n}" for n, b in enumerate(P.basis))
        off += P.dim
    return StructureAlgebra(field, off, table, [f"e{i}" for i in range(off)], {"name": "direct-sum"})


def free_nilpotent_associative(gens: int, index: int, field: FieldSpec = Q) -> StructureAlgebra:
    """Free associative algebra on ``gens`` letters modulo words of length >= index."""
    words = []
    for d in range(1, index):
        words.extend(itertools.product(range(gens), repeat=d))
    pos = {w: n for n, w in enumerate(words)}
    table = {}
    for a, u in enumerate(words):
        for b, v in enumerate(words):
            w = u + v
            if w in pos:
                table[(a, b)] = [(pos[w], 1)]
    names = ["".join("xyzw"[c] if gens <= 4 else f"g{c}" for c in w) for w in words]
    return StructureAlgebra(field, len(words), table, names,
                            {"name": f"free-assoc-nilpotent({gens},{index})"})


def free_nilpotent_nonassociative(gens: int, index: int, field: FieldSpec = Q) -> StructureAlgebra:
    """Free nonassociative algebra on ``gens`` letters modulo monomials of degree >= index."""
    by_deg = {1: [g for g in range(gens)]}
    for d in range(2, index):
        level = []
        for i in range(1, d):
            for u in by_deg[i]:
                for v in by_deg[d - i]:
                    level.append((u, v))
        by_deg[d] = level
    monos = [m for d in range(1, index) for m in by_deg[d]]
    pos = {m: n for n, m in enumerate(monos)}
    deg = {}
    for d in range(1, index):
        for m in by_deg[d]:
            deg[m] = d
    table = {}
    for a, u in enumerate(monos):
        for b, v in enumerate(monos):
            if deg[u] + deg[v] < index:
                table[(a, b)] = [(pos[(u, v)], 1)]

    def name(m):
        if isinstance(m, int):
            return "xyzw"[m] if gens <= 4 else f"g{m}"
        return f"({name(m[0])}{name(m[1])})"

    return StructureAlgebra(field, len(monos), table, [name(m) for m in monos],
                            {"name": f"free-nilpotent({gens},{index})"})
