"""Nonassociative polynomials.

A monomial is a planar binary tree whose leaves are variable names: a leaf
is a ``str`` and an internal node is a pair ``(left, right)``.  A polynomial
maps monomials to nonzero rational coefficients.
"""
from __future__ import annotations

import itertools
from collections import Counter
from fractions import Fraction
from typing import Union

Monomial = Union[str, tuple]


def leaves(m: Monomial) -> list[str]:
    if isinstance(m, str):
        return [m]
    return leaves(m[0]) + leaves(m[1])


def degree(m: Monomial) -> int:
    if isinstance(m, str):
        return 1
    return degree(m[0]) + degree(m[1])


def shape(m: Monomial):
    """The bare tree: leaves replaced by None."""
    if isinstance(m, str):
        return None
    return (shape(m[0]), shape(m[1]))


def fill(tree, names) -> Monomial:
    """Put ``names`` on the leaves of ``tree`` left to right."""
    it = iter(names)

    def go(t):
        if t is None:
            return next(it)
        return (go(t[0]), go(t[1]))

    return go(tree)


def mono_str(m: Monomial, top: bool = True) -> str:
    if isinstance(m, str):
        return m
    s = f"{mono_str(m[0], False)}*{mono_str(m[1], False)}"
    return s if top else f"({s})"


def mono_key(m: Monomial):
    return (degree(m), mono_str(m))


class NAPoly:
    """Immutable formal sum of coefficient-weighted monomials."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        for m, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[m] = clean.get(m, 0) + c
        self.terms = {m: c for m, c in clean.items() if c}
        self._hash = None

    @classmethod
    def var(cls, name: str) -> "NAPoly":
        return cls({name: 1})

    @classmethod
    def zero(cls) -> "NAPoly":
        return cls()

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, NAPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __add__(self, other: "NAPoly") -> "NAPoly":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return NAPoly(out)

    def __sub__(self, other: "NAPoly") -> "NAPoly":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) - c
        return NAPoly(out)

    def __neg__(self):
        return NAPoly({m: -c for m, c in self.terms.items()})

    def scale(self, c) -> "NAPoly":
        c = Fraction(c)
        return NAPoly({m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        """Algebra product for polynomials, scaling for numbers."""
        if not isinstance(other, NAPoly):
            return self.scale(other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                key = (m1, m2)
                out[key] = out.get(key, 0) + c1 * c2
        return NAPoly(out)

    def __rmul__(self, other):
        return self.scale(other)

    # -- structure ----------------------------------------------------------

    def variables(self) -> list[str]:
        """Variables in order of first appearance in the printed form."""
        seen = []
        for m in self.sorted_monomials():
            for v in leaves(m):
                if v not in seen:
                    seen.append(v)
        return seen

    def sorted_monomials(self) -> list:
        return sorted(self.terms, key=mono_key)

    def degree(self) -> int:
        return max((degree(m) for m in self.terms), default=0)

    def multidegree(self, m: Monomial) -> tuple:
        return tuple(sorted(Counter(leaves(m)).items()))

    def is_multilinear(self) -> bool:
        if not self.terms:
            return True
        vs = None
        for m in self.terms:
            ls = leaves(m)
            if len(set(ls)) != len(ls):
                return False
            if vs is None:
                vs = set(ls)
            elif set(ls) != vs:
                return False
        return True

    def components(self) -> dict:
        """Multihomogeneous components keyed by sorted (var, degree) tuples."""
        out: dict = {}
        for m, c in self.terms.items():
            out.setdefault(self.multidegree(m), {})[m] = c
        return {k: NAPoly(v) for k, v in sorted(out.items())}

    def is_homogeneous(self) -> bool:
        return len(self.components()) <= 1

    def substitute(self, mapping: dict) -> "NAPoly":
        """Replace variables by polynomials (missing ones stay put)."""
        cache = {}

        def sub(m):
            if m in cache:
                return cache[m]
            if isinstance(m, str):
                r = mapping.get(m, NAPoly.var(m))
            else:
                r = sub(m[0]) * sub(m[1])
            cache[m] = r
            return r

        out = NAPoly()
        for m, c in self.terms.items():
            out = out + sub(m).scale(c)
        return out

    def rename(self, mapping: dict) -> "NAPoly":
        def ren(m):
            if isinstance(m, str):
                return mapping.get(m, m)
            return (ren(m[0]), ren(m[1]))

        return NAPoly({ren(m): c for m, c in self.terms.items()})

    # -- printing -----------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in self.sorted_monomials():
            c = self.terms[m]
            body = mono_str(m)
            sign = "-" if c < 0 else "+"
            a = abs(c)
            text = body if a == 1 else f"{a}*{body}"
            parts.append((sign, text))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, text in parts[1:]:
            out += f" {sign} {text}"
        return out

    def __repr__(self):
        return f"NAPoly({self})"


def v(name: str) -> NAPoly:
    return NAPoly.var(name)


def comm(a: NAPoly, b: NAPoly) -> NAPoly:
    return a * b - b * a


def assoc(a: NAPoly, b: NAPoly, c: NAPoly) -> NAPoly:
    return (a * b) * c - a * (b * c)


def circ(a: NAPoly, b: NAPoly) -> NAPoly:
    return a * b + b * a


def plus_prod(a: NAPoly, b: NAPoly) -> NAPoly:
    return circ(a, b).scale(Fraction(1, 2))


def jassoc(a: NAPoly, b: NAPoly, c: NAPoly) -> NAPoly:
    """Associator of the plus product (xy + yx)/2."""
    return plus_prod(plus_prod(a, b), c) - plus_prod(a, plus_prod(b, c))


def jacobian(a: NAPoly, b: NAPoly, c: NAPoly) -> NAPoly:
    return comm(comm(a, b), c) + comm(comm(b, c), a) + comm(comm(c, a), b)


def right_power(a: NAPoly, n: int) -> NAPoly:
    if n < 1:
        raise ValueError("powers start at 1")
    out = a
    for _ in range(n - 1):
        out = out * a
    return out


# -- planar binary trees -----------------------------------------------------


def trees(n: int) -> list:
    """All planar binary trees with n leaves, in a fixed order."""
    return list(_trees(n))


_TREE_CACHE: dict = {}


def _trees(n):
    if n in _TREE_CACHE:
        return _TREE_CACHE[n]
    if n == 1:
        out = [None]
    else:
        out = []
        for i in range(1, n):
            for l in _trees(i):
                for r in _trees(n - i):
                    out.append((l, r))
    _TREE_CACHE[n] = out
    return out


def catalan(n: int) -> int:
    from math import comb

    return comb(2 * n, n) // (n + 1)


def multilinear_monomials(names) -> list:
    """Every monomial using each name exactly once (trees x orderings)."""
    names = list(names)
    out = []
    for t in trees(len(names)):
        for perm in itertools.permutations(names):
            out.append(fill(t, perm))
    return out
