"""Brute-force identity checking by direct evaluation on coordinate grids.

Shares nothing with the polarization sweep in :mod:`nva.identities`: the
polynomial is evaluated as written, vectorized over every tuple of
elements whose coordinates come from a small grid.  A variable of degree
d is a polynomial function of degree <= d in each of its coordinates, so
the grid {0, ..., max(2, d)} per coordinate detects any nonzero function
over a field with more than max(2, d) elements.
"""
from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np

from .algebra import BudgetExceeded, StructureAlgebra
from .poly import NAPoly, leaves


def _mod(c: Fraction, p: int) -> int:
    c = Fraction(c)
    return c.numerator * pow(c.denominator, -1, p) % p


def _tensor(A: StructureAlgebra) -> np.ndarray:
    p = A.field.p
    T = np.zeros((A.dim, A.dim, A.dim), dtype=np.int64)
    for (i, j), row in A.table.items():
        for k, c in row:
            T[i, j, k] = int(c.v if hasattr(c, "v") else c) % p
    return T


def variable_degrees(poly: NAPoly) -> dict:
    out: dict = {}
    for m in poly.terms:
        counts: dict = {}
        for v in leaves(m):
            counts[v] = counts.get(v, 0) + 1
        for v, d in counts.items():
            out[v] = max(out.get(v, 0), d)
    return out


def grid_size(A: StructureAlgebra, poly: NAPoly) -> int:
    n = 1
    for d in variable_degrees(poly).values():
        n *= (max(2, d) + 1) ** A.dim
    return n


def vanishes_on_grid(A: StructureAlgebra, poly: NAPoly, budget: int = 3_000_000,
                     chunk: int = 200_000) -> bool:
    """True iff ``poly`` evaluates to 0 on every grid tuple (GF(p) only)."""
    if A.field.kind != "GFp":
        raise ValueError("the grid oracle works over GF(p)")
    p = A.field.p
    degs = variable_degrees(poly)
    names = sorted(degs)
    if grid_size(A, poly) > budget:
        raise BudgetExceeded(f"grid of {grid_size(A, poly)} tuples over the budget {budget}")
    T = _tensor(A)
    grids = []
    for v in names:
        g = max(2, degs[v])
        pts = np.array(list(itertools.product(range(g + 1), repeat=A.dim)), dtype=np.int64)
        grids.append(pts)
    terms = [(m, _mod(c, p)) for m, c in poly.terms.items()]
    total = 1
    for g in grids:
        total *= len(g)
    sizes = [len(g) for g in grids]
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk))
        env = {}
        rem = idx
        for v, g, s in reversed(list(zip(names, grids, sizes))):
            env[v] = g[rem % s]
            rem = rem // s
        cache: dict = {}

        def ev(m):
            if isinstance(m, str):
                return env[m]
            r = cache.get(m)
            if r is None:
                r = np.einsum("ni,nj,ijk->nk", ev(m[0]), ev(m[1]), T) % p
                cache[m] = r
            return r

        acc = np.zeros((len(idx), A.dim), dtype=np.int64)
        for m, c in terms:
            acc = (acc + c * ev(m)) % p
        if acc.any():
            return False
    return True
