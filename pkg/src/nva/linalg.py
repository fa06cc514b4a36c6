"""Incremental reduced row echelon form over an exact field.

Rows are sparse ``{column: scalar}`` dicts.  Over GF(p) the internal
representation is plain ints mod p, which is several times faster than
boxing every entry.
"""
from __future__ import annotations

from fractions import Fraction

from .fields import FieldSpec, ModP


def _mod(v, p: int) -> int:
    if isinstance(v, ModP):
        return v.v % p
    if isinstance(v, int):
        return v % p
    v = Fraction(v)
    return v.numerator * pow(v.denominator, -1, p) % p


class Echelon:
    """A growing subspace of F^ncols kept in reduced row echelon form.

    ``pivots`` maps pivot column -> row; every row has a 1 at its pivot and
    every other row is 0 at that column.
    """

    def __init__(self, ncols: int, field: FieldSpec):
        self.ncols = ncols
        self.field = field
        self.p = field.p if field.kind == "GFp" else None
        self.pivots: dict[int, dict] = {}

    def __len__(self):
        return len(self.pivots)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _internal(self, row: dict) -> dict:
        p = self.p
        out = {}
        if p is None:
            f = self.field
            for c, v in row.items():
                v = f(v)
                if v:
                    out[c] = v
        else:
            for c, v in row.items():
                v = _mod(v, p)
                if v:
                    out[c] = v
        return out

    def _reduce_internal(self, row: dict) -> dict:
        p = self.p
        row = dict(row)
        # pivots are eliminated in increasing column order; rows are fully reduced
        # so a single pass over the row's columns that are pivots suffices
        for c in sorted(c for c in row if c in self.pivots):
            v = row.get(c)
            if not v:
                continue
            prow = self.pivots[c]
            if p is None:
                for cc, pv in prow.items():
                    nv = row.get(cc, 0) - v * pv
                    if nv:
                        row[cc] = nv
                    else:
                        row.pop(cc, None)
            else:
                for cc, pv in prow.items():
                    nv = (row.get(cc, 0) - v * pv) % p
                    if nv:
                        row[cc] = nv
                    else:
                        row.pop(cc, None)
        return row

    def reduce(self, row: dict) -> dict:
        """Remainder of ``row`` modulo the span (in field scalars)."""
        red = self._reduce_internal(self._internal(row))
        return self._external(red)

    def contains(self, row: dict) -> bool:
        return not self._reduce_internal(self._internal(row))

    def add(self, row: dict) -> bool:
        """Insert ``row``; return True when the rank grew."""
        red = self._reduce_internal(self._internal(row))
        if not red:
            return False
        piv = min(red)
        lead = red[piv]
        p = self.p
        if p is None:
            inv = 1 / lead
            red = {c: v * inv for c, v in red.items()}
        else:
            inv = pow(lead, -1, p)
            red = {c: v * inv % p for c, v in red.items()}
        for c, prow in self.pivots.items():
            v = prow.get(piv)
            if not v:
                continue
            for cc, rv in red.items():
                if p is None:
                    nv = prow.get(cc, 0) - v * rv
                else:
                    nv = (prow.get(cc, 0) - v * rv) % p
                if nv:
                    prow[cc] = nv
                else:
                    prow.pop(cc, None)
        self.pivots[piv] = red
        return True

    def extend(self, rows) -> int:
        return sum(1 for r in rows if self.add(r))

    def _external(self, row: dict) -> dict:
        if self.p is None:
            return dict(row)
        return {c: ModP(v, self.p) for c, v in row.items()}

    def rows(self) -> list[dict]:
        """Echelon rows sorted by pivot, entries as field scalars."""
        return [self._external(self.pivots[c]) for c in sorted(self.pivots)]

    def dense_rows(self) -> list[list]:
        zero = self.field.zero
        out = []
        for r in self.rows():
            dense = [zero] * self.ncols
            for c, v in r.items():
                dense[c] = v
            out.append(dense)
        return out

    def copy(self) -> "Echelon":
        e = Echelon(self.ncols, self.field)
        e.pivots = {c: dict(r) for c, r in self.pivots.items()}
        return e


def rref(rows, ncols: int, field: FieldSpec) -> list[dict]:
    ech = Echelon(ncols, field)
    ech.extend(rows)
    return ech.rows()


def rank(rows, ncols: int, field: FieldSpec) -> int:
    ech = Echelon(ncols, field)
    ech.extend(rows)
    return ech.rank


def nullspace(rows, ncols: int, field: FieldSpec) -> list[list]:
    """Basis of {x : r.x = 0 for every row r}, as dense vectors."""
    ech = Echelon(ncols, field)
    ech.extend(rows)
    piv = ech.rows()
    pivcols = sorted(ech.pivots)
    free = [c for c in range(ncols) if c not in ech.pivots]
    zero, one = field.zero, field.one
    basis = []
    for fc in free:
        x = [zero] * ncols
        x[fc] = one
        for pc, r in zip(pivcols, piv):
            v = r.get(fc)
            if v:
                x[pc] = -v
        basis.append(x)
    return basis


def solve(rows, rhs, ncols: int, field: FieldSpec):
    """One solution x of ``rows . x = rhs`` or None when inconsistent."""
    aug = []
    for r, b in zip(rows, rhs):
        row = dict(r)
        if b:
            row[ncols] = b
        aug.append(row)
    ech = Echelon(ncols + 1, field)
    ech.extend(aug)
    if ncols in ech.pivots:
        return None
    x = [field.zero] * ncols
    for pc, r in zip(sorted(ech.pivots), ech.rows()):
        x[pc] = r.get(ncols, field.zero)
    return x
