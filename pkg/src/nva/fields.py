"""Exact scalar arithmetic: rationals, prime fields and Q(sqrt d).

Scalars are plain Python objects supporting ``+ - * /``, unary minus,
equality with ints and truthiness.  Rationals are :class:`fractions.Fraction`,
prime-field elements are :class:`ModP`, quadratic-extension elements are
:class:`QuadExt`.  A :class:`FieldSpec` converts foreign values into its own
scalar type and knows how to print and parse them.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property


class FieldError(ValueError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _squarefree_part_ok(d: int) -> bool:
    if d in (0, 1):
        return False
    r = int(abs(d) ** 0.5)
    for c in (r - 1, r, r + 1):
        if c >= 0 and c * c == d:
            return False
    return True


class ModP:
    """Element of GF(p)."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, ModP):
            if other.p != self.p:
                raise FieldError(f"mixed moduli {self.p} and {other.p}")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.v * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return ModP(-self.v, self.p)

    def inverse(self) -> "ModP":
        if self.v == 0:
            raise ZeroDivisionError("inverse of 0 in GF(%d)" % self.p)
        return ModP(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * ModP(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(o, self.p) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return ModP(pow(self.v, n, self.p), self.p)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return (self.v - o) % self.p == 0

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"{self.v} (mod {self.p})"

    def __str__(self):
        return str(self.v)


class QuadExt:
    """Element a + b*sqrt(d) of Q(sqrt d), a and b rational."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d: int):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.d = d

    def _coerce(self, other):
        if isinstance(other, QuadExt):
            if other.d != self.d:
                raise FieldError(f"mixed extensions sqrt({self.d}) and sqrt({other.d})")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadExt(other, 0, self.d)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadExt(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadExt(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadExt(self.a * o.a + self.d * self.b * o.b, self.a * o.b + self.b * o.a, self.d)

    __rmul__ = __mul__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.d)

    def conjugate(self) -> "QuadExt":
        return QuadExt(self.a, -self.b, self.d)

    def inverse(self) -> "QuadExt":
        norm = self.a * self.a - self.d * self.b * self.b
        if norm == 0:
            raise ZeroDivisionError("inverse of 0 in Q(sqrt(%d))" % self.d)
        return QuadExt(self.a / norm, -self.b / norm, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = QuadExt(1, 0, self.d)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except FieldError:
            return False
        if o is NotImplemented:
            return False
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __repr__(self):
        return f"QuadExt({self.a}, {self.b}, d={self.d})"

    def __str__(self):
        return format_scalar(self)


@dataclass(frozen=True)
class FieldSpec:
    """One of ``Q``, ``GF(p)`` or ``Q(sqrt d)``."""

    kind: str
    p: int = 0
    d: int = 0

    def __post_init__(self):
        if self.kind == "Q":
            pass
        elif self.kind == "GFp":
            if not _is_prime(self.p):
                raise FieldError(f"GF(p) needs a prime, got {self.p}")
        elif self.kind == "Q-sqrt":
            if not _squarefree_part_ok(self.d):
                raise FieldError(f"sqrt({self.d}) is already rational")
        else:
            raise FieldError(f"unknown field kind {self.kind!r}")

    @property
    def characteristic(self) -> int:
        return self.p if self.kind == "GFp" else 0

    @property
    def is_finite(self) -> bool:
        return self.kind == "GFp"

    @property
    def order(self) -> int | None:
        return self.p if self.kind == "GFp" else None

    @cached_property
    def zero(self):
        return self(0)

    @cached_property
    def one(self):
        return self(1)

    def __call__(self, x):
        """Coerce ``x`` (int, Fraction, decimal-rational string or scalar)."""
        if isinstance(x, str):
            return self.parse(x)
        if self.kind == "Q":
            if isinstance(x, (int, Fraction)):
                return Fraction(x)
            if isinstance(x, QuadExt) and x.b == 0:
                return x.a
            raise FieldError(f"cannot read {x!r} as a rational")
        if self.kind == "GFp":
            if isinstance(x, ModP):
                if x.p != self.p:
                    raise FieldError(f"element of GF({x.p}) is not in GF({self.p})")
                return x
            if isinstance(x, int):
                return ModP(x, self.p)
            if isinstance(x, Fraction):
                if x.denominator % self.p == 0:
                    raise FieldError(f"{x} has no image in GF({self.p})")
                return ModP(x.numerator * pow(x.denominator, -1, self.p), self.p)
            raise FieldError(f"cannot read {x!r} in GF({self.p})")
        if isinstance(x, QuadExt):
            if x.d != self.d:
                raise FieldError(f"element of Q(sqrt({x.d})) is not in Q(sqrt({self.d}))")
            return x
        if isinstance(x, (int, Fraction)):
            return QuadExt(x, 0, self.d)
        raise FieldError(f"cannot read {x!r} in Q(sqrt({self.d}))")

    def sqrt_generator(self):
        """The adjoined square root (Q-sqrt only)."""
        if self.kind != "Q-sqrt":
            raise FieldError("only Q(sqrt d) has a distinguished square root")
        return QuadExt(0, 1, self.d)

    def square_roots(self, x) -> list:
        """All square roots of ``x`` in this field, sorted for reproducibility."""
        x = self(x)
        if self.kind == "GFp":
            return [ModP(r, self.p) for r in range(self.p) if (r * r - x.v) % self.p == 0]
        if self.kind == "Q-sqrt":
            roots = []
            # a + b s with (a + b s)^2 = x; only pure and rational cases needed here
            if x.b == 0:
                q = _rational_sqrt(x.a)
                if q is not None:
                    roots = [QuadExt(q, 0, self.d), QuadExt(-q, 0, self.d)]
                else:
                    q = _rational_sqrt(x.a / self.d)
                    if q is not None:
                        roots = [QuadExt(0, q, self.d), QuadExt(0, -q, self.d)]
            return sorted(set(roots), key=lambda r: (r.a, r.b))
        q = _rational_sqrt(x)
        return [] if q is None else sorted({q, -q})

    def elements(self):
        """Iterate a finite field in the order 0, 1, ..., p-1."""
        if not self.is_finite:
            raise FieldError("only finite fields are enumerable")
        return (ModP(v, self.p) for v in range(self.p))

    def to_json(self) -> dict:
        if self.kind == "Q":
            return {"kind": "Q"}
        if self.kind == "GFp":
            return {"kind": "GFp", "p": self.p}
        return {"kind": "Q-sqrt", "d": self.d}

    @classmethod
    def from_json(cls, obj: dict) -> "FieldSpec":
        kind = obj["kind"]
        if kind == "Q":
            return Q
        if kind == "GFp":
            return cls("GFp", p=int(obj["p"]))
        if kind == "Q-sqrt":
            return cls("Q-sqrt", d=int(obj["d"]))
        raise FieldError(f"unknown field kind {kind!r}")

    @classmethod
    def from_flag(cls, text: str) -> "FieldSpec":
        """Parse the command-line forms ``q``, ``gf:<p>``, ``q-sqrt:<d>``."""
        t = text.strip().lower()
        if t == "q":
            return Q
        if t.startswith("gf:"):
            return GF(int(t[3:]))
        if t.startswith("q-sqrt:"):
            return cls("Q-sqrt", d=int(t[7:]))
        raise FieldError(f"bad field flag {text!r}")

    def parse(self, text: str):
        text = text.strip()
        if self.kind == "Q-sqrt" and "s" in text:
            return _parse_quad(text, self.d)
        return self(Fraction(text))

    def format(self, x) -> str:
        return format_scalar(self(x))

    def extends(self, other: "FieldSpec") -> bool:
        """True when ``self`` contains ``other`` canonically."""
        if self == other:
            return True
        return self.kind == "Q-sqrt" and other.kind == "Q"

    def __str__(self):
        if self.kind == "Q":
            return "Q"
        if self.kind == "GFp":
            return f"GF({self.p})"
        return f"Q(sqrt({self.d}))"


Q = FieldSpec("Q")


def GF(p: int) -> FieldSpec:
    return FieldSpec("GFp", p=p)


def QSqrt(d: int) -> FieldSpec:
    return FieldSpec("Q-sqrt", d=d)


def _rational_sqrt(x: Fraction):
    x = Fraction(x)
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = _isqrt_exact(n), _isqrt_exact(d)
    if rn is None or rd is None:
        return None
    return Fraction(rn, rd)


def _isqrt_exact(n: int):
    import math

    r = math.isqrt(n)
    return r if r * r == n else None


def format_scalar(x) -> str:
    """Decimal-rational text: ``"3/2"``, ``"-1"``, ``"1/2+3s"`` for Q(sqrt d)."""
    if isinstance(x, QuadExt):
        if x.b == 0:
            return str(x.a)
        if x.a == 0:
            return f"{x.b}s"
        sign = "+" if x.b > 0 else "-"
        return f"{x.a}{sign}{abs(x.b)}s"
    if isinstance(x, ModP):
        return str(x.v)
    return str(Fraction(x))


def _parse_quad(text: str, d: int) -> QuadExt:
    # forms: "bs", "a+bs", "a-bs"; "s" is the adjoined root
    body = text.replace(" ", "")
    if not body.endswith("s"):
        raise FieldError(f"bad Q(sqrt d) scalar {text!r}")
    body = body[:-1]
    cut = max(body.rfind("+"), body.rfind("-"))
    # a leading sign or a sign inside a/b fraction is not a split point
    while cut > 0 and body[cut - 1] in "/":
        cut = max(body.rfind("+", 0, cut), body.rfind("-", 0, cut))
    if cut <= 0:
        a, b = "0", body
    else:
        a, b = body[:cut], body[cut:]
    if b in ("", "+"):
        b = "1"
    elif b == "-":
        b = "-1"
    return QuadExt(Fraction(a), Fraction(b), d)
