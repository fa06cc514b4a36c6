"""A small language for identities.

    expr     := ['+'|'-'] term (('+'|'-') term)*
    term     := NUMBER ['/' NUMBER] ['*' product] | product
    product  := power [('*' | 'o') power]        # chains need parentheses
    power    := atom ['^' NUMBER]                # principal right power
    atom     := IDENT | '(' expr ')' | '(' expr ',' expr ',' expr ')'
              | '[' expr ',' expr ']' | J(e, e, e) | assoc(e, e, e)
              | jassoc(e, e, e)

``(a,b,c)`` and ``assoc(a,b,c)`` are the associator, ``jassoc`` the
associator of the product (ab + ba)/2, ``J(a,b,c)`` the Jacobian sum of
double commutators, ``a o b`` the circle product ab + ba.  An identity is
``expr [= expr]`` and means left - right = 0.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .poly import NAPoly, assoc, circ, comm, jacobian, jassoc, right_power

RESERVED = {"o", "J", "assoc", "jassoc"}

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


class ParseError(ValueError):
    def __init__(self, msg, pos, src=""):
        super().__init__(f"{msg} at position {pos}" + (f" in {src!r}" if src else ""))
        self.pos = pos


@dataclass(frozen=True)
class Token:
    kind: str  # num, ident, op, end
    text: str
    pos: int


def tokenize(src: str) -> list[Token]:
    out = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m is None or m.end() == pos:
            break
        if m.group(1) is not None:
            out.append(Token("num", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            out.append(Token("ident", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch.isspace():
                pos = m.end()
                continue
            if ch not in "+-*/^()[],=":
                raise ParseError(f"unexpected character {ch!r}", m.start(3), src)
            out.append(Token("op", ch, m.start(3)))
        pos = m.end()
    out.append(Token("end", "", len(src)))
    return out


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.toks = tokenize(src)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def peek(self, k=1) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        raise ParseError(msg, tok.pos, self.src)

    def accept(self, text) -> bool:
        if self.tok.kind == "op" and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text):
        if not self.accept(text):
            self.error(f"expected {text!r}")

    def is_circle(self) -> bool:
        return self.tok.kind == "ident" and self.tok.text == "o"

    def identity(self):
        left = self.expr()
        right = NAPoly()
        if self.accept("="):
            right = self.expr()
        if self.tok.kind != "end":
            self.error(f"unexpected {self.tok.text!r}")
        return left - right

    def expr(self) -> NAPoly:
        sign = 1
        if self.accept("-"):
            sign = -1
        else:
            self.accept("+")
        out = self.term().scale(sign)
        while True:
            if self.accept("+"):
                out = out + self.term()
            elif self.accept("-"):
                out = out - self.term()
            else:
                return out

    def number(self) -> Fraction:
        t = self.tok
        self.i += 1
        value = Fraction(int(t.text))
        if self.accept("/"):
            if self.tok.kind != "num":
                self.error("expected a denominator")
            d = int(self.tok.text)
            if d == 0:
                self.error("zero denominator")
            self.i += 1
            value /= d
        return value

    def term(self) -> NAPoly:
        if self.tok.kind == "num":
            num_tok = self.tok
            c = self.number()
            if self.accept("*"):
                return self.product().scale(c)
            if c != 0:
                self.error("a bare nonzero constant is not a polynomial", num_tok)
            return NAPoly()
        return self.product()

    def product(self) -> NAPoly:
        left = self.power()
        if self.tok.kind == "op" and self.tok.text == "*":
            self.i += 1
            right = self.power()
            out = left * right
        elif self.is_circle():
            self.i += 1
            right = self.power()
            out = circ(left, right)
        else:
            return left
        if (self.tok.kind == "op" and self.tok.text == "*") or self.is_circle():
            self.error("ambiguous product chain; add parentheses")
        return out

    def power(self) -> NAPoly:
        base = self.atom()
        if self.accept("^"):
            if self.tok.kind != "num":
                self.error("expected an exponent")
            n = int(self.tok.text)
            if n < 1:
                self.error("exponent must be >= 1")
            self.i += 1
            return right_power(base, n)
        return base

    def args(self, n) -> list[NAPoly]:
        self.expect("(")
        out = [self.expr()]
        while self.accept(","):
            out.append(self.expr())
        self.expect(")")
        if len(out) != n:
            self.error(f"expected {n} arguments, got {len(out)}")
        return out

    def atom(self) -> NAPoly:
        t = self.tok
        if t.kind == "ident":
            name = t.text
            if name in ("J", "assoc", "jassoc") and self.peek().text == "(":
                self.i += 1
                a, b, c = self.args(3)
                return {"J": jacobian, "assoc": assoc, "jassoc": jassoc}[name](a, b, c)
            if name in RESERVED:
                self.error(f"{name!r} is reserved")
            self.i += 1
            return NAPoly.var(name)
        if self.accept("("):
            first = self.expr()
            if self.accept(","):
                second = self.expr()
                if not self.accept(","):
                    self.error("parenthesized tuples must be associators (three entries)")
                third = self.expr()
                self.expect(")")
                return assoc(first, second, third)
            self.expect(")")
            return first
        if self.accept("["):
            a = self.expr()
            self.expect(",")
            b = self.expr()
            self.expect("]")
            return comm(a, b)
        if t.kind == "end":
            self.error("unexpected end of input")
        self.error(f"unexpected {t.text!r}")


@dataclass(frozen=True)
class Identity:
    """``poly = 0``, remembering the text it came from."""

    poly: NAPoly
    source: str = ""
    meta: dict = field(default_factory=dict, compare=False, hash=False)

    @property
    def text(self) -> str:
        return self.source or str(self.poly)

    def components(self) -> dict:
        return self.poly.components()

    def __str__(self):
        return self.text


def parse(src: str) -> Identity:
    poly = _Parser(src).identity()
    comps = poly.components()
    return Identity(poly, src.strip(), {"components": [dict(k) for k in comps]})


def parse_poly(src: str) -> NAPoly:
    return _Parser(src).identity()


def to_text(obj) -> str:
    """Canonical text in the {*} basis; ``parse(to_text(x))`` gives the same poly."""
    poly = obj.poly if isinstance(obj, Identity) else obj
    return str(poly)


def read_identity_file(text: str) -> list[Identity]:
    """One identity per line; ``#`` starts a comment; ``key: value`` headers skipped."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line or _HEADER.match(line):
            continue
        try:
            out.append(parse(line))
        except ParseError as exc:
            raise ParseError(f"line {lineno}: {exc}", exc.pos) from None
    return out


_HEADER = re.compile(r"^[A-Za-z_]+\s*:")
