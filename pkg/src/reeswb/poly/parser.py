"""Text syntax for polynomials: integer or rational coefficients, ``+ - * ^``, parentheses.

Multiplication must be written explicitly (``2*x*y``, not ``2xy``).  Unknown
identifiers are rejected rather than silently treated as new variables.
"""

from __future__ import annotations

import re
from fractions import Fraction

from ..errors import ParseError
from .polynomial import Poly, Ring

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z_0-9']*)|(\*\*|[-+*^()/]))")


def _tokenize(text: str):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", Fraction(num)))
        elif name is not None:
            out.append(("name", name))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str, ring: Ring):
        self.toks = _tokenize(text)
        self.i = 0
        self.ring = ring
        self.text = text

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            raise ParseError(f"expected {value or kind} in {self.text!r}, got {tok[1]!r}")
        self.i += 1
        return tok

    def parse(self) -> Poly:
        if not self.toks:
            raise ParseError("empty polynomial")
        p = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"trailing input in {self.text!r}: {self.peek()[1]!r}")
        return p

    def expr(self) -> Poly:
        sign = 1
        if self.peek() in (("op", "-"), ("op", "+")):
            sign = -1 if self.take()[1] == "-" else 1
        p = self.term() * sign
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            t = self.term()
            p = p + t if op == "+" else p - t
        return p

    def term(self) -> Poly:
        p = self.power()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            q = self.power()
            if op == "/":
                if not q.is_constant() or not q:
                    raise ParseError("division only by nonzero constants")
                p = p * self.ring.field.inv(q.constant_term())
            else:
                p = p * q
        return p

    def power(self) -> Poly:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take("num")
            if val.denominator != 1:
                raise ParseError("exponents must be nonnegative integers")
            return base ** int(val)
        return base

    def atom(self) -> Poly:
        kind, val = self.peek()
        if kind == "num":
            self.take()
            return self.ring.const(val)
        if kind == "name":
            self.take()
            if val not in self.ring.names:
                raise ParseError(f"unknown identifier {val!r}; variables are {list(self.ring.names)}")
            return self.ring.var(val)
        if (kind, val) == ("op", "("):
            self.take()
            p = self.expr()
            self.take("op", ")")
            return p
        if (kind, val) == ("op", "-"):
            self.take()
            return -self.power()
        raise ParseError(f"unexpected token {val!r} in {self.text!r}")


def parse_poly(text: str, ring: Ring) -> Poly:
    return _Parser(str(text), ring).parse()
