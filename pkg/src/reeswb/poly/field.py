"""Exact coefficient fields: the rationals and prime fields F_p."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from ..errors import FieldError

MAX_PRIME = 2**31


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


@dataclass(frozen=True)
class Field:
    """Either QQ (``p == 0``) or the prime field F_p.

    Elements of QQ are ``Fraction``; elements of F_p are ints in ``[0, p)``.
    """

    p: int = 0

    def __post_init__(self):
        if self.p != 0 and (self.p >= MAX_PRIME or not _is_prime(self.p)):
            raise FieldError(f"characteristic must be 0 or a prime below 2^31, got {self.p}")

    @property
    def char(self) -> int:
        return self.p

    @property
    def zero(self):
        return Fraction(0) if self.p == 0 else 0

    @property
    def one(self):
        return Fraction(1) if self.p == 0 else 1

    def __call__(self, value):
        """Coerce an int, Fraction or numeric string into the field."""
        if isinstance(value, str):
            value = Fraction(value)
        if self.p == 0:
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise FieldError(f"{value} has no image in F_{self.p}")
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        return int(value) % self.p

    def add(self, a, b):
        return a + b if self.p == 0 else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.p == 0 else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.p == 0 else a * b % self.p

    def neg(self, a):
        return -a if self.p == 0 else -a % self.p

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a) if self.p == 0 else pow(a, -1, self.p)

    def pow(self, a, k: int):
        return a**k if self.p == 0 else pow(a, k, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def binomial(self, n: int, k: int):
        """C(n, k) as a field element; Lucas' theorem keeps it exact mod p."""
        if k < 0 or k > n:
            return self.zero
        if self.p == 0:
            return Fraction(comb(n, k))
        result = 1
        while n or k:
            n, ni = divmod(n, self.p)
            k, ki = divmod(k, self.p)
            if ki > ni:
                return 0
            result = result * comb(ni, ki) % self.p
        return result

    def elements(self):
        """Iterate over F_p (only finite fields are enumerable)."""
        if self.p == 0:
            raise FieldError("QQ is not enumerable")
        return range(self.p)

    def __str__(self):
        return "QQ" if self.p == 0 else f"F{self.p}"

    @classmethod
    def parse(cls, text) -> Field:
        """Accept 'Q', 'QQ', '0', 'F5', 'GF(5)', 5."""
        if isinstance(text, int):
            return cls(text)
        t = str(text).strip().upper().replace("GF(", "F").replace(")", "")
        if t in ("Q", "QQ", "0", "RATIONALS"):
            return cls(0)
        if t.startswith("F"):
            t = t[1:]
        try:
            return cls(int(t))
        except ValueError:
            raise FieldError(f"unknown field {text!r}") from None


QQ = Field(0)


def rank(rows: list[list], field: Field) -> int:
    """Rank of a matrix over ``field`` by Gaussian elimination."""
    return len(row_echelon(rows, field))


def row_echelon(rows: list[list], field: Field) -> list[list]:
    """Reduced row echelon form, nonzero rows only."""
    m = [[field(x) for x in r] for r in rows]
    if not m:
        return []
    ncols = len(m[0])
    out: list[list] = []
    col = 0
    while m and col < ncols:
        pivot = next((r for r in m if r[col]), None)
        if pivot is None:
            col += 1
            continue
        m.remove(pivot)
        inv = field.inv(pivot[col])
        pivot = [field.mul(x, inv) for x in pivot]
        m = [_eliminate(r, pivot, col, field) for r in m]
        out = [_eliminate(r, pivot, col, field) for r in out]
        out.append(pivot)
        col += 1
    return out


def _eliminate(row, pivot, col, field):
    c = row[col]
    if not c:
        return row
    return [field.sub(a, field.mul(c, b)) for a, b in zip(row, pivot)]
