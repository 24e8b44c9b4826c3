"""Sparse multivariate polynomials over an exact field.

A polynomial is a dict from exponent tuples to nonzero coefficients, tagged
with its ``Ring`` (field plus variable names).  Values are immutable and
hashable so they can key caches.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from ..errors import RingMismatch
from .field import Field

INF = math.inf


@dataclass(frozen=True)
class Ring:
    field: Field
    names: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        if len(set(self.names)) != len(self.names):
            raise RingMismatch(f"repeated variable names in {self.names}")

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise RingMismatch(f"no variable {name!r} in {self.names}") from None

    def zero(self) -> Poly:
        return Poly(self, {})

    def one(self) -> Poly:
        return self.const(1)

    def const(self, c) -> Poly:
        return Poly(self, {(0,) * self.nvars: self.field(c)})

    def var(self, name_or_index) -> Poly:
        i = name_or_index if isinstance(name_or_index, int) else self.index(name_or_index)
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): self.field.one})

    def gens(self) -> list[Poly]:
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, exps, coeff=1) -> Poly:
        return Poly(self, {tuple(exps): self.field(coeff)})

    def with_field(self, field: Field) -> Ring:
        return Ring(field, self.names)

    def extend(self, extra: tuple[str, ...]) -> Ring:
        return Ring(self.field, self.names + tuple(extra))

    def __str__(self):
        return f"{self.field}[{','.join(self.names)}]"


class Poly:
    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: dict):
        f = ring.field
        if f.p:
            self.terms = {e: c % f.p for e, c in terms.items() if c % f.p}
        else:
            self.terms = {e: Fraction(c) for e, c in terms.items() if c}
        self.ring = ring
        self._hash = None

    @classmethod
    def _raw(cls, ring, terms):
        p = object.__new__(cls)
        p.ring = ring
        p.terms = terms
        p._hash = None
        return p

    # basic structure -----------------------------------------------------

    @property
    def field(self) -> Field:
        return self.ring.field

    @property
    def nvars(self) -> int:
        return self.ring.nvars

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, self.field.zero)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def low_degree(self):
        """Order at the origin (INF for zero)."""
        return min((sum(e) for e in self.terms), default=INF)

    def homogeneous_part(self, d: int) -> Poly:
        return Poly._raw(self.ring, {e: c for e, c in self.terms.items() if sum(e) == d})

    def support_vars(self) -> set[int]:
        return {i for e in self.terms for i, k in enumerate(e) if k}

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, int):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def _check(self, other: Poly):
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")

    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            self._check(other)
            return other
        return self.ring.const(other)

    # arithmetic ----------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        f = self.field
        t = dict(self.terms)
        for e, c in other.terms.items():
            v = f.add(t.get(e, f.zero), c)
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return Poly._raw(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        f = self.field
        return Poly._raw(self.ring, {e: f.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = self.field(other)
            if not c:
                return self.ring.zero()
            f = self.field
            return Poly._raw(self.ring, {e: f.mul(v, c) for e, v in self.terms.items()})
        self._check(other)
        f = self.field
        t: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = f.add(t.get(e, f.zero), f.mul(c1, c2))
        return Poly._raw(self.ring, {e: c for e, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> Poly:
        return self * c

    def mul_monomial(self, exps, coeff=None) -> Poly:
        f = self.field
        c = f.one if coeff is None else coeff
        return Poly._raw(
            self.ring,
            {tuple(a + b for a, b in zip(e, exps)): f.mul(v, c) for e, v in self.terms.items()},
        )

    # divisibility by coordinate powers ------------------------------------

    def var_power_dividing(self, i: int):
        """Largest k with x_i^k | f (INF for zero)."""
        return min((e[i] for e in self.terms), default=INF)

    def divide_var_power(self, i: int, k: int) -> Poly:
        """Exact division by x_i^k; raises if not divisible."""
        if k == 0:
            return self
        t = {}
        for e, c in self.terms.items():
            if e[i] < k:
                raise ArithmeticError(f"x{i}^{k} does not divide polynomial")
            e2 = list(e)
            e2[i] -= k
            t[tuple(e2)] = c
        return Poly._raw(self.ring, t)

    # evaluation and substitution --------------------------------------------

    def evaluate(self, point):
        f = self.field
        pt = [f(a) for a in point]
        total = f.zero
        for e, c in self.terms.items():
            v = c
            for a, k in zip(pt, e):
                if k:
                    v = f.mul(v, f.pow(a, k))
            total = f.add(total, v)
        return total

    def substitute(self, images: list[Poly]) -> Poly:
        """Compose: replace x_i by ``images[i]`` (all in one target ring)."""
        if len(images) != self.nvars:
            raise RingMismatch("substitution needs one image per variable")
        target = images[0].ring if images else self.ring
        cache: dict = {}

        def power(i, k):
            key = (i, k)
            if key not in cache:
                cache[key] = images[i] ** k
            return cache[key]

        result = target.zero()
        for e, c in self.terms.items():
            term = target.const(c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            result = result + term
        return result

    def embed(self, ring: Ring, positions: list[int] | None = None) -> Poly:
        """Map into ``ring`` sending variable i to ``positions[i]`` (default: same name)."""
        if positions is None:
            positions = [ring.index(n) for n in self.ring.names]
        t = {}
        for e, c in self.terms.items():
            e2 = [0] * ring.nvars
            for i, k in enumerate(e):
                if k:
                    e2[positions[i]] = k
            t[tuple(e2)] = ring.field(c) if ring.field != self.field else c
        return Poly(ring, t)

    def change_field(self, field: Field) -> Poly:
        ring = self.ring.with_field(field)
        return Poly(ring, {e: field(c) for e, c in self.terms.items()})

    def translate(self, point) -> Poly:
        """f(x + a) for a point a."""
        f = self.field
        a = [f(v) for v in point]
        t: dict = {}
        for beta, c in self.terms.items():
            for alpha in product(*(range(b + 1) for b in beta)):
                v = c
                for ai, al, be in zip(a, alpha, beta):
                    if be:
                        v = f.mul(v, f.binomial(be, al))
                        if be - al:
                            v = f.mul(v, f.pow(ai, be - al))
                if v:
                    t[alpha] = f.add(t.get(alpha, f.zero), v)
        return Poly(self.ring, t)

    def order_at(self, point):
        """Order of vanishing at ``point``: least |alpha| with a nonzero Hasse derivative there."""
        if not any(point):
            return self.low_degree()
        return self.translate(point).low_degree()

    # Hasse derivatives ----------------------------------------------------------

    def hasse(self, alpha) -> Poly:
        """Hasse derivative: x^beta -> C(beta, alpha) x^(beta - alpha)."""
        f = self.field
        t = {}
        for beta, c in self.terms.items():
            if any(b < a for a, b in zip(alpha, beta)):
                continue
            v = c
            for a, b in zip(alpha, beta):
                if a:
                    v = f.mul(v, f.binomial(b, a))
                    if not v:
                        break
            if v:
                t[tuple(b - a for a, b in zip(alpha, beta))] = v
        return Poly._raw(self.ring, t)

    def taylor(self) -> Poly:
        """f(x + T) as a polynomial in the variables (x..., T...)."""
        f = self.field
        names = self.ring.names + tuple("T_" + n for n in self.ring.names)
        ring = Ring(f, names)
        t: dict = {}
        for beta, c in self.terms.items():
            for alpha in product(*(range(b + 1) for b in beta)):
                v = c
                for a, b in zip(alpha, beta):
                    if a:
                        v = f.mul(v, f.binomial(b, a))
                if v:
                    e = tuple(b - a for a, b in zip(alpha, beta)) + tuple(alpha)
                    t[e] = f.add(t.get(e, f.zero), v)
        return Poly(ring, t)

    # normalization and printing ------------------------------------------------

    def monic(self, key=None) -> Poly:
        """Scale so the leading coefficient (under ``key``, default grevlex) is 1."""
        if not self.terms:
            return self
        from .groebner import order_key

        lm = max(self.terms, key=key or order_key("grevlex"))
        return self * self.field.inv(self.terms[lm])

    def sorted_terms(self, key=None):
        from .groebner import order_key

        return sorted(self.terms.items(), key=lambda t: (key or order_key("grevlex"))(t[0]), reverse=True)

    def to_str(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(self.ring.names, e) if k
            )
            neg = self.field.p == 0 and c < 0
            a = -c if neg else c
            if mono:
                coef = "" if a == 1 else f"{a}*"
                body = coef + mono
            else:
                body = str(a)
            parts.append(("-", body) if neg else ("+", body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    __str__ = to_str

    def __repr__(self):
        return f"Poly({self.to_str()!r} in {self.ring})"


def multi_indices(n: int, max_total: int, min_total: int = 0):
    """All exponent tuples of length n with min_total <= |alpha| <= max_total."""
    def rec(k, budget):
        if k == n:
            yield ()
            return
        for a in range(budget + 1):
            for rest in rec(k + 1, budget - a):
                yield (a,) + rest

    for alpha in rec(0, max_total):
        if sum(alpha) >= min_total:
            yield alpha


def hasse_span(gens, s: int, support: list[int] | None = None) -> list[Poly]:
    """All nonzero Hasse derivatives of order <= s of the generators.

    ``support`` restricts differentiation to the given variable indices.
    """
    out: list[Poly] = []
    seen = set()
    for g in gens:
        if not g:
            continue
        n = g.nvars
        idx = list(range(n)) if support is None else list(support)
        for sub in multi_indices(len(idx), s):
            alpha = [0] * n
            for i, a in zip(idx, sub):
                alpha[i] = a
            d = g.hasse(tuple(alpha))
            if d and d not in seen:
                seen.add(d)
                out.append(d)
    return out
