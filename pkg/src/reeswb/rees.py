"""Couples, Rees algebras and their singular loci."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .errors import PreconditionError, ResourceError, RingMismatch
from .poly import (
    INF,
    Field,
    Poly,
    Ring,
    groebner,
    hasse_span,
    ideal_member,
    is_unit_ideal,
    order_key,
    radical_member,
    saturate,
)

PRODUCT_CAP = 10_000


def _canon(p: Poly) -> Poly:
    return p.monic()


def _sort_key(p: Poly):
    key = order_key("grevlex")
    return tuple(key(e) for e, _ in p.sorted_terms())


@dataclass(frozen=True)
class Locus:
    """Closed set V(I), stored through a reduced Groebner basis of I."""

    ring: Ring
    ideal: tuple[Poly, ...]

    @classmethod
    def of(cls, ring: Ring, gens, opens=()) -> Locus:
        """V(gens), restricted to the principal opens D(g) for g in ``opens`` (by saturation)."""
        gens = [g for g in gens if g]
        for g in opens:
            if gens and not g.is_constant():
                gens = saturate(gens, g)
        return cls(ring, tuple(groebner(gens, ring=ring)) if gens else ())

    @classmethod
    def everything(cls, ring: Ring) -> Locus:
        return cls(ring, ())

    def is_empty(self) -> bool:
        return is_unit_ideal(list(self.ideal))

    def contains(self, other: Locus) -> bool:
        """True when ``other`` is a subset of this locus."""
        if self.ring != other.ring:
            raise RingMismatch("loci in different rings")
        return all(radical_member(g, list(other.ideal)) for g in self.ideal)

    def same_as(self, other: Locus) -> bool:
        return self.contains(other) and other.contains(self)

    def intersect(self, other: Locus) -> Locus:
        return Locus.of(self.ring, list(self.ideal) + list(other.ideal))

    def has_point(self, point) -> bool:
        return all(not g.evaluate(point) for g in self.ideal)

    def points(self, p: int | None = None) -> set[tuple[int, ...]]:
        """Rational points over F_p (the ideal is reduced mod p if defined over QQ)."""
        field = self.ring.field if p is None else Field(p)
        if not field.p:
            raise PreconditionError("point scans need a finite field")
        gens = [g if g.field == field else g.change_field(field) for g in self.ideal]
        pts = product(range(field.p), repeat=self.ring.nvars)
        return {pt for pt in pts if all(not g.evaluate(pt) for g in gens)}

    def coordinate_subspace(self) -> tuple[int, ...] | None:
        """Indices S with V(I) = V(x_i : i in S), or None if V(I) is not of that form."""
        if self.is_empty():
            return None
        ring = self.ring
        s = tuple(i for i in range(ring.nvars) if radical_member(ring.var(i), list(self.ideal)))
        images = [ring.zero() if i in s else ring.var(i) for i in range(ring.nvars)]
        if all(not g.substitute(images) for g in self.ideal):
            return s
        return None

    def __str__(self):
        if not self.ideal:
            return "V(0)"
        return "V(" + ", ".join(map(str, self.ideal)) + ")"


@dataclass(frozen=True)
class Couple:
    """A pair (J, b): nonzero ideal J given by generators, positive integer b."""

    gens: tuple[Poly, ...]
    b: int

    def __post_init__(self):
        gens = tuple(g for g in self.gens if g)
        if not gens:
            raise PreconditionError("a couple needs a nonzero ideal")
        if self.b < 1:
            raise PreconditionError("b must be positive")
        if len({g.ring for g in gens}) != 1:
            raise RingMismatch("couple generators in different rings")
        object.__setattr__(self, "gens", gens)

    @property
    def ring(self) -> Ring:
        return self.gens[0].ring

    def __str__(self):
        return f"couple{{ gens: [{', '.join(map(str, self.gens))}], b: {self.b} }}"


@dataclass(frozen=True)
class ReesAlgebra:
    """O[f_1 W^n_1, ..., f_r W^n_r], kept as a canonical generator list.

    Generators are made monic, deduplicated and sorted by weight then by
    grevlex order of their terms.
    """

    gens: tuple[tuple[Poly, int], ...]

    def __post_init__(self):
        seen = set()
        out = []
        for f, n in self.gens:
            if n < 1:
                raise PreconditionError("weights must be positive")
            if not f:
                continue
            item = (_canon(f), int(n))
            if item not in seen:
                seen.add(item)
                out.append(item)
        if not out:
            raise PreconditionError("a Rees algebra needs at least one nonzero generator")
        if len({f.ring for f, _ in out}) != 1:
            raise RingMismatch("generators in different rings")
        out.sort(key=lambda fn: (fn[1], _sort_key(fn[0])))
        object.__setattr__(self, "gens", tuple(out))

    @property
    def ring(self) -> Ring:
        return self.gens[0][0].ring

    @property
    def max_weight(self) -> int:
        return max(n for _, n in self.gens)

    def __iter__(self):
        return iter(self.gens)

    def __len__(self):
        return len(self.gens)

    def __str__(self):
        return "rees{ gens: [" + ", ".join(f"({f}, {n})" for f, n in self.gens) + "] }"


# singular loci and orders --------------------------------------------------------


def diff_extend_ideal(gens, s: int) -> list[Poly]:
    """Generators of Diff^s(J): every Hasse derivative of order <= s of every generator."""
    if s < 0:
        raise PreconditionError("s must be nonnegative")
    return hasse_span(gens, s)


def sing_couple(c: Couple, opens=()) -> Locus:
    """Sing(J, b) = V(Diff^{b-1} J): points where J has order at least b."""
    return Locus.of(c.ring, diff_extend_ideal(c.gens, c.b - 1), opens)


def sing_rees(g: ReesAlgebra, opens=()) -> Locus:
    """Intersection over generators f W^n of the points where f has order >= n."""
    gens = []
    for f, n in g.gens:
        gens.extend(diff_extend_ideal([f], n - 1))
    return Locus.of(g.ring, gens, opens)


def ideal_order(gens, point):
    return min((g.order_at(point) for g in gens if g), default=INF)


def ord_rees(g: ReesAlgebra, point):
    """min over generators of order_x(f) / n, as an exact Fraction (INF if all vanish)."""
    best = INF
    for f, n in g.gens:
        o = f.order_at(point)
        if o != INF:
            best = min(best, Fraction(o, n))
    return best


def ord_couple(c: Couple, point):
    o = ideal_order(c.gens, point)
    return INF if o == INF else Fraction(o, c.b)


def odot(g1: ReesAlgebra, g2: ReesAlgebra) -> ReesAlgebra:
    """Smallest algebra containing both: concatenate generator lists."""
    if g1.ring != g2.ring:
        raise RingMismatch("odot of algebras in different rings")
    return ReesAlgebra(g1.gens + g2.gens)


def odot_couples(c1: Couple, c2: Couple) -> Couple:
    """(J1^b2 + J2^b1, b1 b2), whose singular locus is Sing(c1) cap Sing(c2)."""
    p1 = _ideal_power(c1.gens, c2.b)
    p2 = _ideal_power(c2.gens, c1.b)
    return Couple(tuple(p1 + p2), c1.b * c2.b)


def _ideal_power(gens, k: int) -> list[Poly]:
    gens = list(groebner(list(gens))) or list(gens)
    if k == 0:
        return [gens[0].ring.one()]
    count = math.comb(len(gens) + k - 1, k)
    if count > PRODUCT_CAP:
        raise ResourceError(f"ideal power needs {count} products")
    out = [gens[0].ring.one()]
    for _ in range(k):
        out = groebner([a * g for a in out for g in gens])
    return out


def ideal_power(gens, k: int) -> list[Poly]:
    """Generators (a reduced Groebner basis) of J^k."""
    return _ideal_power(gens, k)


def rees_from_couple(c: Couple) -> ReesAlgebra:
    """O[J W^b]: each generator of J placed in weight b."""
    return ReesAlgebra(tuple((g, c.b) for g in c.gens))


def _count_products(weights: tuple[int, ...], n: int) -> int:
    ways = [1] + [0] * n
    for w in weights:
        for k in range(w, n + 1):
            ways[k] += ways[k - w]
    return ways[n]


def algebra_degree_part(g: ReesAlgebra, n: int) -> list[Poly]:
    """The ideal I_n: spanned by products of generators of total weight exactly n.

    Returned as a reduced Groebner basis; an empty list means I_n = 0.
    """
    if n < 0:
        raise PreconditionError("degree must be nonnegative")
    weights = tuple(w for _, w in g.gens)
    count = _count_products(weights, n)
    if count > PRODUCT_CAP:
        raise ResourceError(f"degree-{n} part has {count} generator products (cap {PRODUCT_CAP})")
    return list(_degree_parts(g, n)[n])


@lru_cache(maxsize=512)
def _degree_parts(g: ReesAlgebra, n: int) -> tuple[tuple[Poly, ...], ...]:
    ring = g.ring
    parts: list[tuple[Poly, ...]] = [(ring.one(),)]
    for k in range(1, n + 1):
        gens = []
        for f, w in g.gens:
            if w <= k:
                gens.extend(f * h for h in parts[k - w])
        parts.append(tuple(groebner(gens, ring=ring)) if gens else ())
    return tuple(parts)


def degree_member(f: Poly, g: ReesAlgebra, n: int) -> bool:
    """Whether f W^n lies in the algebra (f in I_n)."""
    if n <= 0:
        return True
    part = algebra_degree_part(g, n)
    return ideal_member(f, part) if part else not f


def normalize_to_couple(g: ReesAlgebra) -> Couple:
    """(I_b, b) with b the lcm of the weights; integrally equivalent to g."""
    b = math.lcm(*(w for _, w in g.gens))
    part = algebra_degree_part(g, b)
    return Couple(tuple(part), b)


def is_simple(g: ReesAlgebra, probes) -> bool:
    """Order exactly 1 at every probe point; every probe must lie in Sing(g)."""
    sing = sing_rees(g)
    for pt in probes:
        if not sing.has_point(pt):
            raise PreconditionError(f"probe {pt} is not in Sing")
        if ord_rees(g, pt) != 1:
            return False
    return True
