"""Satellite functions of a basic object: w-ord, t, and the simple couples attached to their maxima.

Everything is expressed for a couple (J, b) together with the coordinate
indices of the exceptional hypersurfaces that are factored out.  The driver
supplies the region over which maxima are taken (Sing of the current
object, or Sing of an attached algebra at higher levels).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .charts import BasicObject, Divisor, blowup
from .errors import PreconditionError, StateError
from .poly import INF, Poly, groebner
from .rees import Couple, Locus, ReesAlgebra, diff_extend_ideal, ideal_power, normalize_to_couple


def as_couple(payload) -> Couple:
    return payload if isinstance(payload, Couple) else normalize_to_couple(payload)


@dataclass(frozen=True)
class Factorization:
    exponents: tuple[tuple[int, int], ...]  # (variable index, b_i)
    residual: tuple[Poly, ...]

    def monomial(self, ring) -> Poly:
        m = ring.one()
        for i, k in self.exponents:
            m = m * ring.var(i) ** k
        return m


def factor_exceptional(gens, var_indices) -> Factorization:
    """J = prod x_i^{b_i} * Jbar with b_i the largest power of x_i dividing every generator."""
    gens = [g for g in gens if g]
    if not gens:
        raise PreconditionError("cannot factor the zero ideal")
    exps = []
    residual = list(gens)
    for i in var_indices:
        b = min(g.var_power_dividing(i) for g in residual)
        exps.append((i, int(b)))
        if b:
            residual = [g.divide_var_power(i, b) for g in residual]
    fac = Factorization(tuple(exps), tuple(residual))
    m = fac.monomial(gens[0].ring)
    if any(m * r != g for r, g in zip(residual, gens)):
        raise ArithmeticError("factorization does not multiply back")
    return fac


def exceptional_indices(bo: BasicObject) -> list[int]:
    return [i for d, i in bo.divisor_vars() if d.exceptional]


# pointwise functions ------------------------------------------------------------------


def w_ord(bo: BasicObject, point, check: bool = True) -> Fraction:
    """ord of the residual ideal at ``point`` divided by b.

    With ``check`` the point must lie in Sing(J, b).
    """
    c = as_couple(bo.payload)
    if check and not bo.sing().has_point(point):
        raise PreconditionError(f"{point} is not in Sing")
    fac = factor_exceptional(c.gens, exceptional_indices(bo))
    o = min(g.order_at(point) for g in fac.residual)
    return Fraction(o, c.b)


def exp_i(bo: BasicObject, point) -> dict[str, Fraction]:
    """b_i / b at points of H_i and 0 elsewhere, for each exceptional hypersurface."""
    c = as_couple(bo.payload)
    fac = factor_exceptional(c.gens, exceptional_indices(bo))
    b_of = dict(fac.exponents)
    f = bo.ring.field
    out = {}
    for d, i in bo.divisor_vars():
        if d.exceptional:
            on = not f(point[i])
            out[d.name] = Fraction(b_of[i], c.b) if on else Fraction(0)
    return out


def n_count(E_minus: list[Divisor], point, field) -> int:
    """Number of hypersurfaces of E^- through the point (absent ones never count)."""
    return sum(1 for d in E_minus if d.present and not field(point[d.var_index()]))


def t_value(bo: BasicObject, point, E_minus: list[Divisor], check: bool = True) -> tuple[Fraction, int]:
    return (w_ord(bo, point, check), n_count(E_minus, point, bo.ring.field))


def birth_index(values) -> int:
    """Smallest r with values[r] == values[r+1] == ... == values[-1]."""
    values = list(values)
    if not values:
        raise PreconditionError("empty sequence")
    r = len(values) - 1
    while r > 0 and values[r - 1] == values[-1]:
        r -= 1
    return r


def drop_index(values) -> int:
    """s0: first index of the final constant run (where the maximum last dropped)."""
    return birth_index(values)


# maxima and the simple couples ------------------------------------------------------------


def h_product(E_minus_polys, h: int, m: int) -> list[Poly]:
    """prod over h-subsets F of E^- of sum_{H in F} I(H)^m; None-like [] when h == 0."""
    if h == 0:
        return []
    polys = list(E_minus_polys)
    ring = polys[0].ring
    out = [ring.one()]
    for F in combinations(polys, h):
        summand = [p**m for p in F]
        out = groebner([a * b for a in out for b in summand], ring=ring)
    return list(out)


def simple_from_word(Jbar, J, b: int, d: int) -> Couple:
    """Couple whose Sing is the locus where w-ord reaches d/b."""
    if d <= 0:
        raise PreconditionError("max w-ord is zero: monomial case")
    if d >= b:
        return Couple(tuple(Jbar), d)
    return Couple(tuple(ideal_power(J, d)) + tuple(ideal_power(Jbar, b)), b * d)


def simple_from_t(Jpp: Couple, E_minus_polys, h: int) -> Couple:
    """(J'' + H_h(b''), b''): Sing is the locus where t reaches its maximum (d/b, h)."""
    if h == 0:
        return Jpp
    return Couple(Jpp.gens + tuple(h_product(E_minus_polys, h, Jpp.b)), Jpp.b)


@dataclass(frozen=True)
class LevelData:
    """Satellite data of one level at one step."""

    couple: Couple
    factorization: Factorization
    d: int
    h: int
    E_minus: tuple[str, ...]
    word_locus: Locus
    t_locus: Locus
    word_couple: Couple | None
    t_couple: Couple | None

    @property
    def max_word(self) -> Fraction:
        return Fraction(self.d, self.couple.b)

    @property
    def max_t(self) -> tuple[Fraction, int]:
        return (self.max_word, self.h)

    @property
    def monomial(self) -> bool:
        return self.d == 0


def max_residual_order(region: Locus, residual, cap: int | None = None) -> int:
    """Largest k such that the residual ideal has order >= k somewhere on the region."""
    if region.is_empty():
        raise PreconditionError("empty region has no maximum")
    ring = region.ring
    top = min(g.degree() for g in residual) if cap is None else cap
    k = 0
    while k < top:
        loc = region.intersect(Locus.of(ring, diff_extend_ideal(residual, k)))
        if loc.is_empty():
            break
        k += 1
    return k


def level_data(couple: Couple, exc: list[int], E_minus: list[Divisor], region: Locus) -> LevelData:
    """Max w-ord, max t, their loci and simple couples over ``region``.

    ``exc`` are the coordinate indices factored out of J; ``E_minus`` the
    hypersurfaces counted by the second coordinate of t.
    """
    ring = couple.ring
    fac = factor_exceptional(couple.gens, exc)
    d = max_residual_order(region, fac.residual)
    if d == 0:
        return LevelData(couple, fac, 0, 0, tuple(x.name for x in E_minus), region, region, None, None)
    word_locus = region.intersect(Locus.of(ring, diff_extend_ideal(fac.residual, d - 1)))
    present = [x for x in E_minus if x.present]
    h = 0
    for k in range(len(present), 0, -1):
        if any(
            not word_locus.intersect(Locus.of(ring, [x.poly for x in F])).is_empty()
            for F in combinations(present, k)
        ):
            h = k
            break
    wc = simple_from_word(fac.residual, couple.gens, couple.b, d)
    tc = simple_from_t(wc, [x.poly for x in present], h)
    if h:
        union = Locus.of(ring, h_product([x.poly for x in present], h, 1))
        t_locus = word_locus.intersect(union)
    else:
        t_locus = word_locus
    return LevelData(couple, fac, d, h, tuple(x.name for x in E_minus), word_locus, t_locus, wc, tc)


# the monomial case ------------------------------------------------------------------------


def gamma_rule(exps: dict[int, int], b: int, allowed) -> tuple[int, ...] | None:
    """Center choice for a monomial couple.

    ``exps`` maps the position of each exceptional hypersurface (its index in
    E, i.e. order of appearance) to b_i.  Among subsets F with sum b_i >= b
    accepted by ``allowed``: minimal |F|, then maximal sum, then the
    lexicographically largest position tuple (most recent hypersurfaces first).
    """
    positions = sorted(exps)
    best = None
    best_key = None
    for k in range(1, len(positions) + 1):
        for F in combinations(positions, k):
            total = sum(exps[i] for i in F)
            if total < b or not allowed(F):
                continue
            key = (total, tuple(sorted(F, reverse=True)))
            if best_key is None or key > best_key:
                best, best_key = F, key
        if best is not None:
            return best
    return None


@dataclass(frozen=True)
class MonomialStep:
    label: str
    center: tuple[str, ...]
    depth: int


@dataclass
class MonomialResult:
    steps: list[MonomialStep]
    leaves: list[BasicObject]

    @property
    def depth(self) -> int:
        return max((s.depth for s in self.steps), default=0)


def monomial_data(bo: BasicObject) -> tuple[dict[int, int], dict[int, int], int]:
    """(position -> b_i, position -> variable index, b) for the exceptional hypersurfaces present."""
    c = as_couple(bo.payload)
    pos_var = {p: d.var_index() for p, d in enumerate(bo.E) if d.present and d.exceptional}
    fac = factor_exceptional(c.gens, list(pos_var.values()))
    by_var = dict(fac.exponents)
    return {p: by_var[i] for p, i in pos_var.items()}, pos_var, c.b


def monomial_resolve(bo: BasicObject, max_depth: int = 200) -> MonomialResult:
    """Resolve a basic object whose max w-ord is 0 by the combinatorial center rule."""
    steps: list[MonomialStep] = []
    leaves: list[BasicObject] = []
    start_depth = bo.blowups

    def visit(node: BasicObject):
        sing = node.sing()
        if sing.is_empty():
            leaves.append(node)
            return
        c = as_couple(node.payload)
        exps, pos_var, b = monomial_data(node)
        fac = factor_exceptional(c.gens, list(pos_var.values()))
        if max_residual_order(sing, fac.residual) != 0:
            raise StateError(f"chart {node.label}: max w-ord is positive, not a monomial case")
        depth = node.blowups - start_depth
        if depth >= max_depth:
            raise StateError("monomial resolution exceeded its depth bound")
        ring = node.ring

        def allowed(F):
            loc = Locus.of(ring, [ring.var(pos_var[p]) for p in F], node.opens)
            return not loc.is_empty()

        F = gamma_rule(exps, b, allowed)
        if F is None:
            raise StateError(f"chart {node.label}: no monomial center found")
        center = tuple(ring.names[pos_var[p]] for p in F)
        steps.append(MonomialStep(node.label, center, depth + 1))
        for child in blowup(node, center):
            visit(child)

    visit(bo)
    return MonomialResult(steps, leaves)


def is_monomial_case(bo: BasicObject) -> bool:
    sing = bo.sing()
    if sing.is_empty():
        return False
    c = as_couple(bo.payload)
    fac = factor_exceptional(c.gens, exceptional_indices(bo))
    return max_residual_order(sing, fac.residual) == 0


__all__ = [
    "Factorization",
    "LevelData",
    "MonomialResult",
    "MonomialStep",
    "as_couple",
    "birth_index",
    "drop_index",
    "exp_i",
    "exceptional_indices",
    "factor_exceptional",
    "gamma_rule",
    "h_product",
    "is_monomial_case",
    "level_data",
    "max_residual_order",
    "monomial_data",
    "monomial_resolve",
    "n_count",
    "simple_from_t",
    "simple_from_word",
    "t_value",
    "w_ord",
]
