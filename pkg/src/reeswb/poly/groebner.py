"""Buchberger's algorithm and the ideal-theoretic queries built on it."""

from __future__ import annotations

from functools import lru_cache
from ..errors import RingMismatch
from .polynomial import Poly, Ring

ORDERS = ("grevlex", "grlex", "lex")


def _grevlex(e):
    return (sum(e), tuple(-k for k in reversed(e)))


def _grlex(e):
    return (sum(e), e)


def _lex(e):
    return e


def order_key(order: str = "grevlex", block: int = 0):
    """Sort key for exponent tuples; larger key means larger monomial.

    ``block > 0`` gives an elimination order: lex on the first ``block``
    exponents' total degree and grevlex within each block.
    """
    base = {"grevlex": _grevlex, "grlex": _grlex, "lex": _lex}[order]
    if not block:
        return base
    return lambda e: (_grevlex(e[:block]), base(e[block:]))


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


class _GB:
    """Working state of Buchberger's algorithm on raw term dicts."""

    def __init__(self, ring: Ring, key):
        self.ring = ring
        self.f = ring.field
        self.key = key
        self.polys: list[dict] = []
        self.lms: list[tuple] = []

    def lead(self, t: dict):
        return max(t, key=self.key)

    def monic(self, t: dict) -> dict:
        lm = self.lead(t)
        inv = self.f.inv(t[lm])
        return {e: self.f.mul(c, inv) for e, c in t.items()}

    def reduce(self, t: dict, full: bool = True) -> dict:
        """Remainder of ``t`` on division by the current basis."""
        f = self.f
        t = dict(t)
        rem: dict = {}
        while t:
            m = self.lead(t)
            c = t[m]
            for g, lm in zip(self.polys, self.lms):
                if _divides(lm, m):
                    shift = tuple(a - b for a, b in zip(m, lm))
                    for e, v in g.items():
                        e2 = tuple(a + b for a, b in zip(e, shift))
                        nv = f.sub(t.get(e2, f.zero), f.mul(c, v))
                        if nv:
                            t[e2] = nv
                        else:
                            t.pop(e2, None)
                    break
            else:
                if not full:
                    rem.update(t)
                    return rem
                rem[m] = c
                del t[m]
        return rem

    def spoly(self, i, j) -> dict:
        f = self.f
        g, h = self.polys[i], self.polys[j]
        l = _lcm(self.lms[i], self.lms[j])
        s1 = tuple(a - b for a, b in zip(l, self.lms[i]))
        s2 = tuple(a - b for a, b in zip(l, self.lms[j]))
        t: dict = {}
        for e, c in g.items():
            t[tuple(a + b for a, b in zip(e, s1))] = c
        for e, c in h.items():
            e2 = tuple(a + b for a, b in zip(e, s2))
            v = f.sub(t.get(e2, f.zero), c)
            if v:
                t[e2] = v
            else:
                t.pop(e2, None)
        return t

    def run(self, gens: list[dict], stop_on_unit: bool = False):
        zero = (0,) * self.ring.nvars
        pairs: list[tuple[int, int]] = []
        for t in gens:
            r = self.reduce(t)
            if r:
                self._add(self.monic(r), pairs)
                if stop_on_unit and zero in self.polys[-1] and len(self.polys[-1]) == 1:
                    return
        while pairs:
            pairs.sort(key=lambda ij: self.key(_lcm(self.lms[ij[0]], self.lms[ij[1]])))
            i, j = pairs.pop(0)
            if self._skip(i, j, pairs):
                continue
            r = self.reduce(self.spoly(i, j))
            if r:
                self._add(self.monic(r), pairs)
                if stop_on_unit and self.lms[-1] == zero:
                    return

    def _skip(self, i, j, pairs) -> bool:
        a, b = self.lms[i], self.lms[j]
        if all(not (x and y) for x, y in zip(a, b)):
            return True
        l = _lcm(a, b)
        for k, m in enumerate(self.lms):
            if k in (i, j) or not _divides(m, l):
                continue
            p1 = (min(i, k), max(i, k))
            p2 = (min(j, k), max(j, k))
            if p1 not in pairs and p2 not in pairs:
                return True
        return False

    def _add(self, t: dict, pairs):
        n = len(self.polys)
        self.polys.append(t)
        self.lms.append(self.lead(t))
        pairs.extend((i, n) for i in range(n))

    def reduced(self) -> list[dict]:
        keep = [
            i
            for i, lm in enumerate(self.lms)
            if not any(
                j != i and _divides(m, lm) and (m != lm or j < i) for j, m in enumerate(self.lms)
            )
        ]
        basis = [self.polys[i] for i in keep]
        out = []
        for i, g in enumerate(basis):
            self.polys = basis[:i] + basis[i + 1 :]
            self.lms = [self.lead(h) for h in self.polys]
            lm = self.lead(g)
            tail = {e: c for e, c in g.items() if e != lm}
            r = self.reduce(tail)
            r[lm] = g[lm]
            out.append(r)
        out.sort(key=lambda t: self.key(self.lead(t)))
        return out


@lru_cache(maxsize=4096)
def _groebner_cached(ring: Ring, gens: tuple, order: str, block: int):
    key = order_key(order, block)
    st = _GB(ring, key)
    st.run([dict(g) for g in gens])
    return tuple(Poly._raw(ring, t) for t in st.reduced())


def _frozen(polys) -> tuple:
    return tuple(tuple(sorted(p.terms.items())) for p in polys if p)


def _common_ring(polys) -> Ring:
    rings = {p.ring for p in polys}
    if len(rings) != 1:
        raise RingMismatch("generators live in different rings")
    return rings.pop()


def groebner(gens, order: str = "grevlex", ring: Ring | None = None, block: int = 0) -> list[Poly]:
    """Reduced Groebner basis (monic, sorted ascending by leading monomial)."""
    gens = [g for g in gens if g]
    if not gens:
        return []
    ring = ring or _common_ring(gens)
    return list(_groebner_cached(ring, _frozen(gens), order, block))


def normal_form(f: Poly, gb: list[Poly], order: str = "grevlex", block: int = 0) -> Poly:
    st = _GB(f.ring, order_key(order, block))
    st.polys = [g.terms for g in gb]
    st.lms = [st.lead(g.terms) for g in gb]
    return Poly._raw(f.ring, st.reduce(f.terms))


def ideal_member(f: Poly, gens) -> bool:
    if not f:
        return True
    gb = groebner(list(gens), ring=f.ring)
    return not normal_form(f, gb)


def is_unit_ideal(gens) -> bool:
    gens = [g for g in gens if g]
    if not gens:
        return False
    if any(g.is_constant() for g in gens):
        return True
    return _unit_cached(_common_ring(gens), _frozen(gens))


@lru_cache(maxsize=8192)
def _unit_cached(ring: Ring, gens: tuple) -> bool:
    st = _GB(ring, order_key("grevlex"))
    st.run([dict(g) for g in gens], stop_on_unit=True)
    zero = (0,) * ring.nvars
    return zero in st.lms


def radical_member(f: Poly, gens) -> bool:
    """f in rad(J) iff 1 in J + (1 - t f) in one extra variable."""
    gens = [g for g in gens if g]
    if not f:
        return True
    if not gens:
        return False
    ring = f.ring
    big = ring.extend(("_rabinowitsch",))
    t = big.var(ring.nvars)
    lifted = [g.embed(big, list(range(ring.nvars))) for g in gens]
    fl = f.embed(big, list(range(ring.nvars)))
    return is_unit_ideal(lifted + [big.one() - t * fl])


def ideals_equal(a, b) -> bool:
    a = [g for g in a if g]
    b = [g for g in b if g]
    if not a or not b:
        return not a and not b
    return groebner(a) == groebner(b)


def radicals_equal(a, b) -> bool:
    return all(radical_member(g, a) for g in b if g) and all(radical_member(g, b) for g in a if g)


def eliminate(gens, names_to_drop: list[str]) -> list[Poly]:
    """Generators of J intersected with the subring of the remaining variables."""
    gens = [g for g in gens if g]
    if not gens:
        return []
    ring = gens[0].ring
    drop = [ring.index(n) for n in names_to_drop]
    keep = [i for i in range(ring.nvars) if i not in drop]
    order = drop + keep
    big = Ring(ring.field, tuple(ring.names[i] for i in order))
    pos = [order.index(i) for i in range(ring.nvars)]
    moved = [g.embed(big, pos) for g in gens]
    gb = groebner(moved, block=len(drop))
    small = Ring(ring.field, tuple(ring.names[i] for i in keep))
    out = []
    for g in gb:
        if all(not any(e[: len(drop)]) for e in g.terms):
            out.append(Poly(small, {e[len(drop):]: c for e, c in g.terms.items()}))
    return out


def saturate(gens, g: Poly) -> list[Poly]:
    """J : g^infinity, computed as (J + (1 - t g)) intersected with the original ring."""
    gens = [h for h in gens if h]
    if not gens:
        return []
    ring = g.ring
    if g.is_constant():
        return groebner(gens) if g else [ring.one()]
    big = ring.extend(("_sat",))
    n = ring.nvars
    lifted = [h.embed(big, list(range(n))) for h in gens]
    t = big.var(n)
    elim = eliminate(lifted + [big.one() - t * g.embed(big, list(range(n)))], ["_sat"])
    return [Poly(ring, h.terms) for h in elim]


def ideal_product(a, b) -> list[Poly]:
    return [x * y for x in a for y in b]
