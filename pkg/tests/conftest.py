from __future__ import annotations

from itertools import product

from hypothesis import settings

from reeswb.charts import make_basic_object
from reeswb.poly import Field, Ring, parse_poly
from reeswb.rees import Couple, ReesAlgebra

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def ring(names="x y", p=0) -> Ring:
    return Ring(Field(p), tuple(names.split()))


def P(text, R):
    return parse_poly(text, R)


def couple(R, *gens, b):
    return Couple(tuple(P(g, R) for g in gens), b)


def rees(R, *pairs):
    return ReesAlgebra(tuple((P(f, R), n) for f, n in pairs))


def obj(R, *gens, b, boundary=(), exceptional=()):
    return make_basic_object(couple(R, *gens, b=b), boundary, exceptional)


def brute_sing(gens_weights, R) -> set:
    """Oracle: all F_p points where every generator f W^n has order >= n, computed by translating."""
    p = R.field.p
    out = set()
    for pt in product(range(p), repeat=R.nvars):
        if all(f.order_at(pt) >= n for f, n in gens_weights):
            out.add(pt)
    return out
