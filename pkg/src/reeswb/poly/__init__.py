"""Exact polynomial arithmetic over QQ and F_p with Groebner-basis ideal queries."""

from .field import QQ, Field, rank, row_echelon
from .groebner import (
    eliminate,
    groebner,
    ideal_member,
    ideal_product,
    ideals_equal,
    is_unit_ideal,
    normal_form,
    order_key,
    radical_member,
    radicals_equal,
    saturate,
)
from .parser import parse_poly
from .polynomial import INF, Poly, Ring, hasse_span, multi_indices

__all__ = [
    "INF",
    "QQ",
    "Field",
    "Poly",
    "Ring",
    "eliminate",
    "groebner",
    "hasse_span",
    "ideal_member",
    "ideal_product",
    "ideals_equal",
    "is_unit_ideal",
    "multi_indices",
    "normal_form",
    "order_key",
    "parse_poly",
    "radical_member",
    "radicals_equal",
    "rank",
    "row_echelon",
    "saturate",
]
