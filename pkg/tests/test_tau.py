from __future__ import annotations

from itertools import product

import pytest

from reeswb.diff import diff_saturate
from reeswb.errors import PreconditionError
from reeswb.poly import Poly, ideals_equal
from reeswb.rees import rees_from_couple
from reeswb.tau import (
    codim_type_at_least,
    graded_diff_closure,
    graded_ring,
    initial_ideal,
    ridge_and_tau,
    tau,
    transversal,
)

from conftest import P, couple, rees, ring


def test_initial_ideal_examples():
    R = ring("x y")
    gr = graded_ring(R)
    assert initial_ideal(rees(R, ("y^2 - x^3", 2)), (0, 0)) == [P("Y^2", gr)]
    assert initial_ideal(rees(R, ("x", 1)), (0, 0)) == [P("X", gr)]
    assert initial_ideal(rees(R, ("x^3", 2)), (0, 0)) == []


def test_graded_closure_examples():
    for p, expect in [(0, {"Y^2", "Y"}), (2, {"Y^2"})]:
        gr = graded_ring(ring("x y", p))
        assert {str(f) for f in graded_diff_closure([P("Y^2", gr)])} == expect
    gr = graded_ring(ring("x y"))
    assert ideals_equal(graded_diff_closure([P("X*Y", gr)]), [P("X", gr), P("Y", gr)])


def test_cone_xy_has_z_axis_translations():
    R = ring("x y z")
    ridge = ridge_and_tau(rees_from_couple(couple(R, "x*y", b=2)), (0, 0, 0))
    assert ridge.tau == 2
    assert {str(f) for f in ridge.linear_forms} == {"X", "Y"}


def test_order_above_one_gives_full_translation_space():
    R = ring("x y z")
    assert tau(rees_from_couple(couple(R, "x*y", b=1)), (0, 0, 0)) == 0
    assert tau(rees_from_couple(couple(R, "x*y", "z", b=1)), (0, 0, 0)) == 1


@pytest.mark.parametrize("p", [0, 2, 3])
def test_cusp_tau_is_one(p):
    R = ring("x y", p)
    g = rees(R, ("y^2 - x^3", 2))
    ridge = ridge_and_tau(g, (0, 0), check_saturation=True)
    assert ridge.tau == 1
    assert [str(f) for f in ridge.linear_forms] == ["Y"]


def test_tau_requires_a_singular_point():
    R = ring("x y")
    with pytest.raises(PreconditionError):
        tau(rees(R, ("y^2 - x^3", 2)), (1, 1))


def test_codim_type():
    R = ring("x y")
    assert codim_type_at_least(rees(R, ("x", 1)), 1, [(0, 0), (0, 2)])
    assert not codim_type_at_least(rees(R, ("y^2 - x^3", 2)), 2, [(0, 0)])


def test_transversality_on_the_cusp_algebra():
    R = ring("x y")
    g = diff_saturate(rees(R, ("y^2 - x^3", 2)))
    assert transversal(g, [1], (0, 0))
    assert not transversal(g, [0], (0, 0))
    R3 = ring("x y z")
    full = rees_from_couple(couple(R3, "x*y", b=1))
    assert not transversal(full, [0], (0, 0, 0))


def _cone_points(forms, p, n):
    return {pt for pt in product(range(p), repeat=n) if all(not f.evaluate(pt) for f in forms)}


@pytest.mark.parametrize("gens,b", [(("x*y",), 2), (("y^2 - x^3",), 2), (("x*y", "z^2"), 2), (("x^2 + y*z",), 2)])
def test_translation_space_against_brute_force_over_f5(gens, b):
    """Oracle: vectors v of F_5^3 with C + v = C, compared with the points of L_C."""
    p = 5
    R = ring("x y z", p)
    g = rees_from_couple(couple(R, *gens, b=b))
    ridge = ridge_and_tau(g, (0, 0, 0))
    forms = initial_ideal(g, (0, 0, 0))
    C = _cone_points(forms, p, 3)
    translations = {
        v for v in product(range(p), repeat=3) if {tuple((a + c) % p for a, c in zip(pt, v)) for pt in C} == C
    }
    L = _cone_points(ridge.linear_forms, p, 3)
    assert translations == L
    assert len(L) == p ** (3 - ridge.tau)
    assert isinstance(ridge.linear_forms[0], Poly) if ridge.linear_forms else True
