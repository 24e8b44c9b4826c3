from __future__ import annotations

from reeswb.diff import (
    algebras_equal_up_to,
    diff_saturate,
    is_diff_algebra,
    is_relative_diff_algebra,
    saturation_candidates,
)
from reeswb.rees import degree_member, sing_rees

from conftest import P, rees, ring


def _as_set(g):
    return {(str(f), n) for f, n in g.gens}


def test_saturation_of_a_saturated_algebra_is_itself():
    R = ring("x y")
    assert _as_set(diff_saturate(rees(R, ("x", 1)))) == {("x", 1)}


def test_cusp_saturation_char0():
    R = ring("x y")
    g = diff_saturate(rees(R, ("y^2 - x^3", 2)))
    for f, n in [("y^2 - x^3", 2), ("y^2 - x^3", 1), ("y", 1), ("x^2", 1)]:
        assert degree_member(P(f, R), g, n)
    assert _as_set(g) == {("y", 1), ("x^2", 1), ("x^3 - y^2", 2)}


def test_cusp_saturation_char3_loses_x_squared():
    R = ring("x y", 3)
    g = diff_saturate(rees(R, ("y^2 - x^3", 2)))
    assert degree_member(P("y", R), g, 1)
    assert not degree_member(P("x^2", R), g, 1)
    assert degree_member(P("y^2 - x^3", R), g, 1)


def test_is_diff_algebra_examples():
    R = ring("x y")
    cusp = rees(R, ("y^2 - x^3", 2))
    assert not is_diff_algebra(cusp)
    assert is_diff_algebra(diff_saturate(cusp))
    assert not is_diff_algebra(rees(R, ("x", 1), ("x", 2)))


def test_relative_diff_examples():
    R = ring("x y")
    # I_2 must lie in I_1, so (y^2 - x^3) W is needed as well
    assert not is_relative_diff_algebra(rees(R, ("y", 1), ("y^2 - x^3", 2)), [1])
    closed_in_y = rees(R, ("y", 1), ("y^2 - x^3", 1), ("y^2 - x^3", 2))
    assert is_relative_diff_algebra(closed_in_y, [1])
    assert not is_diff_algebra(closed_in_y)
    assert not is_relative_diff_algebra(rees(R, ("y^2 - x^3", 2)), [1])
    g = diff_saturate(rees(R, ("y^2 - x^3", 2)))
    assert is_relative_diff_algebra(g, [0]) and is_relative_diff_algebra(g, [0, 1])


def test_algebras_equal_up_to_examples():
    R = ring("x y")
    g = rees(R, ("x", 1), ("y", 2))
    assert algebras_equal_up_to(g, g, 4)
    assert not algebras_equal_up_to(rees(R, ("x", 1)), rees(R, ("x^2", 2)), 1)
    s = diff_saturate(rees(R, ("y^2 - x^3", 2)))
    assert algebras_equal_up_to(s, diff_saturate(s), 4)


def test_candidates_contain_the_original_generators():
    R = ring("x y")
    g = rees(R, ("y^2 - x^3", 2))
    cands = saturation_candidates(g)
    assert any(n == 2 for _, n in cands)
    assert sing_rees(diff_saturate(g)).same_as(sing_rees(g))
