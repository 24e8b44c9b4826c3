from __future__ import annotations

import json
from fractions import Fraction

import pytest

from reeswb.charts import make_basic_object, substitute_payload
from reeswb.diff import diff_saturate
from reeswb.driver import (
    IDENTITY_PROVIDER,
    EliminationProvider,
    ProviderEntry,
    RestrictionProvider,
    elimination_checks,
    gamma_padded,
    resolve,
    restriction_entry,
)
from reeswb.errors import ProviderError
from reeswb.poly import INF
from reeswb.rees import ord_rees, rees_from_couple, sing_rees
from reeswb.scenario import load_scenario, shipped

from conftest import P, couple, obj, rees, ring

F = Fraction


def _gammas(trace):
    return {r.chart: r.gamma for r in trace.records if r.gamma}


def _shipped(name, char=None):
    sc = load_scenario(shipped(name), char)
    return sc.obj, EliminationProvider.from_json(sc.provider_path)


def test_gamma_padding_orders_lexicographically():
    a = gamma_padded([(F(1), 0)], 3)
    b = gamma_padded([(F(1), 0), (F(3, 2), 0)], 3)
    assert a[1] == (INF, INF) and b < a


def test_cusp_resolves_in_one_blowup():
    bo, prov = _shipped("cusp")
    trace = resolve(bo, prov)
    assert trace.status == "resolved" and trace.blowups == 1 and trace.exit_code == 0
    root = trace.records[0]
    assert root.center == ("x", "y")
    assert root.gamma == ((F(1), 0), (F(3, 2), 0))
    assert [l.chart for l in trace.leaves] == ["root:x", "root:y"]


def test_cusp_char3_elimination_data_differs():
    bo, prov = _shipped("cusp_f3")
    trace = resolve(bo, prov)
    assert trace.status == "resolved"
    (entry,) = prov.entries.values()
    assert entry.gens == (("x^3", 1), ("x^3", 2))


def test_trivial_input_has_trivial_trace():
    R = ring("x y")
    trace = resolve(obj(R, "x", b=2))
    assert trace.status == "resolved" and trace.blowups == 0 and len(trace.records) == 1


def test_umbrella_hand_computed_gamma():
    bo, prov = _shipped("umbrella")
    trace = resolve(bo, prov)
    assert trace.blowups == 4 and trace.status == "e_monomial"
    g = _gammas(trace)
    inf = (INF, INF)
    assert g["root"] == ((F(1), 0), (F(3, 2), 0), (F(1), 0))
    assert g["root:y"] == ((F(1), 0), (F(1, 2), 1), (F(1), 0))
    assert g["root:z"] == ((F(1), 0), (F(1), 1), (F(1), 0))
    assert g["root:z:z"] == ((F(1), 0), (F(1), 0), inf)
    assert g["root:z:y"] == ((F(1), 0), (F(0), 0), inf)
    by = {r.chart: r for r in trace.records}
    assert by["root:z:z"].center == ("x", "y")
    assert by["root:z:y"].status == "e_monomial"


def test_gamma_drops_along_every_path():
    for name in ["cusp", "umbrella"]:
        bo, prov = _shipped(name)
        trace = resolve(bo, prov)
        for recs in trace.paths().values():
            values = [r.gamma for r in recs if r.gamma]
            assert all(a > b for a, b in zip(values, values[1:]))
            ts = [r.max_t for r in recs if r.max_t is not None]
            assert all(a >= b for a, b in zip(ts, ts[1:]))


def test_resolution_is_deterministic():
    bo, prov = _shipped("umbrella")
    a = json.dumps(resolve(bo, prov).to_json())
    b = json.dumps(resolve(bo, prov).to_json())
    assert a == b


def test_codimension_one_center_needs_no_table():
    R = ring("x y")
    trace = resolve(obj(R, "x", b=1), IDENTITY_PROVIDER)
    root = trace.records[0]
    assert root.center == ("x",) and root.gamma == ((F(1), 0), (INF, INF))
    assert trace.status == "resolved" and trace.blowups == 1


def test_missing_table_is_a_provider_gap():
    bo, _ = _shipped("umbrella")
    trace = resolve(bo, IDENTITY_PROVIDER)
    assert trace.status == "provider_gap" and trace.exit_code == 3
    assert trace.provider_gaps == [{"chart": "root", "step": 0, "level": 1}]


def test_budget_exhaustion_is_flagged():
    bo, prov = _shipped("umbrella")
    trace = resolve(bo, prov, max_steps=1)
    assert trace.status == "budget" and trace.exit_code == 2 and trace.blowups == 1


def test_shipped_tables_match_the_builder():
    for name in ["cusp", "cusp_f3", "umbrella"]:
        bo, prov = _shipped(name)
        built = RestrictionProvider()
        resolve(bo, built)
        assert built.to_json() == prov.to_json()


def _cusp_attached():
    R = ring("x y")
    return R, diff_saturate(rees(R, ("y^2 - x^3", 2)))


def test_elimination_checks_accept_and_reject():
    R, g = _cusp_attached()
    sing = sing_rees(g)
    good = ProviderEntry("root", 0, 1, ("y",), (("x^2", 1), ("x^3", 2)))
    assert elimination_checks(g, good, sing) == []
    wrong_fiber = ProviderEntry("root", 0, 1, ("x",), (("y^2", 1),))
    failed = elimination_checks(g, wrong_fiber, sing)
    assert "transversality" in failed and "generators_involve_fiber" not in failed
    too_big = ProviderEntry("root", 0, 1, ("y",), (("x", 1),))
    assert "pullback_containment" in elimination_checks(g, too_big, sing)
    uses_fiber = ProviderEntry("root", 0, 1, ("y",), (("y", 1),))
    assert "generators_involve_fiber" in elimination_checks(g, uses_fiber, sing)


def test_bad_table_raises_provider_error():
    bo, _ = _shipped("cusp")
    bad = EliminationProvider([ProviderEntry("root", 0, 1, ("x",), (("y^2", 1),))])
    with pytest.raises(ProviderError) as err:
        resolve(bo, bad)
    assert err.value.key == ("root", 0, 1)


def test_provider_independence_on_shared_probes():
    """Two transversal projections of the umbrella's attached algebra give the same ord downstairs."""
    R = ring("x y z")
    A = diff_saturate(rees_from_couple(couple(R, "x^2 - y^2*z", b=2)))
    e1 = restriction_entry("root", 0, 1, A, [0])
    # linear change y -> y + x: the fiber of dropping x is now the old direction (1, 1, 0)
    images = [P("x", R), P("y + x", R), P("z", R)]
    A2 = substitute_payload(A, images)
    e2 = restriction_entry("root", 0, 1, A2, [0])
    # fiber direction of the second projection in the old coordinates
    direction = tuple(int(f.hasse((1, 0, 0)).constant_term()) for f in images)
    assert direction == (1, 1, 0)
    sing = sing_rees(A)
    sing2 = sing_rees(A2)
    assert elimination_checks(A, e1, sing) == [] and elimination_checks(A2, e2, sing2) == []
    g1, g2 = e1.algebra(R), e2.algebra(R)
    for c in range(-2, 3):
        pt = (0, 0, c)
        assert ord_rees(g1, pt) == ord_rees(g2, pt)


def test_provider_json_roundtrip(tmp_path):
    prov = EliminationProvider([ProviderEntry("root", 0, 1, ("y",), (("x^2", 1),))])
    path = tmp_path / "t.json"
    path.write_text(json.dumps(prov.to_json()))
    again = EliminationProvider.from_json(path)
    assert again.to_json() == prov.to_json()
    legacy = EliminationProvider.from_json({"entries": [{"chart": "root", "step": 0, "fiber": ["y"], "gens": [["x^2", 1]]}]})
    assert legacy.lookup("root", 0, 1) is not None


def test_rees_payload_scenario_resolves():
    R = ring("x y")
    bo = make_basic_object(rees(R, ("y^2 - x^3", 2)))
    trace = resolve(bo, RestrictionProvider())
    assert trace.status == "resolved" and trace.blowups == 1
