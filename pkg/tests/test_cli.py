from __future__ import annotations

import json

import pytest

from reeswb.cli import main
from reeswb.errors import ParseError
from reeswb.rees import Couple, ReesAlgebra
from reeswb.scenario import format_payload, load_scenario, parse_payload_text, shipped, split_top

from conftest import P, ring


def test_payload_text_forms():
    R = ring("x y")
    c = parse_payload_text("couple{ gens: [y^2 - x^3, x*y], b: 2 }", R)
    assert isinstance(c, Couple) and c.b == 2 and c.gens == (P("y^2 - x^3", R), P("x*y", R))
    g = parse_payload_text("rees{ gens: [(x, 1), (y^2 - x^3, 2)] }", R)
    assert isinstance(g, ReesAlgebra) and len(g.gens) == 2
    assert parse_payload_text(format_payload(c), R) == c
    assert parse_payload_text(format_payload(g), R) == g


@pytest.mark.parametrize("bad", ["couple{ gens: [x] }", "ideal{ gens: [x] }", "rees{ gens: [(x 1)] }", "couple{ gens: [x, b: 2 }"])
def test_payload_text_errors(bad):
    with pytest.raises((ParseError, ValueError)):
        parse_payload_text(bad, ring("x y"))


def test_split_top_respects_brackets():
    assert split_top("a, (b, c), [d, e]") == ["a", "(b, c)", "[d, e]"]


def test_load_scenario_dict_and_char_override():
    sc = load_scenario(
        {"field": "Q", "vars": ["x", "y"], "payload": {"couple": {"gens": ["y^2 - x^3"], "b": 2}}, "E": ["x"]}, char=5
    )
    assert sc.ring.field.p == 5
    assert [d.name for d in sc.obj.E] == ["x"]
    sc = load_scenario(shipped("cusp"))
    assert sc.provider_path.exists() and sc.other is not None


def _run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_resolve_writes_json_and_figure(tmp_path, capsys):
    out = tmp_path / "cusp.json"
    code, _ = _run(capsys, "resolve", str(shipped("cusp")), "--out", str(out))
    assert code == 0
    data = json.loads(out.read_text())
    assert data["status"] == "resolved" and data["blowups"] == 1
    png = tmp_path / "cusp.png"
    assert png.exists() and png.read_bytes()[:4] == b"\x89PNG"


def test_trace_records(capsys):
    code, out = _run(capsys, "trace", str(shipped("cusp")))
    assert code == 0
    recs = json.loads(out)
    assert set(recs[0]) == {"step", "chart", "max_word", "max_t", "E_minus", "exponents"}
    assert recs[0]["max_word"] == "1" and recs[0]["max_t"] == ["1", 0]


def test_trace_is_char_independent_for_the_cusp(capsys):
    _, a = _run(capsys, "trace", str(shipped("cusp")))
    _, b = _run(capsys, "trace", str(shipped("cusp")), "--char", "5")
    assert a == b


def test_resolve_exit_codes(tmp_path, capsys):
    code, _ = _run(capsys, "resolve", str(shipped("umbrella")), "--max-steps", "1")
    assert code == 2
    empty = tmp_path / "empty.json"
    empty.write_text('{"entries": []}')
    code, out = _run(capsys, "resolve", str(shipped("umbrella")), "--provider", str(empty))
    assert code == 3 and json.loads(out)["status"] == "provider_gap"


def test_diffsat_output_is_sorted(capsys):
    code, out = _run(capsys, "diffsat", str(shipped("cusp")))
    assert code == 0
    assert json.loads(out)["gens"] == [["y", 1], ["x^2", 1], ["x^3 - y^2", 2]]


def test_tau_command(capsys):
    code, out = _run(capsys, "tau", str(shipped("cone_xy")), "--point", "0,0,0")
    assert code == 0
    assert json.loads(out) == {"tau": 2, "linear_forms": ["X", "Y"], "flagged_generators": []}


def test_equiv_fuzz_command(capsys):
    code, out = _run(capsys, "equiv-fuzz", str(shipped("cusp")), "--depth", "2")
    assert code == 0 and json.loads(out)["verdict"] == "no_violation"


def test_build_provider_reproduces_shipped_table(tmp_path, capsys):
    out = tmp_path / "p.json"
    code, _ = _run(capsys, "build-provider", str(shipped("umbrella")), "--out", str(out))
    assert code == 0
    assert json.loads(out.read_text()) == json.loads(shipped("umbrella_provider").read_text())


def test_bad_scenario_reports_error(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"vars": ["x"], "payload": "couple{ gens: [z], b: 1 }"}')
    assert main(["resolve", str(bad)]) == 1
