"""Scenario files: a field, coordinates, a couple or Rees algebra, and a boundary.

A scenario is a JSON object::

    {
      "field": "Q",                      # or "F5", "GF(3)", or an integer characteristic
      "vars": ["x", "y"],
      "payload": "couple{ gens: [y^2 - x^3], b: 2 }",
      "E": {"boundary": [], "exceptional": []},
      "provider": "cusp_provider.json",  # optional, relative to the scenario file
      "other": "couple{ gens: [(y^2 - x^3)^2], b: 4 }",   # optional, for equiv-fuzz
      "point": [0, 0]                    # optional, default point for tau
    }

Payloads may also be given as JSON: ``{"couple": {"gens": [...], "b": 2}}``
or ``{"rees": {"gens": [["f", 1], ...]}}``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path

from .charts import BasicObject, make_basic_object
from .errors import ParseError
from .poly import Field, Ring, parse_poly
from .rees import Couple, ReesAlgebra

_HEAD = re.compile(r"^\s*(couple|rees)\s*\{(.*)\}\s*$", re.S)


def split_top(text: str, sep: str = ",") -> list[str]:
    """Split on ``sep`` outside of (), [] and {}."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
            if depth < 0:
                raise ParseError(f"unbalanced brackets in {text!r}")
        if ch == sep and depth == 0:
            out.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    if depth:
        raise ParseError(f"unbalanced brackets in {text!r}")
    tail = "".join(cur).strip()
    if tail:
        out.append(tail)
    return out


def _strip(text: str, left: str, right: str) -> str:
    text = text.strip()
    if not (text.startswith(left) and text.endswith(right)):
        raise ParseError(f"expected {left}...{right}, got {text!r}")
    return text[1:-1]


def parse_payload_text(text: str, ring: Ring) -> Couple | ReesAlgebra:
    """Parse ``couple{ gens: [...], b: 2 }`` or ``rees{ gens: [(f, n), ...] }``."""
    m = _HEAD.match(text)
    if not m:
        raise ParseError(f"payload must be couple{{...}} or rees{{...}}: {text!r}")
    kind, body = m.groups()
    fields = {}
    for item in split_top(body):
        key, sep, value = item.partition(":")
        if not sep:
            raise ParseError(f"expected key: value, got {item!r}")
        fields[key.strip()] = value.strip()
    if "gens" not in fields:
        raise ParseError("payload needs gens")
    items = split_top(_strip(fields["gens"], "[", "]"))
    if kind == "couple":
        if "b" not in fields:
            raise ParseError("couple needs b")
        return Couple(tuple(parse_poly(g, ring) for g in items), int(fields["b"]))
    gens = []
    for item in items:
        f, n = split_top(_strip(item, "(", ")"))
        gens.append((parse_poly(f, ring), int(n)))
    return ReesAlgebra(tuple(gens))


def parse_payload(data, ring: Ring) -> Couple | ReesAlgebra:
    if isinstance(data, str):
        return parse_payload_text(data, ring)
    if "couple" in data:
        c = data["couple"]
        return Couple(tuple(parse_poly(g, ring) for g in c["gens"]), int(c["b"]))
    if "rees" in data:
        return ReesAlgebra(tuple((parse_poly(f, ring), int(n)) for f, n in data["rees"]["gens"]))
    raise ParseError("payload needs a 'couple' or 'rees' key")


def format_payload(payload) -> str:
    if isinstance(payload, Couple):
        return "couple{ gens: [" + ", ".join(str(g) for g in payload.gens) + f"], b: {payload.b} }}"
    return "rees{ gens: [" + ", ".join(f"({f}, {n})" for f, n in payload.gens) + "] }"


@dataclass
class Scenario:
    ring: Ring
    obj: BasicObject
    other: BasicObject | None = None
    provider_path: Path | None = None
    point: tuple | None = None
    source: Path | None = None


def _boundary(E) -> tuple[list[str], list[str]]:
    if E is None:
        return [], []
    if isinstance(E, list):
        return list(E), []
    return list(E.get("boundary", [])), list(E.get("exceptional", []))


def load_scenario(source, char: int | None = None) -> Scenario:
    """Load a scenario from a path or an already parsed dict; ``char`` overrides the field."""
    path = None
    if isinstance(source, (str, Path)):
        path = Path(source)
        try:
            data = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: {exc}") from exc
    else:
        data = source
    field = Field(char) if char is not None else Field.parse(data.get("field", "Q"))
    ring = Ring(field, tuple(data["vars"]))
    boundary, exceptional = _boundary(data.get("E"))
    obj = make_basic_object(parse_payload(data["payload"], ring), boundary, exceptional)
    other = None
    if data.get("other") is not None:
        other = make_basic_object(parse_payload(data["other"], ring), boundary, exceptional)
    provider = None
    if data.get("provider"):
        provider = Path(data["provider"])
        if path is not None and not provider.is_absolute():
            provider = path.parent / provider
    point = tuple(data["point"]) if data.get("point") is not None else None
    return Scenario(ring, obj, other, provider, point, path)


SCENARIO_DIR = Path(__file__).parent / "scenarios"


def shipped(name: str) -> Path:
    """Path of a scenario shipped with the package (``cusp``, ``umbrella``, ...)."""
    p = SCENARIO_DIR / (name if name.endswith(".json") else name + ".json")
    if not p.exists():
        raise FileNotFoundError(p)
    return p
