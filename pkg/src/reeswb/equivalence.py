"""Bounded search for counterexamples to weak equivalence of two basic objects.

Two objects are weakly equivalent when every local sequence (blow-ups at
centers inside Sing, restrictions to opens, products with affine space)
keeps their singular loci equal.  The search below explores coordinate
centers, restrictions to D(x_i), D(x_i - 1), D(x_i + 1) and one extra affine
coordinate, up to a depth and a node budget.  A discrepancy is returned with
the step list that produced it so it can be replayed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .charts import BasicObject, Step, blowup, center_in_sing, replay, restrict, times_affine
from .errors import PreconditionError, ReesError
from .rees import ord_couple, ord_rees, Couple
from .tau import tau
from .charts import sing_locus


@dataclass
class FuzzResult:
    verdict: str  # "witness" or "no_violation"
    explored: int
    steps: list[Step] = field(default_factory=list)
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.verdict == "no_violation"

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "explored": self.explored,
            "steps": [s.to_json(i) for i, s in enumerate(self.steps)],
            "detail": self.detail,
        }


def _restriction_polys(ring):
    out = []
    for i in range(ring.nvars):
        x = ring.var(i)
        out.extend([x, x - 1, x + 1])
    return out


def _moves(b1: BasicObject, b2: BasicObject, sing):
    """Candidate next steps, applied in lockstep to both objects."""
    ring = b1.ring
    for k in range(1, ring.nvars + 1):
        for center in combinations(range(ring.nvars), k):
            names = tuple(ring.names[i] for i in center)
            if not center_in_sing(b1, names):
                continue
            for j in names:
                yield ("blowup", names, j)
    for g in _restriction_polys(ring):
        yield ("restrict", g, None)
    yield ("times_affine", 1, None)


def _apply(bo: BasicObject, move):
    kind, arg, j = move
    if kind == "blowup":
        (child,) = blowup(bo, arg, charts=[j])
        return child
    if kind == "restrict":
        return restrict(bo, arg.embed(bo.ring) if arg.ring != bo.ring else arg)
    return times_affine(bo, arg)


def weak_equiv_fuzz(b1: BasicObject, b2: BasicObject, depth: int = 2, budget: int = 500) -> FuzzResult:
    """Depth-first search for a local sequence on which Sing(b1) and Sing(b2) differ."""
    if b1.ring != b2.ring:
        raise PreconditionError("objects must live in the same chart")
    explored = 0
    base = len(b1.history)

    def visit(x1: BasicObject, x2: BasicObject, d: int):
        nonlocal explored
        explored += 1
        s1, s2 = x1.sing(), x2.sing()
        if not s1.same_as(s2):
            return FuzzResult("witness", explored, list(x1.history[base:]), f"Sing differs in chart {x1.label}: {s1} vs {s2}")
        if d == depth:
            return None
        for move in _moves(x1, x2, s1):
            if explored >= budget:
                return None
            try:
                y1 = _apply(x1, move)
            except ReesError:
                continue
            try:
                y2 = _apply(x2, move)
            except ReesError as exc:
                steps = list(y1.history[base:])
                return FuzzResult("witness", explored, steps, f"step not admissible for second object: {exc}")
            found = visit(y1, y2, d + 1)
            if found:
                return found
        return None

    found = visit(b1, b2, 0)
    return found or FuzzResult("no_violation", explored)


def replay_witness(b1: BasicObject, b2: BasicObject, steps) -> bool:
    """True when replaying ``steps`` on both objects reproduces a Sing discrepancy."""
    try:
        y1 = replay(b1, steps)
    except ReesError:
        return False
    try:
        y2 = replay(b2, steps)
    except ReesError:
        return True
    return not y1.sing().same_as(y2.sing())


def _ord(bo: BasicObject, point):
    p = bo.payload
    return ord_couple(p, point) if isinstance(p, Couple) else ord_rees(p, point)


def _as_rees(bo: BasicObject):
    from .rees import rees_from_couple

    p = bo.payload
    return rees_from_couple(p) if isinstance(p, Couple) else p


def ord_consequence_check(b1: BasicObject, b2: BasicObject, probes) -> bool:
    """Weakly equivalent objects have equal Sing and equal ord at singular points."""
    s1, s2 = sing_locus(b1.payload, b1.opens), sing_locus(b2.payload, b2.opens)
    for pt in probes:
        in1, in2 = s1.has_point(pt), s2.has_point(pt)
        if in1 != in2:
            return False
        if in1 and _ord(b1, pt) != _ord(b2, pt):
            return False
    return True


def tau_consequence_check(b1: BasicObject, b2: BasicObject, probes) -> bool:
    """Weakly equivalent objects have equal tau at singular points."""
    s1, s2 = b1.sing(), b2.sing()
    for pt in probes:
        in1, in2 = s1.has_point(pt), s2.has_point(pt)
        if in1 != in2:
            return False
        if in1 and tau(_as_rees(b1), pt) != tau(_as_rees(b2), pt):
            return False
    return True
