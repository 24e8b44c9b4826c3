"""The gamma-driven resolution loop with externally supplied elimination data.

At each chart the driver computes the level-0 maximum of t, attaches the
Diff-algebra of the corresponding simple couple, and descends one level at
a time: when the singular locus of the current attached algebra is a
coordinate subspace whose codimension equals the level, it is the center;
otherwise an elimination algebra for (chart, step, level) is read from the
provider, checked, and its own t-maximum selects the next attached algebra.

Attached algebras are carried to the charts of each blow-up as transforms
and rebuilt only when the value of gamma at their level changes, so the
exceptional hypersurfaces that appear after an algebra was attached are
visible in its weak transform.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import product
from pathlib import Path

from .charts import BasicObject, blowup, center_indices, transform_payload
from .diff import diff_saturate, is_relative_diff_algebra
from .errors import PreconditionError, ProviderError, StateError
from .poly import INF, parse_poly
from .rees import (
    Locus,
    ReesAlgebra,
    degree_member,
    odot,
    rees_from_couple,
    sing_rees,
)
from .satellite import as_couple, factor_exceptional, level_data, max_residual_order, monomial_resolve
from .tau import transversal

INFINITY = (INF, INF)


def gamma_padded(values, nvars: int) -> tuple:
    """Lexicographic gamma value: the level maxima followed by infinity entries."""
    values = tuple(values)
    return values + (INFINITY,) * (nvars - len(values))


def _fmt_value(v) -> object:
    if v == INFINITY:
        return "inf"
    w, h = v
    return [str(w), h]


# elimination providers --------------------------------------------------------------


@dataclass(frozen=True)
class ProviderEntry:
    chart: str
    step: int
    level: int
    fiber: tuple[str, ...]
    gens: tuple[tuple[str, int], ...]

    def key(self):
        return (self.chart, self.step, self.level)

    def algebra(self, ring) -> ReesAlgebra:
        return ReesAlgebra(tuple((parse_poly(f, ring), int(n)) for f, n in self.gens))

    def to_json(self) -> dict:
        return {
            "chart": self.chart,
            "step": self.step,
            "level": self.level,
            "fiber": list(self.fiber),
            "gens": [[f, n] for f, n in self.gens],
        }


class EliminationProvider:
    """Table (chart label, step, level) -> (fiber variables, elimination generators).

    Level 0 is always the identity and never looked up.
    """

    def __init__(self, entries=()):
        self.entries: dict = {}
        for e in entries:
            self.add(e)

    def add(self, entry: ProviderEntry):
        self.entries[entry.key()] = entry

    def lookup(self, chart: str, step: int, level: int, algebra: ReesAlgebra | None = None):
        return self.entries.get((chart, step, level))

    def __len__(self):
        return len(self.entries)

    @classmethod
    def from_json(cls, data) -> EliminationProvider:
        if isinstance(data, (str, Path)):
            data = json.loads(Path(data).read_text())
        rows = data.get("entries", data) if isinstance(data, dict) else data
        return cls(
            ProviderEntry(
                r["chart"],
                int(r["step"]),
                int(r.get("level", 1)),
                tuple(r["fiber"]),
                tuple((str(f), int(n)) for f, n in r["gens"]),
            )
            for r in rows
        )

    def to_json(self) -> dict:
        rows = sorted(self.entries.values(), key=lambda e: (e.chart, e.step, e.level))
        return {"entries": [e.to_json() for e in rows]}


IDENTITY_PROVIDER = EliminationProvider()


def restriction_entry(chart: str, step: int, level: int, algebra: ReesAlgebra, fiber) -> ProviderEntry:
    """Candidate elimination data: the generators restricted to the fiber coordinates set to 0.

    This is the coefficient algebra along a hypersurface of maximal contact.
    It is offered for building tables; ``elimination_checks`` decides whether
    a given candidate is admissible.
    """
    ring = algebra.ring
    idx = center_indices(ring, fiber)
    images = [ring.zero() if i in idx else ring.var(i) for i in range(ring.nvars)]
    gens = [(f.substitute(images), n) for f, n in algebra.gens]
    gens = [(f, n) for f, n in gens if f]
    if not gens:
        raise ProviderError("restriction kills every generator", key=(chart, step, level))
    reduced = prune(ReesAlgebra(tuple(gens)))
    return ProviderEntry(chart, step, level, tuple(ring.names[i] for i in idx), tuple((str(f), n) for f, n in reduced.gens))


def prune(g: ReesAlgebra) -> ReesAlgebra:
    kept = []
    for f, n in g.gens:
        if kept and degree_member(f, ReesAlgebra(tuple(kept)), n):
            continue
        kept.append((f, n))
    return ReesAlgebra(tuple(kept))


class RestrictionProvider(EliminationProvider):
    """Fills missing entries by restriction to coordinates u with u W in the algebra."""

    def __init__(self, base: EliminationProvider | None = None):
        super().__init__(base.entries.values() if base else ())
        self.generated: list[ProviderEntry] = []

    def lookup(self, chart, step, level, algebra=None):
        found = super().lookup(chart, step, level)
        if found or algebra is None:
            return found
        ring = algebra.ring
        contact = [i for i in range(ring.nvars) if degree_member(ring.var(i), algebra, 1)]
        if len(contact) < level:
            return None
        entry = restriction_entry(chart, step, level, algebra, contact[:level])
        self.add(entry)
        self.generated.append(entry)
        return entry


# elimination checks ------------------------------------------------------------------


def sample_points(locus: Locus, limit: int = 64) -> list[tuple]:
    """Rational points of a locus: all of them over F_p, a small integer grid over QQ."""
    ring = locus.ring
    field = ring.field
    values = list(field.elements()) if field.p else [0, 1, -1, 2]
    out = []
    for pt in product(values, repeat=ring.nvars):
        if locus.has_point(pt):
            out.append(pt)
            if len(out) >= limit:
                break
    return out


def elimination_checks(algebra: ReesAlgebra, entry: ProviderEntry, sing: Locus, probes=None) -> list[str]:
    """Names of the failed admissibility checks (empty list when the entry is accepted)."""
    ring = algebra.ring
    failed = []
    fiber = [ring.index(v) for v in entry.fiber]
    if len(fiber) != entry.level:
        failed.append("fiber_dimension")
    elim = entry.algebra(ring)
    if any(f.support_vars() & set(fiber) for f, _ in elim.gens):
        failed.append("generators_involve_fiber")
    probes = sample_points(sing) if probes is None else probes
    if not all(transversal(algebra, fiber, pt) for pt in probes):
        failed.append("transversality")
    if not is_relative_diff_algebra(algebra, fiber):
        failed.append("relative_diff_algebra")
    if not all(degree_member(f, algebra, n) for f, n in elim.gens):
        failed.append("pullback_containment")
    elim_sing = sing_rees(elim)
    if not all(elim_sing.has_point(pt) for pt in probes):
        failed.append("sing_image")
    images = {tuple(v for i, v in enumerate(pt) if i not in fiber) for pt in probes}
    if len(images) != len(probes):
        failed.append("injective_on_sing")
    return failed


# the driver ------------------------------------------------------------------------------


@dataclass(frozen=True)
class Level:
    """An attached algebra: the gamma entry it realizes, the algebra, and the step it was built."""

    value: tuple
    algebra: ReesAlgebra
    birth: int


@dataclass
class StepRecord:
    step: int
    chart: str
    status: str
    center: tuple[str, ...] = ()
    gamma: tuple = ()
    words: tuple = ()
    max_word: Fraction | None = None
    max_t: tuple | None = None
    E_minus: tuple[str, ...] = ()
    exponents: dict = field(default_factory=dict)
    detail: str = ""

    def to_json(self) -> dict:
        return {
            "step": self.step,
            "chart": self.chart,
            "status": self.status,
            "center": list(self.center),
            "gamma": [_fmt_value(v) for v in self.gamma],
            "max_word": None if self.max_word is None else str(self.max_word),
            "max_t": None if self.max_t is None else _fmt_value(self.max_t),
            "E_minus": list(self.E_minus),
            "exponents": dict(self.exponents),
            "detail": self.detail,
        }


@dataclass
class PathState:
    records: list[StepRecord] = field(default_factory=list)
    levels: list[Level] = field(default_factory=list)


def _drop_start(records, level: int, current, birth: int) -> int:
    """s0 at a level: first step of the final run of equal max w-ord since ``birth``."""
    s = len(records)
    while s - 1 >= birth and s - 1 >= 0:
        words = records[s - 1].words
        if len(words) > level and words[level] == current:
            s -= 1
        else:
            break
    return s


@dataclass
class GammaOutcome:
    status: str
    record: StepRecord
    levels: list[Level]
    center: tuple[str, ...] = ()


def gamma_step(bo: BasicObject, state: PathState, provider: EliminationProvider) -> GammaOutcome:
    """Evaluate the maximum of gamma on the chart and pick the next center."""
    s = bo.blowups
    ring = bo.ring
    sing = bo.sing()
    rec = StepRecord(s, bo.label, "resolved")
    if sing.is_empty():
        return GammaOutcome("resolved", rec, state.levels)
    c = as_couple(bo.payload)
    exc0 = [i for d, i in bo.divisor_vars() if d.exceptional]
    fac = factor_exceptional(c.gens, exc0)
    names = {i: d.name for d, i in bo.divisor_vars()}
    rec.exponents = {names[i]: b for i, b in fac.exponents}
    d0 = max_residual_order(sing, fac.residual)
    word = Fraction(d0, c.b)
    rec.max_word = word
    if d0 == 0:
        rec.status = "monomial"
        rec.words = (word,)
        return GammaOutcome("monomial", rec, state.levels)
    s0 = _drop_start(state.records, 0, word, 0)
    E_minus = [d for d in bo.E if d.present and d.origin <= s0]
    ld = level_data(c, exc0, E_minus, sing)
    rec.max_t = ld.max_t
    rec.E_minus = tuple(d.name for d in E_minus)
    words = [word]
    gamma = [ld.max_t]
    levels = list(state.levels)
    if not levels or levels[0].value != ld.max_t:
        levels = [Level(ld.max_t, diff_saturate(rees_from_couple(ld.t_couple)), s)]
    level = 1
    while True:
        current = levels[level - 1]
        alg = current.algebra
        sing_a = sing_rees(alg, bo.opens)
        if sing_a.is_empty():
            raise StateError(f"chart {bo.label}: attached algebra at level {level} has empty Sing")
        coords = sing_a.coordinate_subspace()
        if coords is not None and len(coords) == level:
            rec.status = "center"
            rec.center = tuple(ring.names[i] for i in coords)
            break
        if level >= ring.nvars:
            rec.status = "no_center"
            rec.detail = f"Sing of the level-{level} algebra is not a coordinate subspace"
            break
        entry = provider.lookup(bo.label, s, level, alg)
        if entry is None:
            rec.status = "provider_gap"
            rec.detail = json.dumps({"chart": bo.label, "step": s, "level": level})
            break
        failed = elimination_checks(alg, entry, sing_a)
        if failed:
            raise ProviderError(
                f"elimination entry {entry.key()} fails: {', '.join(failed)}", key=entry.key(), check=failed
            )
        fiber = {ring.index(v) for v in entry.fiber}
        elim = entry.algebra(ring)
        ce = as_couple(elim)
        exc = [i for dv, i in bo.divisor_vars() if dv.exceptional and dv.origin > current.birth]
        if set(exc) & fiber:
            raise ProviderError(
                f"entry {entry.key()}: an exceptional hypersurface is a fiber coordinate",
                key=entry.key(),
                check=["hypersurfaces_pulled_back"],
            )
        fe = factor_exceptional(ce.gens, exc)
        dl = max_residual_order(sing_a, fe.residual)
        wl = Fraction(dl, ce.b)
        words.append(wl)
        if dl == 0:
            # max w-ord 0 at this level: record it so gamma still drops along the path
            gamma.append((Fraction(0), 0))
            rec.status = "e_monomial"
            rec.detail = f"level {level}"
            break
        s0 = _drop_start(state.records, level, wl, current.birth)
        E_minus = [dv for dv in bo.E if dv.present and dv.exceptional and current.birth < dv.origin <= s0]
        ldl = level_data(ce, exc, E_minus, sing_a)
        gamma.append(ldl.max_t)
        if len(levels) > level and levels[level].value == ldl.max_t:
            pass
        else:
            nxt = diff_saturate(odot(alg, rees_from_couple(ldl.t_couple)))
            levels = levels[:level] + [Level(ldl.max_t, nxt, s)]
        level += 1
    rec.words = tuple(words)
    rec.gamma = gamma_padded(gamma, ring.nvars)
    return GammaOutcome(rec.status, rec, levels[: len(gamma)], rec.center)


@dataclass
class Leaf:
    chart: str
    status: str
    blowups: int


@dataclass
class ResolutionTrace:
    records: list[StepRecord]
    leaves: list[Leaf]
    blowups: int
    status: str
    provider_gaps: list[dict] = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return {"resolved": 0, "e_monomial": 0, "budget": 2, "provider_gap": 3}.get(self.status, 3)

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "blowups": self.blowups,
            "records": [r.to_json() for r in self.records],
            "leaves": [{"chart": l.chart, "status": l.status, "depth": l.blowups} for l in self.leaves],
            "provider_gaps": self.provider_gaps,
        }

    def paths(self) -> dict[str, list[StepRecord]]:
        """Records along the path to each chart, keyed by chart label."""
        by_label = {r.chart: r for r in self.records}
        out = {}
        for r in self.records:
            parts = r.chart.split(":")
            out[r.chart] = [by_label[":".join(parts[:k])] for k in range(1, len(parts) + 1) if ":".join(parts[:k]) in by_label]
        return out


def _transform_levels(levels: list[Level], ring, center, j) -> list[Level]:
    idx = center_indices(ring, center)
    return [replace(l, algebra=transform_payload(l.algebra, ring, idx, j)) for l in levels]


def resolve(bo: BasicObject, provider: EliminationProvider = IDENTITY_PROVIDER, max_steps: int = 50) -> ResolutionTrace:
    """Depth-first (by chart label) resolution until every chart is resolved, monomial-finished,
    e-monomial, out of budget, or blocked on missing elimination data."""
    records: list[StepRecord] = []
    leaves: list[Leaf] = []
    gaps: list[dict] = []
    total = 0
    stack = [(bo, PathState())]
    budget_hit = False
    while stack:
        node, state = stack.pop()
        out = gamma_step(node, state, provider)
        rec = out.record
        records.append(rec)
        if out.status == "resolved":
            leaves.append(Leaf(node.label, "resolved", node.blowups))
            continue
        if out.status == "monomial":
            res = monomial_resolve(node)
            if total + len(res.steps) > max_steps:
                rec.status = "budget"
                budget_hit = True
                leaves.append(Leaf(node.label, "budget", node.blowups))
                continue
            total += len(res.steps)
            rec.detail = json.dumps([{"chart": st.label, "center": list(st.center)} for st in res.steps])
            leaves.extend(Leaf(l.label, "resolved", l.blowups) for l in res.leaves)
            continue
        if out.status in ("e_monomial", "provider_gap", "no_center"):
            leaves.append(Leaf(node.label, out.status, node.blowups))
            if out.status == "provider_gap":
                gaps.append(json.loads(rec.detail))
            continue
        if total >= max_steps:
            rec.status = "budget"
            budget_hit = True
            leaves.append(Leaf(node.label, "budget", node.blowups))
            continue
        total += 1
        children = blowup(node, out.center)
        child_states = []
        for child in children:
            j = child.history[-1].chart_var
            levels = _transform_levels(out.levels, node.ring, out.center, node.ring.index(j))
            child_states.append((child, PathState(state.records + [rec], levels)))
        stack.extend(sorted(child_states, key=lambda cs: cs[0].label, reverse=True))
    statuses = {l.status for l in leaves}
    if budget_hit:
        status = "budget"
    elif statuses & {"provider_gap", "no_center"}:
        status = "provider_gap"
    elif "e_monomial" in statuses:
        status = "e_monomial"
    else:
        status = "resolved"
    return ResolutionTrace(records, leaves, total, status, gaps)


def invariant_trace(trace: ResolutionTrace) -> list[dict]:
    """Per-step records restricted to the fields compared across characteristics."""
    return [
        {
            "step": r.step,
            "chart": r.chart,
            "max_word": r.to_json()["max_word"],
            "max_t": r.to_json()["max_t"],
            "E_minus": list(r.E_minus),
            "exponents": dict(r.exponents),
        }
        for r in trace.records
    ]


__all__ = [
    "EliminationProvider",
    "GammaOutcome",
    "IDENTITY_PROVIDER",
    "Level",
    "PathState",
    "PreconditionError",
    "ProviderEntry",
    "ResolutionTrace",
    "RestrictionProvider",
    "StepRecord",
    "elimination_checks",
    "gamma_padded",
    "gamma_step",
    "invariant_trace",
    "prune",
    "resolve",
    "restriction_entry",
    "sample_points",
]
