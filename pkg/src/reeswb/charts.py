"""Affine charts, basic objects and their transformations.

Centers are always coordinate subspaces V(x_i : i in S) of the current chart,
and every hypersurface in the boundary E is a coordinate hyperplane or
absent from the chart (stored as the unit polynomial 1).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .errors import PreconditionError, RingMismatch
from .poly import Poly, Ring
from .rees import Couple, Locus, ReesAlgebra, sing_couple, sing_rees

Payload = Couple | ReesAlgebra


@dataclass(frozen=True)
class Divisor:
    """A smooth hypersurface of E.

    ``origin`` is the number of blow-ups performed when it appeared (0 for the
    initial boundary); ``exceptional`` marks hypersurfaces created by blowing
    up, which are the ones factored out of the weak transform.
    """

    name: str
    poly: Poly
    origin: int = 0
    exceptional: bool = False

    @property
    def present(self) -> bool:
        return not self.poly.is_constant()

    def var_index(self) -> int | None:
        if not self.present:
            return None
        (e,) = self.poly.terms
        return e.index(1)


@dataclass(frozen=True)
class Step:
    """One transformation, in a form that can be replayed and serialized."""

    kind: str
    chart: str
    center: tuple[str, ...] = ()
    chart_var: str | None = None
    data: str = ""
    exponents: tuple[tuple[str, int], ...] = ()

    def to_json(self, index: int) -> dict:
        out = {"step": index, "kind": self.kind, "chart": self.chart}
        if self.kind == "blowup":
            out["center"] = list(self.center)
            out["chart_var"] = self.chart_var
            out["exponents"] = {k: v for k, v in self.exponents}
        elif self.data:
            out["data"] = self.data
        return out


@dataclass(frozen=True)
class BasicObject:
    ring: Ring
    payload: Payload
    E: tuple[Divisor, ...] = ()
    label: str = "root"
    opens: tuple[Poly, ...] = ()
    history: tuple[Step, ...] = field(default=())
    monomial: Poly | None = None

    def __post_init__(self):
        if self.payload.ring != self.ring:
            raise RingMismatch("payload ring differs from chart ring")
        for d in self.E:
            if d.poly.ring != self.ring:
                raise RingMismatch(f"divisor {d.name} in another ring")
            if d.present and (len(d.poly.terms) != 1 or d.poly.degree() != 1 or d.poly != d.poly.monic()):
                raise PreconditionError(f"divisor {d.name} is not a coordinate hyperplane")
        idx = [d.var_index() for d in self.E if d.present]
        if len(idx) != len(set(idx)):
            raise PreconditionError("two hypersurfaces of E share a coordinate")

    @property
    def blowups(self) -> int:
        return sum(1 for s in self.history if s.kind == "blowup")

    def sing(self) -> Locus:
        return sing_locus(self.payload, self.opens)

    def divisor_vars(self, exceptional_only: bool = False) -> list[tuple[Divisor, int]]:
        return [
            (d, d.var_index())
            for d in self.E
            if d.present and (d.exceptional or not exceptional_only)
        ]


def sing_locus(payload: Payload, opens=()) -> Locus:
    if isinstance(payload, Couple):
        return sing_couple(payload, opens)
    return sing_rees(payload, opens)


def make_basic_object(
    payload: Payload, boundary=(), exceptional=(), label: str = "root"
) -> BasicObject:
    """Basic object in the payload's ring; E lists boundary then exceptional coordinates."""
    ring = payload.ring
    E = tuple(Divisor(name, ring.var(name), 0) for name in boundary)
    E += tuple(Divisor(f"E_{name}", ring.var(name), 0, True) for name in exceptional)
    return BasicObject(ring, payload, E, label)


def _map_payload(payload: Payload, fn) -> Payload:
    """Apply ``fn(poly, weight)`` to every generator."""
    if isinstance(payload, Couple):
        return Couple(tuple(fn(g, payload.b) for g in payload.gens), payload.b)
    return ReesAlgebra(tuple((fn(f, n), n) for f, n in payload.gens))


def chart_substitution(ring: Ring, center: list[int], j: int) -> list[Poly]:
    """Images of the coordinates in the x_j-chart: x_i -> x_i x_j for i in the center, i != j."""
    xj = ring.var(j)
    return [ring.var(i) * xj if (i in center and i != j) else ring.var(i) for i in range(ring.nvars)]


def transform_payload(payload: Payload, ring: Ring, center: list[int], j: int) -> Payload:
    """Controlled transform: substitute and divide the weight-n piece by x_j^n exactly."""
    images = chart_substitution(ring, center, j)

    def fn(f: Poly, n: int) -> Poly:
        g = f.substitute(images)
        k = g.var_power_dividing(j)
        if k < n:
            raise PreconditionError(f"x_{ring.names[j]}^{n} does not divide the pulled-back generator; center not permissible")
        return g.divide_var_power(j, n)

    return _map_payload(payload, fn)


def center_indices(ring: Ring, center) -> list[int]:
    idx = sorted({ring.index(c) if isinstance(c, str) else int(c) for c in center})
    if not idx:
        raise PreconditionError("empty center")
    return idx


def center_in_sing(bo: BasicObject, center) -> bool:
    idx = center_indices(bo.ring, center)
    y = Locus.of(bo.ring, [bo.ring.var(i) for i in idx], bo.opens)
    return bo.sing().contains(y)


def blowup(bo: BasicObject, center, charts=None) -> list[BasicObject]:
    """Blow up a coordinate center contained in Sing; one basic object per chart.

    ``charts`` optionally restricts which chart variables are produced.
    """
    ring = bo.ring
    idx = center_indices(ring, center)
    if not center_in_sing(bo, idx):
        raise PreconditionError(f"center {[ring.names[i] for i in idx]} is not contained in Sing")
    k = bo.blowups + 1
    names = tuple(ring.names[i] for i in idx)
    out = []
    for j in idx:
        if charts is not None and ring.names[j] not in charts:
            continue
        images = chart_substitution(ring, idx, j)
        payload = transform_payload(bo.payload, ring, idx, j)
        E = []
        for d in bo.E:
            if d.present and d.var_index() == j:
                E.append(replace(d, poly=ring.one()))
            else:
                E.append(d)
        E.append(Divisor(_fresh_name(f"H{k}", bo.E), ring.var(j), k, True))
        opens = tuple(g.substitute(images) for g in bo.opens)
        label = f"{bo.label}:{ring.names[j]}"
        exps = ()
        monomial = None
        if isinstance(payload, Couple):
            prev = bo.monomial if bo.monomial is not None else ring.one()
            monomial = prev.substitute(images) * ring.var(j) ** payload.b
            exps = tuple(_exponents_in(monomial, E).items())
        step = Step("blowup", label, names, ring.names[j], exponents=exps)
        out.append(BasicObject(ring, payload, tuple(E), label, opens, bo.history + (step,), monomial))
    return out


def _fresh_name(name: str, E) -> str:
    taken = {d.name for d in E}
    out, i = name, 1
    while out in taken:
        out = f"{name}_{i}"
        i += 1
    return out


def restrict(bo: BasicObject, g: Poly) -> BasicObject:
    """Restriction to the principal open D(g)."""
    if g.ring != bo.ring:
        raise RingMismatch("restriction polynomial in another ring")
    if not g:
        raise PreconditionError("restriction to D(0) is empty")
    label = f"{bo.label}|D({g})"
    step = Step("restrict", label, data=str(g))
    return replace(bo, opens=bo.opens + (g,), label=label, history=bo.history + (step,))


def times_affine(bo: BasicObject, m: int = 1) -> BasicObject:
    """Product with affine m-space: m fresh coordinates, payload and E pulled back."""
    ring = bo.ring
    fresh = []
    k = 1
    while len(fresh) < m:
        name = f"t{k}"
        if name not in ring.names:
            fresh.append(name)
        k += 1
    big = ring.extend(tuple(fresh))
    pos = list(range(ring.nvars))
    payload = _map_payload(bo.payload, lambda f, n: f.embed(big, pos))
    E = tuple(replace(d, poly=d.poly.embed(big, pos)) for d in bo.E)
    opens = tuple(g.embed(big, pos) for g in bo.opens)
    label = f"{bo.label}*A{m}"
    step = Step("times_affine", label, data=",".join(fresh))
    monomial = bo.monomial.embed(big, pos) if bo.monomial is not None else None
    return BasicObject(big, payload, E, label, opens, bo.history + (step,), monomial)


def substitute_payload(payload: Payload, images: list[Poly]) -> Payload:
    """Pull back along a coordinate change given by the images of the variables."""
    return _map_payload(payload, lambda f, n: f.substitute(images))


# total transforms ------------------------------------------------------------------


def _exponents_in(monomial: Poly, E) -> dict[str, int]:
    (e,) = monomial.terms
    return {d.name: e[d.var_index()] for d in E if d.exceptional and d.present}


def replay(start: BasicObject, steps) -> BasicObject:
    """Re-apply a recorded sequence of steps to ``start``."""
    bo = start
    for s in steps:
        if s.kind == "blowup":
            (bo,) = blowup(bo, s.center, charts=[s.chart_var])
        elif s.kind == "restrict":
            from .poly import parse_poly

            bo = restrict(bo, parse_poly(s.data, bo.ring))
        elif s.kind == "times_affine":
            bo = times_affine(bo, len(s.data.split(",")))
        else:
            raise PreconditionError(f"cannot replay step kind {s.kind!r}")
    return bo


def total_transform_exponents(bo: BasicObject, start: BasicObject) -> dict[str, int]:
    """Exponents c_i with J O_{V_k} = prod I(H_i)^{c_i} J_k for the exceptional H_i in this chart.

    The blow-ups recorded in ``bo.history`` after ``start`` are replayed on the
    coordinate images of ``start``; the product formula is checked generator
    by generator before the exponents are read off.
    """
    if not isinstance(bo.payload, Couple) or not isinstance(start.payload, Couple):
        raise PreconditionError("total transform exponents are defined for couples")
    if start.ring != bo.ring:
        raise RingMismatch("start and end charts have different coordinates")
    steps = [s for s in bo.history if s.kind == "blowup"][start.blowups :]
    ring = bo.ring
    images = ring.gens()
    monomial = ring.one()
    b = bo.payload.b
    for s in steps:
        idx = center_indices(ring, s.center)
        j = ring.index(s.chart_var)
        sub = chart_substitution(ring, idx, j)
        images = [g.substitute(sub) for g in images]
        monomial = monomial.substitute(sub) * ring.var(j) ** b
    for g0, gk in zip(start.payload.gens, bo.payload.gens):
        if g0.substitute(images) != monomial * gk:
            raise ArithmeticError("total transform does not factor as monomial times controlled transform")
    return _exponents_in(monomial, bo.E)
