"""Tangent-cone invariants: initial ideal, its Hasse closure, the subspace L_C and tau."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PreconditionError
from .poly import Poly, Ring, ideal_member, multi_indices, rank, row_echelon
from .rees import ReesAlgebra, sing_rees


def graded_ring(ring: Ring) -> Ring:
    """Ring of the graded algebra gr_M(O): same field, capitalised variable names."""
    upper = tuple(n.upper() for n in ring.names)
    if len(set(upper)) != len(upper) or set(upper) & set(ring.names):
        upper = tuple("gr_" + n for n in ring.names)
    return Ring(ring.field, upper)


def initial_ideal(g: ReesAlgebra, point) -> list[Poly]:
    """Degree-n initial forms at ``point`` of the generators f W^n with order exactly n."""
    gr = graded_ring(g.ring)
    out = []
    for f, n in g.gens:
        t = f.translate(point) if any(point) else f
        if t.low_degree() == n:
            out.append(Poly(gr, t.homogeneous_part(n).terms).monic())
    return out


def graded_diff_closure(forms) -> list[Poly]:
    """Close a set of homogeneous forms under Gamma^alpha for |alpha| < degree."""
    seen: dict[Poly, None] = {}
    queue = [f.monic() for f in forms if f]
    while queue:
        f = queue.pop()
        if f in seen:
            continue
        seen[f] = None
        n = f.degree()
        for alpha in multi_indices(f.nvars, n - 1):
            d = f.hasse(alpha)
            if d:
                d = d.monic()
                if d not in seen:
                    queue.append(d)
    return sorted(seen, key=lambda p: (p.degree(), str(p)))


def _additive_root(f: Poly) -> Poly | None:
    """For f = (sum c_i X_i)^(p^e) over F_p return sum c_i X_i; degree-1 forms return themselves."""
    n = f.degree()
    if n == 1:
        return f
    p = f.field.p
    if not p:
        return None
    q = 1
    while q < n:
        q *= p
    if q != n:
        return None
    terms = {}
    for e, c in f.terms.items():
        if sorted(e)[-1] != n:
            return None
        i = e.index(n)
        lin = [0] * f.nvars
        lin[i] = 1
        # Frobenius is the identity on F_p, so the p^e-th root of c is c itself.
        terms[tuple(lin)] = c
    return Poly(f.ring, terms)


@dataclass(frozen=True)
class Ridge:
    tau: int
    linear_forms: tuple[Poly, ...]
    flagged: tuple[Poly, ...]
    closure: tuple[Poly, ...]

    def to_json(self) -> dict:
        return {
            "tau": self.tau,
            "linear_forms": [str(f) for f in self.linear_forms],
            "flagged_generators": [str(f) for f in self.flagged],
        }


def ridge_and_tau(g: ReesAlgebra, point, check_saturation: bool = False) -> Ridge:
    """L_C as the zero set of linear forms from the Hasse closure of In_x(g); tau = their rank.

    Closure generators that are neither linear nor p^e-th powers of linear
    forms and do not vanish on the extracted subspace are returned in
    ``flagged``: the linear space is then only an upper bound for the cone's
    translation space.
    """
    if not sing_rees(g).has_point(point):
        raise PreconditionError(f"{point} is not in Sing")
    closure = graded_diff_closure(initial_ideal(g, point))
    gr = graded_ring(g.ring)
    roots = [r for r in (_additive_root(f) for f in closure) if r is not None]
    rows = [[f.terms.get(tuple(int(i == j) for i in range(gr.nvars)), 0) for j in range(gr.nvars)] for f in roots]
    basis = row_echelon(rows, gr.field) if rows else []
    linear = tuple(
        Poly(gr, {tuple(int(i == j) for i in range(gr.nvars)): c for j, c in enumerate(r) if c}) for r in basis
    )
    flagged = tuple(
        f for f in closure if _additive_root(f) is None and not ideal_member(f, list(linear))
    )
    result = Ridge(len(linear), linear, flagged, tuple(closure))
    if check_saturation:
        from .diff import diff_saturate

        other = ridge_and_tau(diff_saturate(g, prune=False), point)
        if other.tau != result.tau:
            raise AssertionError("tau differs between an algebra and its Diff-saturation")
    return result


def tau(g: ReesAlgebra, point) -> int:
    return ridge_and_tau(g, point).tau


def codim_type_at_least(g: ReesAlgebra, e: int, probes) -> bool:
    return all(tau(g, pt) >= e for pt in probes)


def transversal(g: ReesAlgebra, fiber: list[int], point) -> bool:
    """L_C meets the fiber directions (kernel of the projection dropping ``fiber``) only in 0."""
    ridge = ridge_and_tau(g, point)
    gr = graded_ring(g.ring)
    if not fiber:
        return True
    rows = []
    for f in ridge.linear_forms:
        rows.append([f.terms.get(tuple(int(i == j) for i in range(gr.nvars)), 0) for j in fiber])
    return bool(rows) and rank(rows, gr.field) == len(fiber)
