"""Differential saturation of Rees algebras and Diff-algebra tests."""

from __future__ import annotations

from .poly import Poly, ideals_equal, multi_indices
from .rees import (
    ReesAlgebra,
    algebra_degree_part,
    degree_member,
    diff_extend_ideal,
)

__all__ = [
    "algebra_degree_part",
    "algebras_equal_up_to",
    "diff_extend_ideal",
    "diff_saturate",
    "is_diff_algebra",
    "is_relative_diff_algebra",
    "saturation_candidates",
]


def _alphas(nvars: int, below: int, support=None):
    """Multi-indices with |alpha| < below, nonzero only on ``support``."""
    idx = list(range(nvars)) if support is None else list(support)
    for sub in multi_indices(len(idx), below - 1):
        alpha = [0] * nvars
        for i, a in zip(idx, sub):
            alpha[i] = a
        yield tuple(alpha)


def saturation_candidates(g: ReesAlgebra, support=None) -> list[tuple[Poly, int]]:
    """The generators Delta^alpha(f) W^(n' - |alpha|) for 0 <= |alpha| < n' <= n."""
    out = []
    nv = g.ring.nvars
    for f, n in g.gens:
        for alpha in _alphas(nv, n, support):
            d = f.hasse(alpha)
            if not d:
                continue
            k = sum(alpha)
            for n2 in range(k + 1, n + 1):
                out.append((d, n2 - k))
    return out


def diff_saturate(g: ReesAlgebra, prune: bool = True, support=None) -> ReesAlgebra:
    """G(g): the smallest Diff-algebra containing g.

    With ``prune`` the candidate list is scanned in canonical order (weight,
    then term order) and a candidate is dropped when it already lies in the
    algebra generated by the candidates kept so far.  ``support`` limits the
    derivatives to the given variable indices (relative saturation).
    """
    full = ReesAlgebra(tuple(saturation_candidates(g, support)))
    if not prune:
        return full
    kept: list[tuple[Poly, int]] = []
    for f, n in full.gens:
        if kept and degree_member(f, ReesAlgebra(tuple(kept)), n):
            continue
        kept.append((f, n))
    return ReesAlgebra(tuple(kept))


def _closed(g: ReesAlgebra, support) -> bool:
    nv = g.ring.nvars
    for f, n in g.gens:
        if n >= 2 and not degree_member(f, g, n - 1):
            return False
        for alpha in _alphas(nv, n, support):
            k = sum(alpha)
            if k == 0:
                continue
            d = f.hasse(alpha)
            if d and not degree_member(d, g, n - k):
                return False
    return True


def is_diff_algebra(g: ReesAlgebra) -> bool:
    """Delta^alpha(f) in I_{n-|alpha|} for every generator and |alpha| < n, plus I_n in I_{n-1}."""
    return _closed(g, None)


def is_relative_diff_algebra(g: ReesAlgebra, fiber: list[int]) -> bool:
    """As ``is_diff_algebra`` but only for derivatives along the fiber variables."""
    return _closed(g, fiber)


def algebras_equal_up_to(g1: ReesAlgebra, g2: ReesAlgebra, n: int) -> bool:
    """Equality of the degree parts I_1..I_n as ideals."""
    for k in range(1, n + 1):
        if not ideals_equal(algebra_degree_part(g1, k), algebra_degree_part(g2, k)):
            return False
    return True
