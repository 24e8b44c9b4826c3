"""Figures of the max w-ord and max t sequences along each chart path of a resolution."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.ticker import MaxNLocator  # noqa: E402

from .driver import ResolutionTrace  # noqa: E402


_STYLES = ["-", "--", ":", "-."]


def path_series(trace: ResolutionTrace) -> dict[str, list[tuple[int, tuple, tuple]]]:
    """Per leaf chart: (step, max w-ord per level, gamma entries) along its path."""
    paths = trace.paths()
    leaves = {l.chart for l in trace.leaves}
    out = {}
    for label, recs in sorted(paths.items()):
        if label not in leaves:
            continue
        pts = [(r.step, r.words, tuple(v for v in r.gamma if v[0] != float("inf"))) for r in recs if r.words]
        if pts:
            out[label] = pts
    return out


def plot_trace(trace: ResolutionTrace, path: str | Path, title: str = "") -> Path:
    """Write a PNG with max w-ord (left) and max t (right, annotated with h) per chart path and level."""
    path = Path(path)
    series = path_series(trace)
    fig, (ax_w, ax_t) = plt.subplots(1, 2, figsize=(11, 4.5), sharey=True)
    colors = plt.rcParams["axes.prop_cycle"].by_key()["color"]
    depth = max((len(p[1]) for pts in series.values() for p in pts), default=0)
    for k, (label, pts) in enumerate(series.items()):
        color = colors[k % len(colors)]
        for level in range(depth):
            ws = [(s, float(w[level])) for s, w, _ in pts if len(w) > level]
            ts = [(s, float(g[level][0]), g[level][1]) for s, _, g in pts if len(g) > level]
            style = _STYLES[level % len(_STYLES)]
            name = f"{label} level {level}"
            if ws:
                ax_w.plot(*zip(*ws), style, marker="o", color=color, label=name)
            if ts:
                ax_t.plot([t[0] for t in ts], [t[1] for t in ts], style, marker="s", color=color, label=name)
                for s, w, h in ts:
                    ax_t.annotate(f"h={h}", (s, w), textcoords="offset points", xytext=(4, 4), fontsize=7)
    ax_w.set_title("max w-ord")
    ax_t.set_title("max t = (w-ord, h)")
    for ax in (ax_w, ax_t):
        ax.set_xlabel("blow-ups along the path")
        ax.xaxis.set_major_locator(MaxNLocator(integer=True))
        ax.grid(True, alpha=0.3)
    ax_w.set_ylabel("value")
    if series:
        ax_t.legend(fontsize=6, loc="center left", bbox_to_anchor=(1.0, 0.5))
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    fig.savefig(path, dpi=100)
    plt.close(fig)
    return path
