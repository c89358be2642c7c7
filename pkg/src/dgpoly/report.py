"""Figure rendering for census output."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .census import CensusRow

_SERIES = ("total", "rectangular", "maltsev", "majority")
_MARKERS = ("o", "s", "^", "d")


def render_census_figure(rows: Sequence[CensusRow], path: str | Path) -> Path:
    """Plot census counts against size, one panel per mode, and save to ``path``.

    Counts are drawn on a log scale since the totals grow as 2**(n*n);
    zero counts are left off the log axis.
    """
    if not rows:
        raise ValueError("no census rows to plot")
    modes = sorted({row.mode for row in rows})
    fig, axes = plt.subplots(1, len(modes), figsize=(5.5 * len(modes), 4.0), squeeze=False)
    for ax, mode in zip(axes[0], modes):
        selected = sorted((r for r in rows if r.mode == mode), key=lambda r: r.n)
        ns = [r.n for r in selected]
        for name, marker in zip(_SERIES, _MARKERS):
            counts = [getattr(r, name) for r in selected]
            pts = [(x, c) for x, c in zip(ns, counts) if c > 0]
            if pts:
                ax.plot([p[0] for p in pts], [p[1] for p in pts], marker=marker, label=name)
        ax.set_yscale("log")
        ax.set_xlabel("vertices")
        ax.set_ylabel("digraphs")
        ax.set_title(mode)
        ax.set_xticks(ns)
        ax.grid(True, which="both", alpha=0.3)
        ax.legend()
    fig.suptitle("digraph census")
    fig.tight_layout()
    out = Path(path)
    fig.savefig(out, dpi=150)
    plt.close(fig)
    return out
