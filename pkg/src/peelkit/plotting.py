"""Static SVG figures of point sets, with blocks color-coded.

Rendering converts exact rationals to floats; that is fine here because the
figures are illustrations, never inputs to any certified computation.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .errors import InputError
from .pointset import PointSet


def _projected(P: PointSet, projection: tuple[int, int] | None) -> tuple[list[float], list[float]]:
    d = P.dim
    if d == 1:
        return [float(p[0]) for p in P.points], [0.0] * len(P)
    if projection is None:
        projection = (0, 1)
    i, j = projection
    if not (0 <= i < d and 0 <= j < d) or i == j:
        raise InputError(f"projection axes {projection} invalid for dimension {d}")
    return [float(p[i]) for p in P.points], [float(p[j]) for p in P.points]


def plot_pointset(
    P: PointSet,
    out,
    projection: tuple[int, int] | None = None,
    title: str | None = None,
) -> Path:
    """Write an SVG: 2D sets directly, higher dimensions projected onto a pair of axes.

    Block structure, when present, is shown by color and a legend; the origin
    is marked with a cross since it is the defended location throughout.
    """
    if len(P) == 0:
        raise InputError("nothing to plot: empty point set")
    xs, ys = _projected(P, projection)

    fig, ax = plt.subplots(figsize=(5, 5))
    try:
        if P.blocks is not None:
            palette = plt.cm.tab10.colors
            seen = []
            for b in P.blocks:
                if b not in seen:
                    seen.append(b)
            for b in seen:
                sel = [k for k in range(len(P)) if P.blocks[k] == b]
                ax.scatter(
                    [xs[k] for k in sel],
                    [ys[k] for k in sel],
                    s=36,
                    color=palette[seen.index(b) % len(palette)],
                    label=f"block {b}",
                )
            if len(seen) > 1:
                ax.legend(loc="best", fontsize=8)
        else:
            ax.scatter(xs, ys, s=36, color="tab:blue")

        if P.labels is not None:
            for x, y, lab in zip(xs, ys, P.labels):
                ax.annotate(str(lab), (x, y), textcoords="offset points", xytext=(4, 4), fontsize=7)

        ax.scatter([0.0], [0.0], marker="+", s=90, color="black", zorder=3)
        ax.axhline(0.0, color="0.85", lw=0.6, zorder=0)
        ax.axvline(0.0, color="0.85", lw=0.6, zorder=0)
        ax.set_aspect("equal", adjustable="datalim")
        if title:
            ax.set_title(title)

        out_path = Path(out)
        fig.savefig(out_path, format="svg", bbox_inches="tight")
    finally:
        plt.close(fig)
    return out_path
