"""Raster figures for command reports (matplotlib, headless backend)."""

from __future__ import annotations

import math
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.patches import Circle as CirclePatch  # noqa: E402

from .kernel import Circle, Point2  # noqa: E402
from .render import PALETTE  # noqa: E402


def save_figure(path: str, points: Sequence[Point2], disks: Sequence[Circle] = (),
                anchor: Circle | None = None, origin: Point2 | None = None,
                colors: Sequence[int] | None = None, title: str = "") -> None:
    fig, ax = plt.subplots(figsize=(6, 6), dpi=120)
    for c in disks:
        ax.add_patch(CirclePatch((float(c.center.x), float(c.center.y)),
                                 math.sqrt(float(c.radius_sq)), fill=False, lw=0.6,
                                 ec="0.3", alpha=0.7))
    if anchor is not None:
        ax.add_patch(CirclePatch((float(anchor.center.x), float(anchor.center.y)),
                                 math.sqrt(float(anchor.radius_sq)), fill=False, lw=0.8,
                                 ec="0.6", ls="--"))
    xs = [float(p.x) for p in points]
    ys = [float(p.y) for p in points]
    if colors is None:
        ax.scatter(xs, ys, s=10, c="k", zorder=3)
    else:
        ax.scatter(xs, ys, s=12, c=[PALETTE[c % len(PALETTE)] for c in colors], zorder=3)
    if origin is not None:
        ax.plot([float(origin.x)], [float(origin.y)], "r+", ms=10, zorder=4)
    ax.set_aspect("equal")
    ax.autoscale_view()
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
