"""Plain SVG 1.1 drawings of realizations and colorings.

Exact values are rounded to 12 significant digits for display only. Output
depends on nothing but the input, so equal inputs give equal bytes.
"""

from __future__ import annotations

import math
from typing import Sequence

from .construction import Realization
from .kernel import Circle, Point2

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
           "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f")
SIZE = 800.0


def _n(x: float) -> str:
    s = format(x, ".12g")
    return "0" if s == "-0" else s


class _Canvas:
    def __init__(self, xmin, xmax, ymin, ymax):
        span = max(xmax - xmin, ymax - ymin) or 1.0
        pad = 0.05 * span
        self.x0, self.y1 = xmin - pad, ymax + pad
        self.scale = SIZE / (span + 2 * pad)

    def x(self, v: float) -> float:
        return (v - self.x0) * self.scale

    def y(self, v: float) -> float:
        return (self.y1 - v) * self.scale


def _bbox(points: Sequence[Point2], circles: Sequence[Circle]):
    xs, ys = [], []
    for p in points:
        xs.append(float(p.x))
        ys.append(float(p.y))
    for c in circles:
        r = math.sqrt(float(c.radius_sq))
        xs += [float(c.center.x) - r, float(c.center.x) + r]
        ys += [float(c.center.y) - r, float(c.center.y) + r]
    if not xs:
        return -1.0, 1.0, -1.0, 1.0
    return min(xs), max(xs), min(ys), max(ys)


def svg_document(points: Sequence[Point2], disks: Sequence[Circle] = (),
                 anchor: Circle | None = None, origin: Point2 | None = None,
                 colors: Sequence[int] | None = None, k: int | None = None,
                 title: str = "") -> str:
    everything = list(disks) + ([anchor] if anchor is not None else [])
    extra = [origin] if origin is not None else []
    cv = _Canvas(*_bbox(list(points) + extra, everything))
    dot = 4.0
    ncls = k if k is not None else (max(colors) + 1 if colors else 1)
    out = ['<?xml version="1.0" encoding="UTF-8"?>',
           f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
           f'width="{_n(SIZE)}" height="{_n(SIZE)}" viewBox="0 0 {_n(SIZE)} {_n(SIZE)}">']
    if title:
        out.append(f"<title>{title}</title>")
    style = [".disk{fill:none;stroke:#444;stroke-width:0.8;stroke-opacity:0.7}",
             ".anchor{fill:none;stroke:#999;stroke-width:1;stroke-dasharray:6 4}",
             ".point{fill:#000}", ".origin{stroke:#d00;stroke-width:1.5}"]
    for i in range(ncls):
        style.append(f".c{i}{{fill:{PALETTE[i % len(PALETTE)]}}}")
    out.append("<style>" + "".join(style) + "</style>")
    out.append('<rect width="100%" height="100%" fill="#fff"/>')
    if anchor is not None:
        out.append(_circle(cv, anchor, "anchor"))
    for c in disks:
        out.append(_circle(cv, c, "disk"))
    for i, p in enumerate(points):
        cls = "point" if colors is None else f"point c{colors[i]}"
        out.append(f'<circle class="{cls}" cx="{_n(cv.x(float(p.x)))}" '
                   f'cy="{_n(cv.y(float(p.y)))}" r="{_n(dot)}"/>')
    if origin is not None:
        x, y = cv.x(float(origin.x)), cv.y(float(origin.y))
        out.append(f'<path class="origin" d="M{_n(x - 6)} {_n(y)}H{_n(x + 6)}'
                   f'M{_n(x)} {_n(y - 6)}V{_n(y + 6)}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _circle(cv: _Canvas, c: Circle, cls: str) -> str:
    r = math.sqrt(float(c.radius_sq)) * cv.scale
    return (f'<circle class="{cls}" cx="{_n(cv.x(float(c.center.x)))}" '
            f'cy="{_n(cv.y(float(c.center.y)))}" r="{_n(r)}"/>')


def render_realization(r: Realization, title: str = "") -> str:
    return svg_document(r.points, [d.circle for d in r.disks], anchor=r.anchor_circle,
                        origin=r.anchor_circle.center, title=title)


def render_coloring(points: Sequence[Point2], colors: Sequence[int], k: int,
                    origin: Point2 | None = None, title: str = "") -> str:
    return svg_document(points, origin=origin, colors=colors, k=k, title=title)
