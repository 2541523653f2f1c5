"""Induced hypergraphs and enumeration of realizable ranges.

Three range spaces are covered: arbitrary open disks (through canonical
circles), unit disks whose interior contains a fixed origin (through the
arrangement of unit circles around the points), and the Delaunay graph
derived from the first.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .hypergraph import Hypergraph
from .kernel import (
    Circle, GeometryError, Point2, PointOnBoundary, Q, QuadraticScalar, Side,
    _ccw_cmp, circle_circle_intersections, cross, dist_sq, floor_pow2,
    quadratic_sign, side_of_circle, sqrt_bounds,
)


class DegenerateInput(GeometryError):
    pass


class DegeneratePosition(GeometryError):
    pass


# ---------------------------------------------------------------------------
# induced hypergraphs and realization checks


def induced_hypergraph(points: Sequence[Point2], circles: Sequence[Circle]) -> Hypergraph:
    """One edge per circle: the indices of the points inside it."""
    edges = []
    for c in circles:
        inside = []
        for i, p in enumerate(points):
            s = side_of_circle(p, c)
            if s is Side.ON:
                raise PointOnBoundary(f"point {i} lies on a disk boundary")
            if s is Side.INSIDE:
                inside.append(i)
        edges.append(frozenset(inside))
    return Hypergraph(len(points), tuple(edges), allow_empty=True)


@dataclass
class Mismatch:
    disk_index: int
    expected: frozenset
    found: frozenset
    reason: str = "membership"

    @property
    def symmetric_difference(self) -> frozenset:
        return self.expected ^ self.found

    def __str__(self) -> str:
        return (f"disk {self.disk_index}: expected {sorted(self.expected)}, "
                f"found {sorted(self.found)} ({self.reason})")


@dataclass
class VerifyReport:
    mismatch: Mismatch | None = None

    @property
    def ok(self) -> bool:
        return self.mismatch is None

    def __bool__(self) -> bool:
        return self.ok


def verify_realization(r) -> VerifyReport:
    """Recompute every disk's point set and compare with its tagged edge, then
    check the tags form the target hypergraph under the identity
    correspondence."""
    for k, d in enumerate(r.disks):
        found = set()
        on = set()
        for i, p in enumerate(r.points):
            s = side_of_circle(p, d.circle)
            if s is Side.INSIDE:
                found.add(i)
            elif s is Side.ON:
                on.add(i)
        if on:
            return VerifyReport(Mismatch(k, d.edge, frozenset(found), f"points {sorted(on)} on boundary"))
        if frozenset(found) != d.edge:
            return VerifyReport(Mismatch(k, d.edge, frozenset(found)))
    tags = Hypergraph(len(r.points), tuple(d.edge for d in r.disks))
    if not tags.same_edges(r.target):
        return VerifyReport(Mismatch(-1, frozenset(), frozenset(), "tagged edges differ from target"))
    return VerifyReport()


# ---------------------------------------------------------------------------
# range families


@dataclass(frozen=True)
class Witness:
    """Open disk given by its center and squared radius. The center is a
    rational point, or a pair of QuadraticScalars for a disk that is only
    realized at an arrangement vertex."""

    center: tuple
    radius_sq: Fraction

    def contains(self, p: Point2) -> bool:
        dx, dy = p[0] - self.center[0], p[1] - self.center[1]
        val = dx * dx + dy * dy - self.radius_sq
        if isinstance(val, QuadraticScalar):
            return quadratic_sign(val) < 0
        return val < 0

    def members(self, points: Sequence[Point2]) -> frozenset:
        return frozenset(i for i, p in enumerate(points) if self.contains(p))


@dataclass
class RangeFamily:
    points: list
    ranges: set = field(default_factory=set)
    witnesses: dict = field(default_factory=dict)
    origin: Point2 | None = None

    def add(self, rng: frozenset, witness: Witness) -> None:
        if rng not in self.ranges:
            self.ranges.add(rng)
            self.witnesses[rng] = witness

    def recheck(self) -> bool:
        """Every witness reproduces its range (and contains the origin)."""
        for rng in self.ranges:
            w = self.witnesses[rng]
            if w.members(self.points) != rng:
                return False
            if self.origin is not None and not w.contains(self.origin):
                return False
        return True

    def to_json(self) -> dict:
        from .serialize import point_to_json, q_to_json
        doc = {
            "points": [point_to_json(p) for p in self.points],
            "origin": point_to_json(self.origin) if self.origin is not None else None,
            "ranges": [],
        }
        for rng in sorted(self.ranges, key=lambda r: (len(r), sorted(r))):
            w = self.witnesses[rng]
            doc["ranges"].append({"members": sorted(rng), "center": _center_to_json(w.center),
                                  "radius_sq": q_to_json(w.radius_sq)})
        return doc


def _center_to_json(center):
    from .serialize import q_to_json
    out = []
    for v in center:
        if isinstance(v, QuadraticScalar):
            out.append(q_to_json(v.a) if v.is_rational() else
                       {"a": q_to_json(v.a), "b": q_to_json(v.b), "d": q_to_json(v.d)})
        else:
            out.append(q_to_json(v))
    return out


def _check_distinct(points: Sequence[Point2], extra: Sequence[Point2] = ()):
    if len(set(points)) != len(points):
        raise DegenerateInput("points must be distinct")
    for e in extra:
        if e in set(points):
            raise DegenerateInput("origin coincides with a point")


# ---------------------------------------------------------------------------
# general disks


def _circumcircle(a: Point2, b: Point2, c: Point2):
    d = 2 * cross(b - a, c - a)
    if d == 0:
        return None
    ba, ca = b - a, c - a
    ux = (ca.y * ba.norm_sq() - ba.y * ca.norm_sq()) / d
    uy = (ba.x * ca.norm_sq() - ca.x * ba.norm_sq()) / d
    center = Point2(a.x + ux, a.y + uy)
    return center, dist_sq(center, a)


def _separable_subsets(center: Point2, pts: list[int], points) -> list[tuple]:
    """Subsets S of cocircular pts that a line separates from the rest,
    as (S, affine g) pairs with g > 0 on S and g < 0 off S."""
    k = len(pts)
    one = Fraction(1)
    out = [((), (Fraction(0), Fraction(0), -one)), (tuple(pts), (Fraction(0), Fraction(0), one))]
    ref = points[pts[0]] - center
    ring = sorted(pts, key=functools.cmp_to_key(
        lambda i, j: _ccw_cmp(ref, points[i] - center, points[j] - center)))
    for length in range(1, k):
        for start in range(k):
            S = [ring[(start + t) % k] for t in range(length)]
            before = ring[(start - 1) % k]
            after = ring[(start + length) % k]
            m1 = (points[S[0]] + points[before]).scale(Fraction(1, 2))
            m2 = (points[S[-1]] + points[after]).scale(Fraction(1, 2))
            if m1 == m2:
                # S and its complement are single points: perpendicular bisector
                p, q = points[S[0]], points[before]
                nx, ny = p.x - q.x, p.y - q.y
                g = (nx, ny, -(nx * m1.x + ny * m1.y))
            else:
                nx, ny = -(m2.y - m1.y), m2.x - m1.x
                g = (nx, ny, -(nx * m1.x + ny * m1.y))
                if _affine(g, points[S[0]]) < 0:
                    g = (-nx, -ny, -g[2])
            out.append((tuple(S), g))
    return out


def _affine(g, p) -> Fraction:
    return g[0] * p.x + g[1] * p.y + g[2]


def _witness_near(center: Point2, radius_sq: Fraction, g, points, want: frozenset):
    """Perturb the disk's lifted plane by t*g until it induces ``want``."""
    t = Fraction(1)
    for _ in range(200):
        c = Point2(center.x + t * g[0] / 2, center.y + t * g[1] / 2)
        # x^2+y^2 - 2cx.x - ... < r^2 - |c0|^2 + t g0 + |c|^2 - ...
        r2 = radius_sq - center.norm_sq() + t * g[2] + c.norm_sq()
        if r2 > 0:
            w = Witness(c, r2)
            if w.members(points) == want:
                return w
        t /= 2
    raise GeometryError("could not certify a witness disk")


def disk_ranges(points: Sequence[Point2]) -> RangeFamily:
    """All subsets cut out by open disks, with one witness disk each."""
    points = [Point2.of(*p) for p in points]
    _check_distinct(points)
    fam = RangeFamily(list(points))
    n = len(points)
    far = Fraction(1)
    for p in points:
        far = max(far, abs(p.x) + abs(p.y) + 1)
    # empty range and singletons
    fam.add(frozenset(), Witness(Point2(far * 3, far * 3), Fraction(1, 4)))
    for i, p in enumerate(points):
        gap = min((dist_sq(p, q) for j, q in enumerate(points) if j != i), default=Fraction(4))
        fam.add(frozenset([i]), Witness(p, gap / 4))
    if n < 2:
        return fam
    if _all_collinear(points):
        _collinear_ranges(points, fam)
        return fam
    seen_circles = set()
    for a, b, c in itertools.combinations(range(n), 3):
        cc = _circumcircle(points[a], points[b], points[c])
        if cc is None:
            continue
        center, r2 = cc
        if (center, r2) in seen_circles:
            continue
        seen_circles.add((center, r2))
        inside, on = [], []
        for i, p in enumerate(points):
            s = dist_sq(p, center) - r2
            if s < 0:
                inside.append(i)
            elif s == 0:
                on.append(i)
        for S, g in _separable_subsets(center, on, points):
            rng = frozenset(inside) | frozenset(S)
            if rng in fam.ranges:
                continue
            fam.add(rng, _witness_near(center, r2, g, points, rng))
    return fam


def _all_collinear(points) -> bool:
    a, b = points[0], points[1]
    return all(cross(b - a, p - a) == 0 for p in points[2:])


def _collinear_ranges(points, fam: RangeFamily) -> None:
    a, b = points[0], points[1]
    d = b - a
    order = sorted(range(len(points)), key=lambda i: (points[i] - a).dot(d))
    n = len(order)
    for i in range(n):
        for j in range(i + 1, n + 1):
            members = order[i:j]
            lo, hi = points[members[0]], points[members[-1]]
            mid = (lo + hi).scale(Fraction(1, 2))
            # slightly larger than half the segment, short of the neighbours
            slack = []
            if i > 0:
                slack.append(dist_sq(points[order[i - 1]], lo))
            if j < n:
                slack.append(dist_sq(points[order[j]], hi))
            half = dist_sq(lo, mid)
            r2 = half + min(slack, default=Fraction(1)) / 16 if half else min(slack, default=Fraction(1)) / 4
            w = Witness(mid, r2)
            while w.members(points) != frozenset(members):
                r2 = (half + r2) / 2 if half else r2 / 4
                w = Witness(mid, r2)
            fam.add(frozenset(members), w)


def delaunay_graph(points: Sequence[Point2]) -> list[tuple[int, int]]:
    points = [Point2.of(*p) for p in points]
    _check_distinct(points)
    n = len(points)
    for quad in itertools.combinations(range(n), 4):
        a, b, c, d = (points[i] for i in quad)
        cc = _circumcircle(a, b, c)
        if cc is not None and dist_sq(d, cc[0]) == cc[1]:
            raise DegeneratePosition(f"points {quad} are cocircular")
    fam = disk_ranges(points)
    return sorted(tuple(sorted(r)) for r in fam.ranges if len(r) == 2)


def monochromatic_disk_witness(points: Sequence[Point2], coloring: Sequence[int], m: int,
                               family: RangeFamily | None = None):
    """A disk range of exactly m points sharing one color, with its witness."""
    if m > len(points) or m < 1:
        return None
    fam = family if family is not None else disk_ranges(points)
    for rng in sorted(fam.ranges, key=sorted):
        if len(rng) == m and len({coloring[i] for i in rng}) == 1:
            return rng, fam.witnesses[rng]
    return None


# ---------------------------------------------------------------------------
# stabbed unit disks

_FILTER = 1e-9


def _unit_members(z: Point2, pts: Sequence[Point2], fx: np.ndarray, fy: np.ndarray) -> frozenset:
    """Indices j with |z - pts[j]| < 1, decided exactly.

    A float evaluation settles every index whose value is far from the
    boundary; the rest are recomputed with rationals.
    """
    zx, zy = float(z.x), float(z.y)
    val = (fx - zx) ** 2 + (fy - zy) ** 2 - 1.0
    inside = set(np.nonzero(val < -_FILTER)[0].tolist())
    for j in np.nonzero(np.abs(val) <= _FILTER)[0].tolist():
        if dist_sq(z, pts[j]) < 1:
            inside.add(j)
    return frozenset(inside)


def _pythagorean_point(center: Point2, theta: float, denom: int) -> Point2:
    """Rational point of the unit circle at ``center`` near angle theta."""
    half = theta / 2
    if abs(math.cos(half)) < 1e-3:
        # near the point opposite to (1, 0): parametrize from the other side
        t = Fraction(math.tan((theta - math.pi) / 2)).limit_denominator(denom)
        return Point2(center.x - (1 - t * t) / (1 + t * t), center.y - 2 * t / (1 + t * t))
    t = Fraction(math.tan(half)).limit_denominator(denom)
    return Point2(center.x + (1 - t * t) / (1 + t * t), center.y + 2 * t / (1 + t * t))


def _cross_sign(u, v) -> int:
    """Sign of cross(u, v) for vectors whose coordinates are rationals or
    QuadraticScalars sharing one radicand."""
    val = u[0] * v[1] - u[1] * v[0]
    if isinstance(val, QuadraticScalar):
        return int(quadratic_sign(val))
    return (val > 0) - (val < 0)


def _between(center, v1, s, v2) -> bool:
    """s strictly inside the short ccw arc from v1 to v2."""
    a = (v1[0] - center.x, v1[1] - center.y)
    b = (s.x - center.x, s.y - center.y)
    c = (v2[0] - center.x, v2[1] - center.y)
    return _cross_sign(a, b) > 0 and _cross_sign(b, c) > 0


def _on_unit(v, c: Point2) -> bool:
    dx, dy = v[0] - c.x, v[1] - c.y
    val = dx * dx + dy * dy - 1
    if isinstance(val, QuadraticScalar):
        return quadratic_sign(val) == 0
    return val == 0


def _arc_samples(i: int, centers: list[Point2], verts: list) -> list[Point2]:
    """One rational point strictly inside every arc of circle i between
    consecutive arrangement vertices. ``verts`` holds (x, y, j) for the
    vertices shared with circle j."""
    c = centers[i]
    if not verts:
        return [Point2(c.x + 1, c.y)]
    cx, cy = float(c.x), float(c.y)
    ang = sorted(((math.atan2(float(v[1]) - cy, float(v[0]) - cx) % (2 * math.pi), v)
                  for v in verts), key=lambda t: t[0])
    out = []
    m = len(ang)
    for idx in range(m):
        a1, v1 = ang[idx]
        a2, v2 = ang[(idx + 1) % m]
        if idx + 1 == m:
            a2 += 2 * math.pi
        gap = a2 - a1
        if gap < 1e-9:
            # a vertex shared by several circles shows up once per pair
            if _on_unit(v1, centers[v2[2]]):
                continue
            gap = max(gap, 0.0)
        mid = a1 + gap / 2
        denom = max(16, int(64 / max(gap, 1e-300)))
        for _ in range(12):
            s = _pythagorean_point(c, mid, denom)
            sa = math.atan2(float(s.y) - cy, float(s.x) - cx) % (2 * math.pi)
            if sa < a1:
                sa += 2 * math.pi
            if a1 + 1e-9 < sa < a2 - 1e-9 or (gap < math.pi / 2 and _between(c, v1, s, v2)):
                break
            denom *= 64
        else:
            raise DegenerateInput("could not place a sample between arrangement vertices")
        out.append(s)
    return out


def _nudge(s: Point2, center: Point2, outward: bool, fx, fy, fo) -> Point2:
    """Move s radially off its own unit circle, by less than its distance to
    every other unit circle (estimated; the caller re-certifies)."""
    sx, sy = float(s.x), float(s.y)
    gaps = np.abs(np.hypot(np.append(fx, fo[0]) - sx, np.append(fy, fo[1]) - sy) - 1.0)
    own = abs(math.hypot(float(center.x) - sx, float(center.y) - sy) - 1.0)
    gaps = gaps[gaps > own + 1e-12] if gaps.size else gaps
    best = float(gaps.min()) if gaps.size else 1.0
    delta = floor_pow2(Fraction(max(min(best, 1.0), 1e-300)) / 4)
    sign = 1 if outward else -1
    return Point2(s.x + sign * delta * (s.x - center.x), s.y + sign * delta * (s.y - center.y))


def _vertex_ranges(fam: RangeFamily, centers: list[Point2], verts: list, points, o: Point2) -> None:
    """Ranges seen only from a vertex where three or more unit circles meet.

    If the circles through a vertex surround it, every nearby center picks up
    one of their points, so the vertex itself is the only witness.
    """
    fx = np.array([float(c.x) for c in centers])
    fy = np.array([float(c.y) for c in centers])
    n = len(centers) - 1
    for i, vs in enumerate(verts):
        for vx, vy, j in vs:
            if j < i:
                continue
            x, y = float(vx), float(vy)
            near = np.nonzero(np.abs(np.hypot(fx - x, fy - y) - 1.0) < 1e-7)[0].tolist()
            others = [k for k in near if k != i and k != j and _on_unit((vx, vy), centers[k])]
            # each such vertex is reached once, from its smallest circle pair
            if not others or min(others) < j:
                continue
            if n in (i, j) or n in others:
                continue  # on the circle around o: not stabbed
            center = Point2(vx.a, vy.a) if vx.is_rational() and vy.is_rational() else (vx, vy)
            w = Witness(center, Fraction(1))
            if not w.contains(o):
                continue
            fam.add(w.members(points), w)


def stabbed_unit_disk_ranges(points: Sequence[Point2], o: Point2) -> RangeFamily:
    """All point sets cut out by open unit disks whose interior contains o.

    The center z of such a disk ranges over the open unit disk around o; the
    induced set only changes when z crosses a unit circle around a point, so
    one sample per face of that arrangement suffices. Every face is bounded
    by arcs, and the two faces beside an arc are reached by nudging a point
    of the arc in and out.
    """
    points = [Point2.of(*p) for p in points]
    o = Point2.of(*o)
    _check_distinct(points, [o])
    n = len(points)
    centers = points + [o]
    fam = RangeFamily(list(points), origin=o)
    fx = np.array([float(p.x) for p in points])
    fy = np.array([float(p.y) for p in points])
    unit = [Circle.unit(c) for c in centers]
    verts: list[list] = [[] for _ in centers]
    for i, j in itertools.combinations(range(n + 1), 2):
        if dist_sq(centers[i], centers[j]) > 4:
            continue
        pts, _ = circle_circle_intersections(unit[i], unit[j])
        for vx, vy in pts:
            verts[i].append((vx, vy, j))
            verts[j].append((vx, vy, i))

    def in_stab(z: Point2) -> bool:
        return dist_sq(z, o) < 1

    samples: dict[frozenset, tuple] = {}
    for i in range(n + 1):
        for s in _arc_samples(i, centers, verts[i]):
            rs = _unit_members(s, points, fx, fy)
            if i == n:
                # arc of the circle around o: only the inner side is stabbed
                samples.setdefault(rs, (s, i, False))
                continue
            if not in_stab(s):
                continue
            samples.setdefault(rs | {i}, (s, i, False))
            samples.setdefault(rs, (s, i, True))
    for z in centers:
        if in_stab(z):
            rz = _unit_members(z, points, fx, fy)
            if rz not in samples:
                fam.add(rz, Witness(z, Fraction(1)))
    _vertex_ranges(fam, centers, verts, points, o)
    fo = (float(o.x), float(o.y))
    for rng, (s, i, outward) in samples.items():
        if rng in fam.ranges:
            continue
        z = _nudge(s, centers[i], outward, fx, fy, fo)
        for _ in range(64):
            if in_stab(z) and _unit_members(z, points, fx, fy) == rng:
                break
            # halve the nudge
            z = Point2((z.x + s.x) / 2, (z.y + s.y) / 2)
        else:
            raise GeometryError("stabbed witness failed to certify")
        fam.add(rng, Witness(z, Fraction(1)))
    return fam


def grid_oracle_ranges(points: Sequence[Point2], o: Point2, resolution: Fraction) -> RangeFamily:
    """Ranges of unit disks centered at grid points o + resolution*(i, j)
    strictly within distance 1 of o. Pure integer arithmetic."""
    points = [Point2.of(*p) for p in points]
    o = Point2.of(*o)
    h = Q(resolution)
    if h <= 0:
        raise ValueError("resolution must be positive")
    fam = RangeFamily(list(points), origin=o)
    L = h.denominator
    for p in points + [o]:
        L = math.lcm(L, p.x.denominator, p.y.denominator)
    H = int(h * L)
    ox, oy = int(o.x * L), int(o.y * L)
    kmax = int(1 / h)
    ks = np.arange(-kmax, kmax + 1, dtype=np.int64)
    big = (2 * kmax * H + 4 * L + max([abs(int(p.x * L)) + abs(int(p.y * L)) for p in points] + [0]) + abs(ox) + abs(oy))
    dtype = np.int64 if big * big * 4 < 2 ** 62 else object
    I, J = np.meshgrid(ks.astype(dtype), ks.astype(dtype), indexing="ij")
    dx = I * H
    dy = J * H
    L2 = L * L
    keep = dx * dx + dy * dy < L2
    gx = (dx[keep] + ox)
    gy = (dy[keep] + oy)
    codes = np.zeros(gx.shape, dtype=object if len(points) > 62 else np.int64)
    for k, p in enumerate(points):
        px, py = int(p.x * L), int(p.y * L)
        ex = gx - px
        ey = gy - py
        inside = (ex * ex + ey * ey) < L2
        codes = codes + np.where(inside, 1 << k, 0).astype(codes.dtype)
    uniq, first = np.unique(codes, return_index=True)
    for code, at in zip(uniq.tolist(), first.tolist()):
        members = frozenset(k for k in range(len(points)) if (int(code) >> k) & 1)
        z = Point2(Fraction(int(gx[at]), L), Fraction(int(gy[at]), L))
        fam.add(members, Witness(z, Fraction(1)))
    return fam
