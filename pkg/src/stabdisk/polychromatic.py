"""Polychromatic colorings of points with respect to stabbed unit disks.

The plane is cut into four quarters by two perpendicular lines through the
stabbing point o. Inside one quarter the traces of stabbed unit disks behave
like pseudohalfplanes, so every trace with at least 2k-1 points can be made
to see all k colors. Any range with 8k-7 points has that many in one quarter.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .kernel import (
    Circle, GeometryError, Point2, QuadraticScalar, Side, circle_circle_intersections,
    quadratic_sign, side_of_circle,
)
from .ranges import RangeFamily, Witness, stabbed_unit_disk_ranges


class OriginInPointSet(GeometryError):
    pass


class NoColoringFound(RuntimeError):
    pass


@dataclass(frozen=True)
class QuarterDecomposition:
    """Quarter i (1..4) holds the directions at angle [(i-1)pi/2, i pi/2)
    from ``axis``; a point on a dividing line goes to the quarter
    counterclockwise after it."""

    origin: Point2
    axis: Point2
    quarter_of: tuple
    parts: tuple

    @property
    def normal(self) -> Point2:
        return self.axis.perp()

    def quarter(self, x, y) -> int:
        """Quarter of the point (x, y); coordinates may be QuadraticScalars."""
        dx, dy = x - self.origin.x, y - self.origin.y
        u = _sign(dx * self.axis.x + dy * self.axis.y)
        v = _sign(dx * self.normal.x + dy * self.normal.y)
        return _quarter_from_signs(u, v)


def _sign(x) -> int:
    if isinstance(x, QuadraticScalar):
        return int(quadratic_sign(x))
    return (x > 0) - (x < 0)


def _quarter_from_signs(u: int, v: int) -> int:
    if u == 0 and v == 0:
        raise OriginInPointSet("the origin has no quarter")
    if u > 0 and v >= 0:
        return 1
    if u <= 0 and v > 0:
        return 2
    if u < 0 and v <= 0:
        return 3
    return 4


def quarter_partition(points: Sequence, o, axis=(1, 0)) -> QuarterDecomposition:
    o = Point2.of(*o)
    axis = Point2.of(*axis)
    if axis == Point2.of(0, 0):
        raise ValueError("axis direction must be nonzero")
    pts = [Point2.of(*p) for p in points]
    if o in pts:
        raise OriginInPointSet("o is one of the points")
    tmp = QuarterDecomposition(o, axis, (), ())
    q = tuple(tmp.quarter(p.x, p.y) for p in pts)
    parts = tuple(tuple(i for i, qi in enumerate(q) if qi == k) for k in (1, 2, 3, 4))
    return QuarterDecomposition(o, axis, q, parts)


def quarter_traces(decomp: QuarterDecomposition, family: RangeFamily) -> list[set]:
    """For each quarter, the distinct intersections of the ranges with it."""
    out = []
    for part in decomp.parts:
        ps = frozenset(part)
        out.append({r & ps for r in family.ranges})
    return out


Solver = Callable[[list, list, int, int], dict]


def backtracking_solver(ground: list, system: list, k: int, threshold: int) -> dict | None:
    """Complete search for a coloring in which each set of ``system`` (all
    of size >= threshold) sees all k colors. Returns None if none exists."""
    idx = {v: i for i, v in enumerate(ground)}
    n = len(ground)
    sets = [[idx[v] for v in s] for s in system]
    inc: list[list[int]] = [[] for _ in range(n)]
    for j, s in enumerate(sets):
        for v in s:
            inc[v].append(j)
    color = [-1] * n
    cnt = [[0] * k for _ in sets]
    free = [len(s) for s in sets]
    missing = [k] * len(sets)

    def assign(v: int, c: int, trail: list) -> bool:
        color[v] = c
        trail.append(v)
        ok = True
        for j in inc[v]:
            free[j] -= 1
            if cnt[j][c] == 0:
                missing[j] -= 1
            cnt[j][c] += 1
            if missing[j] > free[j]:
                ok = False
        return ok

    def undo(trail: list, upto: int) -> None:
        while len(trail) > upto:
            v = trail.pop()
            c = color[v]
            for j in inc[v]:
                cnt[j][c] -= 1
                if cnt[j][c] == 0:
                    missing[j] += 1
                free[j] += 1
            color[v] = -1

    def propagate(trail: list) -> bool:
        # a set whose free vertices are exactly as many as its missing colors
        # forces a single remaining vertex
        changed = True
        while changed:
            changed = False
            for j, s in enumerate(sets):
                if missing[j] > free[j]:
                    return False
                if free[j] == 1 and missing[j] == 1:
                    v = next(u for u in s if color[u] < 0)
                    c = next(x for x in range(k) if cnt[j][x] == 0)
                    if not assign(v, c, trail):
                        return False
                    changed = True
        return True

    def solve(trail: list, used: int) -> bool:
        best, slack = -1, None
        for j in range(len(sets)):
            if missing[j] == 0:
                continue
            sl = free[j] - missing[j]
            if slack is None or sl < slack:
                best, slack = j, sl
                if sl == 0:
                    break
        if best < 0:
            return True
        j = best
        v = max((u for u in sets[j] if color[u] < 0), key=lambda u: len(inc[u]))
        need = [c for c in range(k) if cnt[j][c] == 0]
        rest = [c for c in range(k) if cnt[j][c] > 0]
        for c in need + rest:
            if c > used + 1:
                # colors above ``used`` are still interchangeable
                continue
            mark = len(trail)
            if assign(v, c, trail) and propagate(trail) and \
                    solve(trail, max(used, max(color[u] for u in trail[mark:]))):
                return True
            undo(trail, mark)
        return False

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 4 * n + 1000))
    try:
        trail: list = []
        if not propagate(trail) or not solve(trail, -1):
            return None
    finally:
        sys.setrecursionlimit(limit)
    return {ground[i]: (color[i] if color[i] >= 0 else 0) for i in range(n)}


def _minimal_sets(sets: Iterable[frozenset]) -> list[frozenset]:
    out: list[frozenset] = []
    for s in sorted(set(sets), key=len):
        if not any(t <= s for t in out):
            out.append(s)
    return out


def polychromatic_color(ground: Sequence, system: Iterable, k: int, threshold: int | None = None,
                        solver: Solver | None = None) -> dict:
    """Color ``ground`` with colors 0..k-1 so that every member of ``system``
    with at least ``threshold`` (default 2k-1) elements gets all k colors."""
    if k < 1:
        raise ValueError("k must be positive")
    if threshold is None:
        threshold = 2 * k - 1
    ground = list(ground)
    gs = set(ground)
    big = [frozenset(s) for s in system if len(s) >= threshold]
    for s in big:
        if not s <= gs:
            raise ValueError("system member outside the ground set")
    if k == 1:
        return {v: 0 for v in ground}
    if any(len(s) < k for s in big):
        raise NoColoringFound("a set is smaller than k")
    res = (solver or backtracking_solver)(ground, _minimal_sets(big), k, threshold)
    if res is None:
        raise NoColoringFound("no polychromatic coloring of this set system")
    if set(res) != gs or any(not 0 <= c < k for c in res.values()):
        raise NoColoringFound("solver returned an invalid coloring")
    return res


def color_stabbed_unit_disks(points: Sequence, o, k: int, axis=(1, 0),
                             family: RangeFamily | None = None,
                             solver: Solver | None = None) -> list[int]:
    """Colors 0..k-1 such that every unit disk containing o and at least
    8k-7 of the points contains all k colors."""
    pts = [Point2.of(*p) for p in points]
    decomp = quarter_partition(pts, o, axis)
    if k == 1:
        return [0] * len(pts)
    if family is None:
        family = stabbed_unit_disk_ranges(pts, o)
    colors = [0] * len(pts)
    for part, system in zip(decomp.parts, quarter_traces(decomp, family)):
        if not part:
            continue
        res = polychromatic_color(part, system, k, 2 * k - 1, solver)
        for v, c in res.items():
            colors[v] = c
    return colors


@dataclass(frozen=True)
class Violation:
    members: frozenset
    witness: Witness
    colors: frozenset


def verify_polychromatic(points: Sequence, o, k: int, coloring: Sequence[int],
                         threshold: int | None = None, family: RangeFamily | None = None,
                         axis=(1, 0)) -> list[Violation]:
    """Every stabbed unit disk range with >= threshold points sees k colors.

    Also checks the pigeonhole fact behind the threshold 8k-7: such a range
    has at least 2k-1 points in one quarter.
    """
    pts = [Point2.of(*p) for p in points]
    if len(coloring) != len(pts):
        raise ValueError("coloring must give one color per point")
    if threshold is None:
        threshold = 8 * k - 7
    if threshold > len(pts):
        return []
    if family is None:
        family = stabbed_unit_disk_ranges(pts, o)
    decomp = quarter_partition(pts, o, axis)
    out = []
    for rng in sorted(family.ranges, key=lambda r: (len(r), sorted(r))):
        if len(rng) < threshold:
            continue
        if len(rng) >= 8 * k - 7:
            most = max(sum(1 for v in rng if decomp.quarter_of[v] == q) for q in (1, 2, 3, 4))
            if most < 2 * k - 1:
                raise ArithmeticError("pigeonhole bound violated")
        cols = frozenset(coloring[v] for v in rng)
        if len(cols) < k:
            out.append(Violation(rng, family.witnesses[rng], cols))
    return out


def quarter_crossing_count(c1: Circle, c2: Circle, decomp: QuarterDecomposition,
                           check_stabbed: bool = True) -> list[int]:
    """Number of boundary intersection points of c1 and c2 in each quarter
    (index 0 is quarter 1). A tangency counts once."""
    if check_stabbed:
        for c in (c1, c2):
            if c.radius_sq != 1:
                raise ValueError("circles must have unit radius")
            if side_of_circle(decomp.origin, c) is not Side.INSIDE:
                raise ValueError("circles must contain the origin")
    pts, _ = circle_circle_intersections(c1, c2)
    counts = [0, 0, 0, 0]
    for x, y in pts:
        counts[decomp.quarter(x, y) - 1] += 1
    return counts
