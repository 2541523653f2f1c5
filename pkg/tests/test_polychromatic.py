import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from stabdisk.kernel import Circle, IdenticalCircles, Point2
from stabdisk.polychromatic import (
    NoColoringFound, OriginInPointSet, color_stabbed_unit_disks, polychromatic_color,
    quarter_crossing_count, quarter_partition, quarter_traces, verify_polychromatic,
)
from stabdisk.ranges import RangeFamily, stabbed_unit_disk_ranges

P = Point2.of
O = P(0, 0)


def random_points(rng, n, half=96, den=64):
    pts = set()
    while len(pts) < n:
        p = P(F(rng.randint(-half, half), den), F(rng.randint(-half, half), den))
        if p != O:
            pts.add(p)
    return sorted(pts)


def test_quarter_partition_examples():
    d = quarter_partition([P(1, 1), P(-1, 1), P(-1, -1), P(1, -1)], O)
    assert d.parts == ((0,), (1,), (2,), (3,))
    assert quarter_partition([P(1, 0)], O).quarter_of == (1,)
    # boundary points go counterclockwise-next
    assert quarter_partition([P(0, 1), P(-1, 0), P(0, -1)], O).quarter_of == (2, 3, 4)
    with pytest.raises(OriginInPointSet):
        quarter_partition([O], O)


def test_quarter_partition_rotated_axis():
    d = quarter_partition([P(1, 1), P(-1, 1)], O, axis=(1, 1))
    assert d.quarter_of == (1, 2)


def test_quarter_partition_is_a_partition():
    rng = random.Random(1)
    pts = random_points(rng, 100)
    d = quarter_partition(pts, O)
    flat = [i for part in d.parts for i in part]
    assert sorted(flat) == list(range(100))


def test_quarter_traces():
    fam = RangeFamily([P(1, 1), P(-1, 1)], {frozenset()}, {})
    d = quarter_partition(fam.points, O)
    assert quarter_traces(d, fam) == [{frozenset()}] * 4
    fam.ranges.add(frozenset({0, 1}))
    tr = quarter_traces(d, fam)
    assert frozenset({0}) in tr[0] and frozenset({1}) in tr[1]


def test_traces_come_from_witnesses():
    rng = random.Random(2)
    pts = random_points(rng, 25)
    fam = stabbed_unit_disk_ranges(pts, O)
    d = quarter_partition(pts, O)
    for q, system in enumerate(quarter_traces(d, fam)):
        part = frozenset(d.parts[q])
        for tr in system:
            assert any(fam.witnesses[r].members(pts) & part == tr for r in fam.ranges)


def test_polychromatic_color_examples():
    assert polychromatic_color([0, 1, 2], [{0, 1, 2}], 1) == {0: 0, 1: 0, 2: 0}
    col = polychromatic_color([0, 1, 2], [{0, 1, 2}], 2, 3)
    assert set(col.values()) == {0, 1}
    with pytest.raises(NoColoringFound):
        # every pair must see both colors on a triangle: impossible
        polychromatic_color([0, 1, 2], [{0, 1}, {1, 2}, {0, 2}], 2, 2)


def test_polychromatic_color_random_trace():
    rng = random.Random(7)
    pts = random_points(rng, 20, half=64)
    fam = stabbed_unit_disk_ranges(pts, O)
    d = quarter_partition(pts, O)
    for part, system in zip(d.parts, quarter_traces(d, fam)):
        col = polychromatic_color(part, system, 3, 5)
        assert set(col) == set(part) and set(col.values()) <= {0, 1, 2}
        for s in system:
            if len(s) >= 5:
                assert {col[v] for v in s} == {0, 1, 2}


def test_plugin_solver_is_used():
    calls = []

    def solver(ground, system, k, threshold):
        calls.append(len(system))
        return {v: i % k for i, v in enumerate(ground)}

    col = polychromatic_color([0, 1, 2, 3], [{0, 1, 2}, {1, 2, 3}], 2, solver=solver)
    assert calls == [2] and col == {0: 0, 1: 1, 2: 0, 3: 1}


def test_color_and_verify_end_to_end():
    rng = random.Random(9)
    pts = random_points(rng, 60)
    fam = stabbed_unit_disk_ranges(pts, O)
    for k in (1, 2, 3):
        col = color_stabbed_unit_disks(pts, O, k, family=fam)
        assert len(col) == 60 and set(col) <= set(range(k))
        assert verify_polychromatic(pts, O, k, col, family=fam) == []


def test_verify_reports_constructed_fault():
    rng = random.Random(10)
    pts = random_points(rng, 40, half=48)
    fam = stabbed_unit_disk_ranges(pts, O)
    bad = verify_polychromatic(pts, O, 2, [0] * 40, 9, family=fam)
    assert bad and all(len(v.members) >= 9 and v.colors == {0} for v in bad)
    assert verify_polychromatic(pts, O, 2, [0] * 40, 41, family=fam) == []


def test_crossing_count_examples():
    d = quarter_partition([], O)
    c = quarter_crossing_count(Circle.unit(P(F(1, 2), 0)), Circle.unit(P(F(-1, 2), 0)), d)
    assert max(c) == 1 and sum(c) == 2
    tangent = quarter_crossing_count(Circle.unit(P(1, 1)), Circle.unit(P(1, -1)), d, check_stabbed=False)
    assert tangent == [1, 0, 0, 0]
    with pytest.raises(IdenticalCircles):
        quarter_crossing_count(Circle.unit(P(F(1, 3), 0)), Circle.unit(P(F(1, 3), 0)), d)
    with pytest.raises(ValueError):
        quarter_crossing_count(Circle.unit(P(3, 0)), Circle.unit(P(F(1, 3), 0)), d)


small = st.fractions(min_value=-1, max_value=1, max_denominator=2 ** 12)


@settings(max_examples=300)
@given(small, small, small, small, st.sampled_from([(1, 0), (1, 1), (3, 4), (-2, 1)]))
def test_crossings_at_most_one_per_quarter(x1, y1, x2, y2, axis):
    if x1 * x1 + y1 * y1 >= 1 or x2 * x2 + y2 * y2 >= 1 or (x1, y1) == (x2, y2):
        return
    d = quarter_partition([], O, axis)
    assert max(quarter_crossing_count(Circle.unit(P(x1, y1)), Circle.unit(P(x2, y2)), d)) <= 1
