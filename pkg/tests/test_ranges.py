import itertools
import random
from fractions import Fraction as F

import pytest

from stabdisk.construction import realize_h3, realize_tree
from stabdisk.hypergraph import complete_mary_tree
from stabdisk.kernel import Circle, Point2, PointOnBoundary, dist_sq
from stabdisk.ranges import (
    DegenerateInput, DegeneratePosition, delaunay_graph, disk_ranges, grid_oracle_ranges,
    induced_hypergraph, monochromatic_disk_witness, stabbed_unit_disk_ranges, verify_realization,
)

from helpers import unit_qs

P = Point2.of


def center_oracle(points, step=F(1, 8), span=4):
    """Every range of an open disk centred on a grid point: for a fixed centre
    these are exactly the distance prefixes (ties enter together)."""
    out = {frozenset()}
    k = int(span / step)
    for i in range(-k, k + 1):
        for j in range(-k, k + 1):
            c = Point2(i * step, j * step)
            ds = sorted((dist_sq(p, c), idx) for idx, p in enumerate(points))
            cur = set()
            for pos, (d, idx) in enumerate(ds):
                cur.add(idx)
                if pos + 1 == len(ds) or ds[pos + 1][0] > d:
                    out.add(frozenset(cur))
    return out


def test_induced_hypergraph_basics():
    assert induced_hypergraph([P(0, 0)], []).edges == ()
    h = induced_hypergraph([P(0, 0), P(3, 0)], [Circle.unit(P(0, 0)), Circle.unit(P(3, 0))])
    assert h.edges == (frozenset({0}), frozenset({1}))
    with pytest.raises(PointOnBoundary):
        induced_hypergraph([P(1, 0)], [Circle.unit(P(0, 0))])


def test_induced_hypergraph_matches_per_point_predicates():
    rng = random.Random(3)
    pts = [P(F(rng.randint(-30, 30), 7), F(rng.randint(-30, 30), 7)) for _ in range(12)]
    circles = [Circle.through(P(F(rng.randint(-9, 9), 3), F(rng.randint(-9, 9), 3)), P(F(1, 11), F(2, 13)))
               for _ in range(8)]
    h = induced_hypergraph(pts, circles)
    for e, c in zip(h.edges, circles):
        assert e == {i for i, p in enumerate(pts) if dist_sq(p, c.center) < c.radius_sq}


def test_verify_realization_ok_and_corrupted():
    r = realize_tree(complete_mary_tree(2), Circle.unit(P(0, 0)), unit_qs(3), F(1, 8))
    assert verify_realization(r)
    k4 = realize_h3(2).realization
    assert verify_realization(k4)
    assert len(induced_hypergraph(k4.points, k4.circles).edges) == 6
    # push point 0 far away: every disk holding it now misses it
    bad = type(r)(tuple([P(5, 5)] + list(r.points[1:])), r.disks, r.anchor_circle, r.gamma, r.target)
    rep = verify_realization(bad)
    assert not rep and rep.mismatch.disk_index >= 0
    assert 0 in rep.mismatch.symmetric_difference


def test_disk_ranges_small():
    fam = disk_ranges([P(0, 0), P(1, 0)])
    assert fam.ranges == {frozenset(), frozenset({0}), frozenset({1}), frozenset({0, 1})}
    tri = [P(0, 0), P(2, 0), P(F(1, 3), F(3, 2))]
    fam = disk_ranges(tri)
    assert len(fam.ranges) == 8 and fam.recheck()
    assert center_oracle(tri) == fam.ranges
    with pytest.raises(DegenerateInput):
        disk_ranges([P(0, 0), P(0, 0)])


def test_disk_ranges_cocircular_square():
    sq = [P(1, 0), P(0, 1), P(-1, 0), P(0, -1)]
    fam = disk_ranges(sq)
    assert fam.recheck()
    assert frozenset({0, 2}) not in fam.ranges and frozenset({1, 3}) not in fam.ranges
    assert fam.ranges == center_oracle(sq)
    assert len(fam.ranges) == 14


def test_disk_ranges_random_against_oracle():
    rng = random.Random(8)
    for _ in range(6):
        pts = list({P(F(rng.randint(-8, 8), 4), F(rng.randint(-8, 8), 4)) for _ in range(5)})
        fam = disk_ranges(pts)
        assert fam.recheck()
        assert center_oracle(pts, step=F(1, 16), span=3) <= fam.ranges


def test_disk_ranges_collinear():
    pts = [P(0, 0), P(1, 1), P(3, 3)]
    fam = disk_ranges(pts)
    assert fam.recheck()
    assert frozenset({0, 2}) not in fam.ranges
    assert len(fam.ranges) == 1 + 3 + 2 + 1


def test_delaunay_examples():
    assert delaunay_graph([P(0, 0), P(2, 0), P(0, 2)]) == [(0, 1), (0, 2), (1, 2)]
    inner = [P(0, 0), P(4, 0), P(0, 4), P(1, 1)]
    assert len(delaunay_graph(inner)) == 6
    with pytest.raises(DegeneratePosition):
        delaunay_graph([P(1, 0), P(0, 1), P(-1, 0), P(0, -1)])


def test_monochromatic_disk_witness():
    k4 = realize_h3(2).realization
    fam = disk_ranges(k4.points)
    for col in itertools.product(range(3), repeat=4):
        found = monochromatic_disk_witness(k4.points, col, 2, fam)
        assert found is not None
        rng, w = found
        assert len({col[i] for i in rng}) == 1 and w.members(k4.points) == rng
    assert monochromatic_disk_witness(k4.points, [0, 0, 0, 0], 5) is None
    # two far clusters colored alternately: an oracle search agrees on existence
    pts = [P(0, 0), P(F(1, 10), 0), P(10, 0), P(F(101, 10), 0)]
    col = [0, 1, 0, 1]
    got = monochromatic_disk_witness(pts, col, 2)
    oracle = [r for r in center_oracle(pts, step=F(1, 4), span=12) if len(r) == 2 and len({col[i] for i in r}) == 1]
    assert (got is None) == (not oracle)


def test_stabbed_examples():
    o = P(0, 0)
    assert stabbed_unit_disk_ranges([P(3, 0)], o).ranges == {frozenset()}
    assert stabbed_unit_disk_ranges([P(F(1, 2), 0)], o).ranges == {frozenset(), frozenset({0})}
    with pytest.raises(DegenerateInput):
        stabbed_unit_disk_ranges([P(0, 0)], o)


def test_stabbed_witnesses_recheck_and_contain_origin():
    rng = random.Random(4)
    for _ in range(5):
        pts = list({P(F(rng.randint(-64, 64), 32), F(rng.randint(-64, 64), 32)) for _ in range(8)} - {P(0, 0)})
        o = P(F(1, 64), F(-1, 128))
        fam = stabbed_unit_disk_ranges(pts, o)
        assert fam.recheck()
        for w in fam.witnesses.values():
            assert dist_sq(w.center, o) < 1
        assert grid_oracle_ranges(pts, o, F(1, 32)).ranges <= fam.ranges


def test_grid_oracle_examples():
    assert grid_oracle_ranges([], P(0, 0), F(1, 4)).ranges == {frozenset()}
    coarse = grid_oracle_ranges([P(F(1, 2), 0)], P(0, 0), F(1, 2))
    assert coarse.ranges <= stabbed_unit_disk_ranges([P(F(1, 2), 0)], P(0, 0)).ranges


def test_range_family_json():
    fam = stabbed_unit_disk_ranges([P(F(1, 2), 0), P(0, F(3, 4))], P(0, 0))
    doc = fam.to_json()
    assert len(doc["ranges"]) == len(fam.ranges)
    assert all("/" in doc["ranges"][0]["radius_sq"] for _ in [0])


def test_stabbed_range_seen_only_from_a_vertex():
    # the four outer circles cover a punctured neighborhood of the origin, so
    # {inner point} is realized by the disk centred exactly there and nowhere else
    pts = [P(1, 0), P(-1, 0), P(0, 1), P(0, -1), P(F(1, 2), 0)]
    for o in (P(0, 0), P(F(1, 8), F(1, 16))):
        fam = stabbed_unit_disk_ranges(pts, o)
        assert frozenset({4}) in fam.ranges and fam.recheck()
        assert fam.witnesses[frozenset({4})].center == P(0, 0)
        assert grid_oracle_ranges(pts, o, F(1, 512)).ranges == fam.ranges
