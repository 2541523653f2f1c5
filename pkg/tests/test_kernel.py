import random
from fractions import Fraction as F

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from stabdisk.kernel import (
    ArcOrder, Circle, DegenerateArc, GeometryError, IdenticalCircles, Point2, PointNotOnCircle,
    PointOnBoundary, QuadraticScalar, Side, Sign, arc_midpoint, arc_order,
    circle_circle_intersections, circles_close, floor_pow2, lemma_step, perturbation_radius,
    points_close, quadratic_sign, rational_point_on_circle_near, side_of_circle, sqrt_bounds,
    strictly_ccw,
)

O = Point2.of(0, 0)
UNIT = Circle.unit(O)
rats = st.fractions(min_value=-50, max_value=50, max_denominator=1000)


def test_side_of_circle_examples():
    assert side_of_circle(Point2.of(0, 0), UNIT) is Side.INSIDE
    assert side_of_circle(Point2.of(1, 0), UNIT) is Side.ON
    assert side_of_circle(Point2.of(F(3, 2), 0), UNIT) is Side.OUTSIDE


def test_circle_rejects_bad_base_point():
    with pytest.raises(GeometryError):
        Circle(O, F(1), Point2.of(1, 1))


@given(rats, rats, rats, rats, st.fractions(min_value=F(1, 100), max_value=10, max_denominator=100),
       rats, rats, st.fractions(min_value=F(1, 10), max_value=5, max_denominator=50))
def test_side_invariant_under_translation_and_scaling(px, py, cx, cy, r2, tx, ty, s):
    c = Circle.through(Point2(cx, cy), Point2(cx + r2, cy))
    p = Point2(px, py)
    moved_c = Circle.through(Point2(s * cx + tx, s * cy + ty), Point2(s * (cx + r2) + tx, s * cy + ty))
    assert side_of_circle(p, c) is side_of_circle(Point2(s * px + tx, s * py + ty), moved_c)


def test_quadratic_sign_examples():
    assert quadratic_sign(QuadraticScalar(1, -1, 2)) is Sign.NEGATIVE
    assert quadratic_sign(QuadraticScalar(0, 0, 7)) is Sign.ZERO
    assert quadratic_sign(QuadraticScalar(3, -2, 2)) is Sign.POSITIVE


def test_quadratic_scalar_normalizes_square_radicand():
    q = QuadraticScalar(1, 2, F(9, 4))
    assert (q.a, q.b, q.d) == (4, 0, 0)


@settings(max_examples=400)
@given(rats, rats, st.fractions(min_value=0, max_value=100, max_denominator=1000))
def test_quadratic_sign_matches_128_bit_intervals(a, b, d):
    q = QuadraticScalar(a, b, d)
    with mpmath.workprec(128):
        iv = mpmath.iv
        val = iv.mpf([a.numerator, a.numerator]) / a.denominator + \
            iv.mpf([b.numerator, b.numerator]) / b.denominator * \
            iv.sqrt(iv.mpf([d.numerator, d.numerator]) / d.denominator)
        if val.a > 0:
            assert quadratic_sign(q) is Sign.POSITIVE
        elif val.b < 0:
            assert quadratic_sign(q) is Sign.NEGATIVE


def _on(pt, c):
    x, y = pt
    return (x - c.center.x) * (x - c.center.x) + (y - c.center.y) * (y - c.center.y) - c.radius_sq


def test_intersections_tangent():
    pts, _ = circle_circle_intersections(UNIT, Circle.unit(Point2.of(2, 0)))
    assert len(pts) == 1
    assert float(pts[0][0]) == 1 and float(pts[0][1]) == 0


def test_intersections_two_points_substitute_exactly():
    c2 = Circle.unit(Point2.of(1, 0))
    pts, d = circle_circle_intersections(UNIT, c2)
    assert len(pts) == 2 and d == F(3, 4)
    for pt in pts:
        assert pt[0].a == F(1, 2) and pt[0].b == 0
        assert quadratic_sign(_on(pt, UNIT)) is Sign.ZERO
        assert quadratic_sign(_on(pt, c2)) is Sign.ZERO


def test_intersections_disjoint_and_identical():
    assert circle_circle_intersections(UNIT, Circle.unit(Point2.of(3, 0)))[0] == []
    with pytest.raises(IdenticalCircles):
        circle_circle_intersections(UNIT, Circle.unit(O))


@given(rats, rats, st.integers(1, 40), rats, rats, st.integers(1, 40))
def test_intersections_substitute_random(x1, y1, r1, x2, y2, r2):
    c1 = Circle.through(Point2(x1, y1), Point2(x1 + r1, y1))
    c2 = Circle.through(Point2(x2, y2), Point2(x2, y2 + F(r2, 3)))
    if c1.same_as(c2):
        return
    pts, _ = circle_circle_intersections(c1, c2)
    for pt in pts:
        assert quadratic_sign(QuadraticScalar(0) + _on(pt, c1)) is Sign.ZERO
        assert quadratic_sign(QuadraticScalar(0) + _on(pt, c2)) is Sign.ZERO


def test_rational_point_examples():
    assert rational_point_on_circle_near(UNIT, Point2.of(1, 0), F(1, 10)) == Point2.of(1, 0)
    p = rational_point_on_circle_near(UNIT, Point2.of(0, 1), F(1, 10))
    assert side_of_circle(p, UNIT) is Side.ON and points_close(p, Point2.of(0, 1), F(1, 10))
    c = Circle(O, F(2), Point2.of(1, 1))
    q = rational_point_on_circle_near(c, Point2.of(-1, -1), F(1, 4))
    assert side_of_circle(q, c) is Side.ON and points_close(q, Point2.of(-1, -1), F(1, 4))


@given(st.floats(0, 6.283), st.integers(2, 60))
def test_rational_point_near_random_angle(theta, bits):
    import math
    eps = F(1, 2 ** bits)
    target = Point2(F(math.cos(theta)), F(math.sin(theta)))
    p = rational_point_on_circle_near(UNIT, target, eps + F(1, 2 ** 50))
    assert side_of_circle(p, UNIT) is Side.ON


def test_arc_order_examples():
    e, n, w = Point2.of(1, 0), Point2.of(0, 1), Point2.of(-1, 0)
    assert arc_order(UNIT, e, n, w) is ArcOrder.P_BEFORE_Q
    assert arc_order(UNIT, e, n, n) is ArcOrder.EQUAL
    assert arc_order(UNIT, n, w, e) is ArcOrder.P_BEFORE_Q
    assert arc_order(UNIT, e, w, n) is ArcOrder.Q_BEFORE_P
    with pytest.raises(PointNotOnCircle):
        arc_order(UNIT, e, Point2.of(2, 0), n)


def test_arc_order_against_angles():
    import math
    rng = random.Random(5)
    pts = [rational_point_on_circle_near(UNIT, Point2(F(math.cos(t)), F(math.sin(t))), F(1, 10 ** 6))
           for t in (rng.uniform(0, 2 * math.pi) for _ in range(30))]
    ref = pts[0]
    ang = {p: (math.atan2(p.y, p.x) - math.atan2(ref.y, ref.x)) % (2 * math.pi) for p in pts}
    for p in pts:
        for q in pts:
            if abs(ang[p] - ang[q]) < 1e-9:
                continue
            want = ArcOrder.P_BEFORE_Q if ang[p] < ang[q] else ArcOrder.Q_BEFORE_P
            assert arc_order(UNIT, ref, p, q) is want


def test_arc_midpoint_inside_arc():
    e, n = Point2.of(1, 0), Point2.of(0, 1)
    m = arc_midpoint(UNIT, e, n)
    assert strictly_ccw(UNIT, [e, m, n])
    full = arc_midpoint(UNIT, e, e)
    assert full != e and side_of_circle(full, UNIT) is Side.ON


def test_sqrt_bounds_and_floor_pow2():
    lo, hi = sqrt_bounds(F(2))
    assert lo * lo <= 2 <= hi * hi
    assert floor_pow2(F(3)) == 2 and floor_pow2(F(1, 3)) == F(1, 4) and floor_pow2(F(1)) == 1


def test_perturbation_radius_examples():
    e1 = perturbation_radius([Point2.of(3, 0)], [UNIT])
    assert 0 < e1 <= F(1, 2) and e1 == floor_pow2(e1)
    e2 = perturbation_radius([O], [UNIT])
    assert 0 < e2 <= F(1, 4)
    with pytest.raises(PointOnBoundary):
        perturbation_radius([Point2.of(1, 0)], [UNIT])


def test_perturbation_radius_soundness_1000_samples():
    rng = random.Random(11)

    def jitter(eps):
        # a displacement strictly shorter than eps
        return (eps * F(rng.randint(-999, 999), 1415), eps * F(rng.randint(-999, 999), 1415))

    done = 0
    while done < 1000:
        pts = [Point2(F(rng.randint(-40, 40), 8), F(rng.randint(-40, 40), 8)) for _ in range(4)]
        circles = []
        for _ in range(3):
            r = F(rng.randint(1, 24), 8)
            c = Point2(F(rng.randint(-24, 24), 8), F(rng.randint(-24, 24), 8))
            circles.append((c, r))
        cs = [Circle.through(c, Point2(c.x + r, c.y)) for c, r in circles]
        if any(side_of_circle(p, c) is Side.ON for p in pts for c in cs):
            continue
        eps = perturbation_radius(pts, cs)
        before = [[side_of_circle(p, c) for c in cs] for p in pts]
        moved_pts = [Point2(p.x + dx, p.y + dy) for p, (dx, dy) in ((p, jitter(eps)) for p in pts)]
        moved_cs = []
        for c, r in circles:
            dx, dy = jitter(eps)
            r2 = r + eps * F(rng.randint(-999, 999), 1000)
            center = Point2(c.x + dx, c.y + dy)
            moved_cs.append(Circle.through(center, Point2(center.x + r2, center.y)))
        after = [[side_of_circle(p, c) for c in moved_cs] for p in moved_pts]
        assert before == after
        done += 1


def _check_lemma(c, a, bs, cc, eps, c2, moved):
    assert circles_close(c, c2, eps)
    pts, _ = circle_circle_intersections(c, c2)
    assert len(pts) == 2
    for b, m in zip(bs, moved):
        assert side_of_circle(m, c2) is Side.ON
        assert side_of_circle(m, c) is Side.OUTSIDE
        assert points_close(m, b, eps)
    assert strictly_ccw(c2, moved)


def test_lemma_step_single_point():
    a, b, cc = Point2.of(1, 0), Point2.of(0, 1), Point2.of(-1, 0)
    c2, moved = lemma_step(UNIT, a, [b], cc, F(1, 10))
    _check_lemma(UNIT, a, [b], cc, F(1, 10), c2, moved)
    A = c2.base_point
    assert strictly_ccw(UNIT, [a, A, b])


def test_lemma_step_three_points_and_errors():
    bs = [Point2.of(F(4, 5), F(3, 5)), Point2.of(0, 1), Point2.of(F(-4, 5), F(3, 5))]
    a, cc = Point2.of(1, 0), Point2.of(-1, 0)
    c2, moved = lemma_step(UNIT, a, bs, cc, F(1, 10))
    _check_lemma(UNIT, a, bs, cc, F(1, 10), c2, moved)
    with pytest.raises(ValueError):
        lemma_step(UNIT, a, bs, cc, F(0))
    with pytest.raises(DegenerateArc):
        lemma_step(UNIT, a, list(reversed(bs)), cc, F(1, 10))
