"""Exact arithmetic and geometric predicates.

Coordinates are :class:`fractions.Fraction` values. Quantities that need one
square root (circle-circle intersections, radius comparisons) are handled by
:class:`QuadraticScalar` and decided by sign analysis plus squaring, never by
floating point.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple, Sequence

__all__ = [
    "Q", "Point2", "Circle", "QuadraticScalar", "Side", "Sign", "ArcOrder",
    "GeometryError", "IdenticalCircles", "NoRationalPointFound",
    "PointNotOnCircle", "PointOnBoundary", "DegenerateArc",
    "side_of_circle", "quadratic_sign", "circle_circle_intersections",
    "rational_point_on_circle_near", "arc_order", "arc_midpoint",
    "perturbation_radius", "lemma_step", "points_close", "circles_close",
    "dist_sq", "cross", "sqrt_bounds", "floor_pow2", "dyadic_below_sqrt",
    "bit_size",
]


def Q(value) -> Fraction:
    """Coerce ints, strings like ``"3/5"`` and Fractions to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted as exact coordinates")
    return Fraction(value)


class GeometryError(ValueError):
    pass


class IdenticalCircles(GeometryError):
    pass


class NoRationalPointFound(GeometryError):
    pass


class PointNotOnCircle(GeometryError):
    pass


class PointOnBoundary(GeometryError):
    pass


class DegenerateArc(GeometryError):
    pass


class Side(enum.Enum):
    INSIDE = -1
    ON = 0
    OUTSIDE = 1


class Sign(enum.IntEnum):
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1


class ArcOrder(enum.Enum):
    P_BEFORE_Q = "p<q"
    Q_BEFORE_P = "q<p"
    EQUAL = "="


class Point2(NamedTuple):
    x: Fraction
    y: Fraction

    @classmethod
    def of(cls, x, y) -> "Point2":
        return cls(Q(x), Q(y))

    def __add__(self, other):  # type: ignore[override]
        return Point2(self.x + other[0], self.y + other[1])

    def __sub__(self, other):
        return Point2(self.x - other[0], self.y - other[1])

    def scale(self, s) -> "Point2":
        return Point2(self.x * s, self.y * s)

    def dot(self, other) -> Fraction:
        return self.x * other[0] + self.y * other[1]

    def norm_sq(self) -> Fraction:
        return self.x * self.x + self.y * self.y

    def perp(self) -> "Point2":
        """Counterclockwise rotation by 90 degrees."""
        return Point2(-self.y, self.x)


def dist_sq(p, q) -> Fraction:
    dx = p[0] - q[0]
    dy = p[1] - q[1]
    return dx * dx + dy * dy


def cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


@dataclass(frozen=True)
class Circle:
    """Boundary of an open disk, carrying one rational point on itself."""

    center: Point2
    radius_sq: Fraction
    base_point: Point2

    def __post_init__(self):
        if self.radius_sq <= 0:
            raise GeometryError("radius_sq must be positive")
        if dist_sq(self.base_point, self.center) != self.radius_sq:
            raise GeometryError("base point is not on the circle")

    @classmethod
    def through(cls, center: Point2, point: Point2) -> "Circle":
        return cls(center, dist_sq(center, point), point)

    @classmethod
    def unit(cls, center: Point2) -> "Circle":
        return cls(center, Fraction(1), Point2(center.x + 1, center.y))

    def same_as(self, other: "Circle") -> bool:
        return self.center == other.center and self.radius_sq == other.radius_sq


def side_of_circle(p: Point2, c: Circle) -> Side:
    s = dist_sq(p, c.center) - c.radius_sq
    if s < 0:
        return Side.INSIDE
    if s > 0:
        return Side.OUTSIDE
    return Side.ON


# ---------------------------------------------------------------------------
# one square root


def _is_square(q: Fraction) -> bool:
    if q < 0:
        return False
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    return rn * rn == n and rd * rd == d


def _exact_sqrt(q: Fraction) -> Fraction:
    return Fraction(math.isqrt(q.numerator), math.isqrt(q.denominator))


@dataclass(frozen=True)
class QuadraticScalar:
    """The number ``a + b*sqrt(d)`` with rational a, b and radicand d >= 0."""

    a: Fraction
    b: Fraction = Fraction(0)
    d: Fraction = Fraction(0)

    def __post_init__(self):
        a, b, d = Q(self.a), Q(self.b), Q(self.d)
        if d < 0:
            raise GeometryError("negative radicand")
        if b != 0 and _is_square(d):
            a, b, d = a + b * _exact_sqrt(d), Fraction(0), Fraction(0)
        if b == 0:
            d = Fraction(0)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    def is_rational(self) -> bool:
        return self.b == 0

    def _radicand_with(self, other: "QuadraticScalar") -> Fraction:
        if self.b == 0:
            return other.d
        if other.b == 0 or other.d == self.d:
            return self.d
        raise GeometryError("mixed radicands")

    def _lift(self, other) -> "QuadraticScalar":
        if isinstance(other, QuadraticScalar):
            return other
        return QuadraticScalar(Q(other))

    def __add__(self, other):
        o = self._lift(other)
        return QuadraticScalar(self.a + o.a, self.b + o.b, self._radicand_with(o))

    __radd__ = __add__

    def __neg__(self):
        return QuadraticScalar(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        d = self._radicand_with(o)
        return QuadraticScalar(self.a * o.a + self.b * o.b * d,
                               self.a * o.b + self.b * o.a, d)

    __rmul__ = __mul__

    def sign(self) -> Sign:
        return quadratic_sign(self)

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(float(self.d))


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


def quadratic_sign(q: QuadraticScalar) -> Sign:
    sa = _sgn(q.a)
    sb = _sgn(q.b) if q.d != 0 else 0
    if sb == 0:
        return Sign(sa)
    if sa == 0 or sa == sb:
        return Sign(sb)
    lhs = q.a * q.a
    rhs = q.b * q.b * q.d
    if lhs > rhs:
        return Sign(sa)
    if lhs < rhs:
        return Sign(sb)
    return Sign.ZERO


def circle_circle_intersections(c1: Circle, c2: Circle):
    """Intersection points of two boundary circles.

    Returns ``(points, d)`` where ``points`` is a list of 0, 1 or 2 pairs of
    QuadraticScalars and ``d`` is their shared radicand.
    """
    if c1.same_as(c2):
        raise IdenticalCircles("circles coincide")
    dx = c2.center.x - c1.center.x
    dy = c2.center.y - c1.center.y
    D = dx * dx + dy * dy
    if D == 0:
        return [], Fraction(0)
    t = (D + c1.radius_sq - c2.radius_sq) / (2 * D)
    s = c1.radius_sq / D - t * t
    mx = c1.center.x + t * dx
    my = c1.center.y + t * dy
    if s < 0:
        return [], Fraction(0)
    if s == 0:
        return [(QuadraticScalar(mx), QuadraticScalar(my))], Fraction(0)
    p1 = (QuadraticScalar(mx, -dy, s), QuadraticScalar(my, dx, s))
    p2 = (QuadraticScalar(mx, dy, s), QuadraticScalar(my, -dx, s))
    if p1[0].is_rational() and p1[1].is_rational():
        s = Fraction(0)
    return [p1, p2], s


# ---------------------------------------------------------------------------
# rational bounds


def sqrt_bounds(x: Fraction, extra_bits: int = 8) -> tuple[Fraction, Fraction]:
    """Rationals lo <= sqrt(x) <= hi, relative width about 2**-extra_bits."""
    x = Q(x)
    if x < 0:
        raise ValueError("sqrt of negative")
    if x == 0:
        return Fraction(0), Fraction(0)
    n, d = x.numerator, x.denominator
    # scale so the integer root carries extra_bits of precision
    shift = max(0, extra_bits - (n.bit_length() - d.bit_length()) // 2)
    m = n * d << (2 * shift)
    s = math.isqrt(m)
    den = d << shift
    lo = Fraction(s, den)
    hi = lo if s * s == m else Fraction(s + 1, den)
    return lo, hi


def floor_pow2(x: Fraction) -> Fraction:
    """Largest power of two (any integer exponent) that is <= x."""
    x = Q(x)
    if x <= 0:
        raise ValueError("floor_pow2 needs a positive argument")
    k = x.numerator.bit_length() - x.denominator.bit_length()
    p = Fraction(2) ** k
    while p > x:
        p /= 2
    while p * 2 <= x:
        p *= 2
    return p


def dyadic_below_sqrt(x: Fraction) -> Fraction:
    """Largest power of two whose square is <= x."""
    p = floor_pow2(Q(x))
    # p <= x; now find 2**k with 4**k <= x
    k = p.numerator.bit_length() - 1 - (p.denominator.bit_length() - 1)
    r = Fraction(2) ** (k // 2)
    while r * r > x:
        r /= 2
    while 4 * r * r <= x:
        r *= 2
    return r


def bit_size(q: Fraction) -> int:
    return max(q.numerator.bit_length(), q.denominator.bit_length())


def points_close(p: Point2, q: Point2, eps: Fraction) -> bool:
    """Strict closeness |p - q| < eps."""
    return dist_sq(p, q) < eps * eps


def circles_close(c1: Circle, c2: Circle, eps: Fraction) -> bool:
    """Centers closer than eps and radii differing by less than eps."""
    if not points_close(c1.center, c2.center, eps):
        return False
    R1, R2 = c1.radius_sq, c2.radius_sq
    e2 = eps * eps
    # r2 < r1 + eps  <=>  2 eps sqrt(R1) + (R1 + eps^2 - R2) > 0
    if quadratic_sign(QuadraticScalar(R1 + e2 - R2, 2 * eps, R1)) <= 0:
        return False
    return quadratic_sign(QuadraticScalar(R2 + e2 - R1, 2 * eps, R2)) > 0


# ---------------------------------------------------------------------------
# rational points on circles


def _radial_candidates(c: Circle, direction: Point2, bits: int) -> Iterator[Point2]:
    """Rational points of ``c`` converging to the radial projection along ``direction``.

    Lines through the base point with rational slope meet the circle again in
    a rational point; the slope is swept through best rational approximations
    of the slope towards the (high precision) projection target.
    """
    w2 = direction.norm_sq()
    if w2 == 0:
        raise GeometryError("zero direction")
    lo, _ = sqrt_bounds(c.radius_sq / w2, extra_bits=bits)
    target = c.center + direction.scale(lo)
    base = c.base_point
    d = target - base
    if d.x == 0 and d.y == 0:
        yield base
        return
    rel = base - c.center
    steep = abs(d.y) > abs(d.x)
    slope = d.x / d.y if steep else d.y / d.x
    seen = set()
    for j in range(bits + 1):
        m = slope.limit_denominator(1 << j)
        if m in seen:
            continue
        seen.add(m)
        u = Point2(m, Fraction(1)) if steep else Point2(Fraction(1), m)
        s = -2 * rel.dot(u) / u.norm_sq()
        if s == 0:
            continue
        yield base + u.scale(s)


def _bits_for(eps: Fraction) -> int:
    return max(64, 2 * bit_size(eps) + 32)


def rational_point_on_circle_near(c: Circle, target: Point2, eps: Fraction,
                                  bits: int | None = None) -> Point2:
    """A rational point exactly on ``c`` within ``eps`` of ``target``."""
    eps = Q(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    if points_close(c.base_point, target, eps):
        return c.base_point
    direction = target - c.center
    if direction.norm_sq() == 0:
        raise NoRationalPointFound("target is the circle center")
    for cand in _radial_candidates(c, direction, bits or _bits_for(eps)):
        if points_close(cand, target, eps):
            return cand
    raise NoRationalPointFound(f"no rational point within {eps} of target")


def _angle_class(u, v) -> int:
    """Position of v relative to reference direction u: 0 same ray, 1 left
    half, 2 opposite ray, 3 right half."""
    cr = cross(u, v)
    if cr > 0:
        return 1
    if cr < 0:
        return 3
    return 0 if u[0] * v[0] + u[1] * v[1] > 0 else 2


def _ccw_cmp(u, v1, v2) -> int:
    """Compare counterclockwise angles of v1 and v2 measured from u."""
    k1, k2 = _angle_class(u, v1), _angle_class(u, v2)
    if k1 != k2:
        return -1 if k1 < k2 else 1
    if k1 in (0, 2):
        return 0
    cr = cross(v1, v2)
    return -1 if cr > 0 else (1 if cr < 0 else 0)


def _require_on(c: Circle, *pts):
    for p in pts:
        if side_of_circle(p, c) is not Side.ON:
            raise PointNotOnCircle(f"{p} is not on the circle")


def arc_order(c: Circle, reference: Point2, p: Point2, q: Point2) -> ArcOrder:
    _require_on(c, reference, p, q)
    r = _ccw_cmp(reference - c.center, p - c.center, q - c.center)
    if r < 0:
        return ArcOrder.P_BEFORE_Q
    if r > 0:
        return ArcOrder.Q_BEFORE_P
    return ArcOrder.EQUAL


def strictly_ccw(c: Circle, pts: Sequence[Point2], closed: bool = False) -> bool:
    """True if pts are distinct and appear in this counterclockwise order.

    With ``closed`` the last point may coincide with the first and then stands
    for a full turn.
    """
    if not pts:
        return True
    _require_on(c, *pts)
    ref = pts[0] - c.center
    body = list(pts)
    if closed and len(body) > 1 and body[-1] == body[0]:
        body = body[:-1]
    if any(_angle_class(ref, p - c.center) == 0 for p in body[1:]):
        return False
    return all(_ccw_cmp(ref, body[i] - c.center, body[i + 1] - c.center) < 0
               for i in range(1, len(body) - 1))


def arc_midpoint(c: Circle, p: Point2, q: Point2) -> Point2:
    """A rational point of ``c`` strictly inside the ccw arc from p to q,
    near its middle. With p == q the arc is the full circle minus p."""
    _require_on(c, p, q)
    u, v = p - c.center, q - c.center
    if p == q:
        direction = Point2(-u.x, -u.y)
        chord_sq = 4 * c.radius_sq
    else:
        cr = cross(u, v)
        if cr > 0:
            direction = u + v
        elif cr < 0:
            direction = Point2(-u.x - v.x, -u.y - v.y)
        else:
            direction = u.perp()
        chord_sq = dist_sq(p, q)
    tol_sq = chord_sq / 64
    bits = max(64, 2 * bit_size(chord_sq) + 48)
    lo, _ = sqrt_bounds(c.radius_sq / direction.norm_sq(), extra_bits=bits)
    ideal = c.center + direction.scale(lo)
    for cand in _radial_candidates(c, direction, bits):
        if dist_sq(cand, ideal) >= tol_sq:
            continue
        if strictly_ccw(c, [p, cand, q], closed=True):
            return cand
    raise NoRationalPointFound("arc too short for the precision budget")


# ---------------------------------------------------------------------------
# perturbation radius


def _gap_lower_bound(p: Point2, c: Circle) -> Fraction:
    """Rational lower bound on ||p - center| - radius| (positive)."""
    d2 = dist_sq(p, c.center)
    diff = abs(d2 - c.radius_sq)
    if diff == 0:
        raise PointOnBoundary(f"{p} lies on a circle boundary")
    _, hd = sqrt_bounds(d2)
    _, hr = sqrt_bounds(c.radius_sq)
    return diff / (hd + hr)


def perturbation_radius(points: Sequence[Point2], circles: Sequence[Circle],
                        cap: Fraction = Fraction(1)) -> Fraction:
    """A power of two eps such that eps-perturbing every point, center and
    radius keeps all inside/outside relations.

    Moving a point and a center by < eps each and the radius by < eps changes
    |p - center| - radius by < 3 eps, so a quarter of the smallest gap works.
    ``cap`` bounds the answer when there are no point/circle pairs.
    """
    best = Q(cap)
    for c in circles:
        for p in points:
            g = _gap_lower_bound(p, c) / 4
            if g < best:
                best = g
    return floor_pow2(best)


# ---------------------------------------------------------------------------
# the circle stepping lemma


def _push_direction(A: Point2, B: Point2, inner: Point2) -> Point2:
    """Normal of AB pointing to the side of ``inner``."""
    n = (B - A).perp()
    if cross(B - A, inner - A) * cross(B - A, n) < 0:
        n = Point2(-n.x, -n.y)
    return n


def lemma_step(c: Circle, a: Point2, bs: Sequence[Point2], cc: Point2,
               eps: Fraction, max_tries: int = 48):
    """Step a circle outwards over the arc holding ``bs``.

    ``a, bs..., cc`` must lie on ``c`` in counterclockwise order (``cc`` may
    equal ``a``). Returns ``(C2, moved)`` where C2 meets ``c`` exactly in its
    base point A (between a and bs[0]) and one point B (between bs[-1] and
    cc), is eps-close to ``c``, and each moved[i] lies on C2, outside ``c``,
    within eps of bs[i], in the same order. Every property is checked
    exactly before returning.
    """
    eps = Q(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    if not bs:
        raise DegenerateArc("no points to move")
    seq = [a, *bs, cc]
    try:
        ok = strictly_ccw(c, seq, closed=True)
    except PointNotOnCircle as exc:
        raise DegenerateArc(str(exc)) from exc
    if not ok:
        raise DegenerateArc("points are not in counterclockwise order")
    A = arc_midpoint(c, a, bs[0])
    B = arc_midpoint(c, bs[-1], cc)
    n = _push_direction(A, B, bs[0])
    # largest dyadic step with |s n| <= eps / 4
    s = dyadic_below_sqrt(eps * eps / (16 * n.norm_sq()))
    for _ in range(max_tries):
        center = c.center + n.scale(s)
        c2 = Circle.through(center, A)
        moved = _project_certified(c, c2, bs, eps, A, B)
        if moved is not None and _lemma_holds(c, c2, a, bs, cc, A, B, moved, eps):
            return c2, moved
        s /= 2
    raise NoRationalPointFound("lemma step did not certify within the try budget")


def _project_certified(c: Circle, c2: Circle, bs, eps, A: Point2, B: Point2):
    """Rational stand-ins for the central projections of bs onto c2.

    Each stand-in stays within a quarter of the smallest gap along
    A, bs..., B of the true projection, so the order survives.
    """
    chain = [A, *bs, B]
    gap = min(dist_sq(p, q) for p, q in zip(chain, chain[1:]))
    tol = min(eps, dyadic_below_sqrt(gap) / 4)
    bits = _bits_for(tol) + 2 * bit_size(c2.radius_sq) + 64
    out = []
    for b in bs:
        w = b - c2.center
        lo, _ = sqrt_bounds(c2.radius_sq / w.norm_sq(), extra_bits=bits)
        ideal = c2.center + w.scale(lo)
        for cand in _radial_candidates(c2, w, bits):
            if dist_sq(cand, ideal) >= tol * tol:
                continue
            if side_of_circle(cand, c) is Side.OUTSIDE and points_close(cand, b, eps):
                out.append(cand)
                break
        else:
            return None
    return out


def _lemma_holds(c, c2, a, bs, cc, A, B, moved, eps) -> bool:
    if not circles_close(c, c2, eps):
        return False
    if side_of_circle(A, c2) is not Side.ON or side_of_circle(B, c2) is not Side.ON:
        return False
    if not strictly_ccw(c, [a, A, *bs, B, cc], closed=True):
        return False
    for b, m in zip(bs, moved):
        if side_of_circle(m, c2) is not Side.ON or side_of_circle(m, c) is not Side.OUTSIDE:
            return False
        if not points_close(m, b, eps):
            return False
    return strictly_ccw(c2, [A, *moved, B])
