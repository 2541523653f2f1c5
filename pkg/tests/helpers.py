import math
from fractions import Fraction as F

from stabdisk.kernel import Circle, Point2, rational_point_on_circle_near

UNIT = Circle.unit(Point2.of(0, 0))


def unit_qs(n, degrees=None):
    """Rational points on the unit circle, counterclockwise."""
    angles = degrees or [360 * (j + 0.5) / n for j in range(n)]
    out = []
    for a in angles:
        t = math.radians(a)
        out.append(rational_point_on_circle_near(UNIT, Point2(F(math.cos(t)), F(math.sin(t))), F(1, 10 ** 4)))
    return out
