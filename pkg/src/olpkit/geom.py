"""Exact planar predicates over integer and rational coordinates.

Every function here is division-free (except explicit normalization
helpers), so inputs may mix int and Fraction freely and results stay
exact.  No floating point is used anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Optional, Tuple, Union

Scalar = Union[int, Fraction]
Point = Tuple[Scalar, Scalar]


def sign(x: Scalar) -> int:
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


def cross(o: Point, a: Point, b: Point) -> Scalar:
    """Cross product of (a - o) with (b - o)."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def orientation(a: Point, b: Point, c: Point) -> int:
    """+1 for a left turn a->b->c, -1 for a right turn, 0 if collinear."""
    return sign(cross(a, b, c))


def on_segment(p: Point, a: Point, b: Point) -> bool:
    """True iff p lies on the closed segment ab (degenerate ab allowed)."""
    if orientation(a, b, p) != 0:
        return False
    return (min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def segment_intersection(p1: Point, p2: Point, q1: Point, q2: Point):
    """Classify how the closed segments p1p2 and q1q2 intersect.

    Returns one of:
      ("none", None)      no common point
      ("cross", None)     proper crossing, interior to both segments
      ("overlap", None)   collinear with a shared sub-segment
      ("point", pt)       touching at the single point pt
    """
    d1 = orientation(q1, q2, p1)
    d2 = orientation(q1, q2, p2)
    d3 = orientation(p1, p2, q1)
    d4 = orientation(p1, p2, q2)
    if d1 * d2 < 0 and d3 * d4 < 0:
        return "cross", None
    if d1 == 0 and d2 == 0 and d3 == 0 and d4 == 0:
        # Collinear: compare extents along the axis the line varies in.
        axis = 0 if not (p1[0] == p2[0] == q1[0] == q2[0]) else 1
        plo, phi = sorted((p1[axis], p2[axis]))
        qlo, qhi = sorted((q1[axis], q2[axis]))
        lo, hi = max(plo, qlo), min(phi, qhi)
        if lo > hi:
            return "none", None
        if lo < hi:
            return "overlap", None
        for pt in (p1, p2, q1, q2):
            if pt[axis] == lo:
                return "point", pt
        raise AssertionError("unreachable")
    touches = []
    if d1 == 0 and on_segment(p1, q1, q2):
        touches.append(p1)
    if d2 == 0 and on_segment(p2, q1, q2):
        touches.append(p2)
    if d3 == 0 and on_segment(q1, p1, p2):
        touches.append(q1)
    if d4 == 0 and on_segment(q2, p1, p2):
        touches.append(q2)
    if not touches:
        return "none", None
    first = touches[0]
    for pt in touches[1:]:
        if pt != first:
            # Two distinct touch points without full collinearity cannot
            # happen for straight segments; be conservative if it does.
            return "overlap", None
    return "point", first


def primitive_direction(d: Point) -> Tuple[int, int]:
    """Scale a nonzero vector to coprime integers, preserving its sign."""
    dx, dy = Fraction(d[0]), Fraction(d[1])
    if dx == 0 and dy == 0:
        raise ValueError("zero vector has no direction")
    den = lcm(dx.denominator, dy.denominator)
    ix, iy = int(dx * den), int(dy * den)
    g = gcd(ix, iy)
    return ix // g, iy // g


def half_plane(d: Tuple[int, int]) -> int:
    """0 for directions in the upper half plane (or +x axis), else 1."""
    if d[1] > 0 or (d[1] == 0 and d[0] > 0):
        return 0
    return 1


def denominator_scale(points: Iterable[Point]) -> int:
    """Least common multiple of all coordinate denominators."""
    den = 1
    for x, y in points:
        if isinstance(x, Fraction):
            den = lcm(den, x.denominator)
        if isinstance(y, Fraction):
            den = lcm(den, y.denominator)
    return den


def scale_point(p: Point, s: int) -> Tuple[int, int]:
    return int(p[0] * s), int(p[1] * s)


def point_in_polygon(p: Point, poly: Tuple[Point, ...]) -> Optional[bool]:
    """Even-odd test.  True strictly inside, False strictly outside,
    None if p lies exactly on the boundary."""
    n = len(poly)
    for i in range(n):
        if on_segment(p, poly[i], poly[(i + 1) % n]):
            return None
    inside = False
    px, py = p
    for i in range(n):
        ax, ay = poly[i]
        bx, by = poly[(i + 1) % n]
        if (ay > py) != (by > py):
            # x coordinate where the edge crosses the horizontal through p,
            # compared exactly via cross multiplication.
            t = sign((bx - ax) * (py - ay) - (px - ax) * (by - ay)) * sign(by - ay)
            if t > 0:
                inside = not inside
    return inside
