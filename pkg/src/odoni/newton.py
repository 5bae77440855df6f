"""Newton polygons and the valuation tower of iterated preimages.

The polygon of a polynomial at a prime is the lower convex hull of the
points (i, v_p(a_i)); its segment slopes are the negatives of the root
valuations, with multiplicities given by the segment lengths. For
f = x^d - b*x^m with v(b) < min(v(x0), 0), (d-m) | v(b) and
gcd(m, v(x0/b)) = 1, the polygon of f - beta splits into exactly two
segments, and iterating the short-segment slope predicts a ramification
index of m^k at level k together with a level valuation N_k / m^k whose
numerator stays coprime to m. The tower here is computed purely on
valuations; no algebraic numbers are ever represented.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .arith import INFINITY, val
from .poly import Poly


@dataclass(frozen=True)
class Segment:
    slope: Fraction
    length: int


@dataclass(frozen=True)
class NewtonPolygon:
    """Lower convex hull of coefficient valuations.

    vertices are the hull's corner points only (collinear interior
    points are absorbed into their segment); slopes strictly increase
    left to right and lengths sum to the index span of the hull.
    """

    vertices: tuple[tuple[int, int], ...]
    segments: tuple[Segment, ...]


def _lower_hull(points: Sequence[tuple[int, int]]) -> list[tuple[int, int]]:
    hull: list[tuple[int, int]] = []
    for pt in points:  # points already sorted by index
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # pop while the middle point is on or above the chord
            if (x2 - x1) * (pt[1] - y1) <= (pt[0] - x1) * (y2 - y1):
                hull.pop()
            else:
                break
        hull.append(pt)
    return hull


def newton_polygon(f: Poly, p: int) -> NewtonPolygon:
    """Newton polygon of f with respect to the prime p.

    Zero coefficients (valuation +infinity) are simply omitted from the
    point set; a constant polynomial has no polygon and is rejected.
    """
    if f.degree < 1:
        raise ValueError("newton_polygon: polynomial must be non-constant")
    points = []
    for i, c in enumerate(f.coeffs):
        v = val(c, p)
        if v is not INFINITY:
            points.append((i, v))
    hull = _lower_hull(points)
    segments = tuple(
        Segment(Fraction(y2 - y1, x2 - x1), x2 - x1)
        for (x1, y1), (x2, y2) in zip(hull, hull[1:])
    )
    return NewtonPolygon(tuple(hull), segments)


def predict_two_segments(
    d: int, m: int, v_b: int, v_beta_over_b: Union[int, Fraction]
) -> tuple[Segment, Segment]:
    """The two-segment polygon of x^d - b*x^m - beta from valuations alone.

    Requires v(b) < 0 with (d-m) | v(b) and v(beta/b) > 0; then the hull
    is a segment of length m and slope -v(beta/b)/m followed by one of
    length d-m and slope -v(b)/(d-m). For integral inputs this matches
    newton_polygon on any witness polynomial with those valuations.
    """
    v = Fraction(v_beta_over_b)
    if v_b >= 0:
        raise ValueError("predict_two_segments: need v(b) < 0")
    if v_b % (d - m) != 0:
        raise ValueError("predict_two_segments: need (d-m) | v(b)")
    if v <= 0:
        raise ValueError("predict_two_segments: need v(beta/b) > 0")
    return (
        Segment(-v / m, m),
        Segment(Fraction(-v_b, d - m), d - m),
    )


@dataclass(frozen=True)
class TowerLevel:
    level: int
    valuation: Fraction  # predicted valuation of a level-k preimage
    ram_index: int  # m^k
    scaled: int  # m^k * valuation, a positive integer coprime to m


@dataclass(frozen=True)
class RamificationTower:
    d: int
    m: int
    v_b: int
    v_x0: int
    depth: int
    levels: tuple[TowerLevel, ...]


def tower_from_valuations(d: int, m: int, v_b: int, v_x0: int, n: int) -> RamificationTower:
    """Iterate the short-segment slope: v_k = (v_(k-1) - v(b)) / m.

    Checks the hypotheses v(b) < min(v(x0), 0), (d-m) | v(b), and
    gcd(m, v(x0) - v(b)) = 1 first (named failures), then asserts at
    every level that m^k * v_k is a positive integer coprime to m.
    """
    if n < 1:
        raise ValueError("tower: depth must be >= 1")
    if not v_b < min(v_x0, 0):
        raise ValueError("tower: condition v(b) < min(v(x0), 0) fails")
    if v_b % (d - m) != 0:
        raise ValueError("tower: condition (d-m) | v(b) fails")
    from math import gcd

    if gcd(m, v_x0 - v_b) != 1:
        raise ValueError("tower: condition gcd(m, v(x0/b)) = 1 fails")
    levels = []
    v = Fraction(v_x0)
    for k in range(1, n + 1):
        v = (v - v_b) / m
        scaled = v * m**k
        if scaled.denominator != 1 or scaled <= 0:
            raise ValueError(f"tower: m^{k} * v_{k} = {scaled} is not a positive integer")
        scaled = int(scaled)
        if gcd(scaled, m) != 1:
            raise ValueError(f"tower: m^{k} * v_{k} = {scaled} shares a factor with m")
        levels.append(TowerLevel(k, v, m**k, scaled))
    return RamificationTower(d, m, v_b, v_x0, n, tuple(levels))


def ramification_tower(inst, n: int) -> RamificationTower:
    """Tower for an instance at its second witness prime p2.

    Checks the instance-level hypothesis p2 coprime to (d-m) as well;
    the remaining hypotheses are valuation facts delegated to
    tower_from_valuations.
    """
    p2 = inst.p2
    if (inst.d - inst.m) % p2 == 0:
        raise ValueError("tower: condition p2 does not divide (d-m) fails")
    v_b = val(Fraction(inst.b), p2)
    v_x0 = val(Fraction(inst.x0), p2)
    if v_b is INFINITY or v_x0 is INFINITY:
        raise ValueError("tower: b and x0 must be nonzero")
    return tower_from_valuations(inst.d, inst.m, v_b, v_x0, n)
