# src/domain/polygon.py
import logging
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple, Union

from .exceptions import ParameterError
from .lattice import frobenius_conjugate, frobenius_data, hodge_numbers, hodge_sums
from .models import Polygon

logger = logging.getLogger(__name__)

Number = Union[int, Fraction]


class Comparison(str, Enum):
    """Outcome of a pointwise polygon comparison."""
    ABOVE = "P>=Q"
    BELOW = "P<=Q"
    EQUAL = "P=Q"
    INCOMPARABLE = "incomparable"


def polygon_from_slopes(pairs: Iterable[Tuple[Number, int]]) -> Polygon:
    merged: Dict[Fraction, int] = {}
    for slope, mult in pairs:
        if mult < 0:
            raise ParameterError(f"Negative multiplicity {mult} for slope {slope}.")
        if mult:
            slope = Fraction(slope)
            merged[slope] = merged.get(slope, 0) + mult
    return Polygon(tuple(sorted(merged.items())))


def evaluate(P: Polygon, x: Number) -> Fraction:
    x = Fraction(x)
    if x < 0 or x > P.length:
        raise ParameterError(f"Abscissa {x} outside [0, {P.length}].")
    value = Fraction(0)
    remaining = x
    for slope, mult in P.segments:
        step = min(remaining, mult)
        value += slope * step
        remaining -= step
        if remaining == 0:
            break
    return value


def integer_points(P: Polygon) -> List[Tuple[int, Fraction]]:
    """(k, P(k)) for every integer k in [0, length]."""
    points = [(0, Fraction(0))]
    value = Fraction(0)
    for slope in P.slopes():
        value += slope
        points.append((len(points), value))
    return points


def vertices(P: Polygon) -> List[Tuple[int, Fraction]]:
    points = [(0, Fraction(0))]
    k, value = 0, Fraction(0)
    for slope, mult in P.segments:
        k += mult
        value += slope * mult
        points.append((k, value))
    return points


def compare(P: Polygon, Q: Polygon) -> Comparison:
    if P.length != Q.length:
        raise ParameterError(f"Cannot compare polygons of lengths {P.length} and {Q.length}.")
    above = below = False
    for (_, x), (_, y) in zip(integer_points(P), integer_points(Q)):
        above |= x > y
        below |= x < y
    if above and below:
        return Comparison.INCOMPARABLE
    if above:
        return Comparison.ABOVE
    if below:
        return Comparison.BELOW
    return Comparison.EQUAL


def is_at_least(P: Polygon, Q: Polygon) -> bool:
    return compare(P, Q) in (Comparison.ABOVE, Comparison.EQUAL)


def hodge_polygon(n: int, d: int) -> Polygon:
    return polygon_from_slopes((Fraction(j, d), hj) for j, hj in enumerate(hodge_numbers(n, d)))


def frobenius_polygon(n: int, d: int, p: int) -> Polygon:
    if p <= d + 1:
        raise ParameterError(f"Frobenius polygon needs p > d+1, got p={p}, d={d}.")
    data = frobenius_data(n, d, p)
    return polygon_from_slopes(
        (data.slopes[j][eps], data.hsplit[j][eps]) for j in range(n * d + 1) for eps in (0, 1))


def fitted_slope(d: int, p: int, i: int, j: int) -> Fraction:
    top = -((i - p * j) // d)
    bottom = -((i - j) // d)
    return Fraction(top - bottom, p - 1)


def fitted_frobenius_polygon(n: int, d: int, p: int, i: int) -> Polygon:
    if not 0 <= i <= n * d:
        raise ParameterError(f"Fitting index i={i} outside [0, {n * d}].")
    h = hodge_numbers(n, d)
    return polygon_from_slopes((fitted_slope(d, p, i, j), h[j]) for j in range(i + 1))


def lower_hull(points: Iterable[Tuple[int, Optional[Number]]]) -> Polygon:
    """Lower convex hull of (k, value) points; None stands for an infinite ordinate."""
    best: Dict[int, Fraction] = {}
    last = -1
    for k, value in points:
        last = max(last, k)
        if value is None:
            continue
        value = Fraction(value)
        if k not in best or value < best[k]:
            best[k] = value
    if best.get(0) != 0:
        raise ParameterError("Lower hull needs the point (0, 0).")
    if last not in best:
        raise ParameterError(f"Lower hull needs a finite ordinate at k={last}.")
    chain: List[Tuple[int, Fraction]] = []
    for pt in sorted(best.items()):
        while len(chain) > 1:
            v0, v1 = chain[-2], chain[-1]
            if (v1[0] - v0[0]) * (pt[1] - v0[1]) - (pt[0] - v0[0]) * (v1[1] - v0[1]) <= 0:
                chain.pop()
            else:
                break
        chain.append(pt)
    return polygon_from_slopes(
        ((y1 - y0) / (x1 - x0), x1 - x0) for (x0, y0), (x1, y1) in zip(chain, chain[1:]))


def fitted_gap(n: int, d: int, p: int, i: int, excluded: int) -> Fraction:
    """sum over l in [0,d), l != excluded mod d, of (d-1-l)/((p-1)d) * (H_{i-l} - H_{i-sigma_i(l)})."""
    H = hodge_sums(n, d)

    def at(m: int) -> int:
        return H[m] if 0 <= m < len(H) else 0

    total = Fraction(0)
    for l in range(d):
        if (l - excluded) % d == 0:
            continue
        sigma = frobenius_conjugate(i, l, d, p)
        total += Fraction(d - 1 - l, (p - 1) * d) * (at(i - l) - at(i - sigma))
    return total
