# src/domain/lattice.py
import itertools
import logging
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import List, Tuple

from sympy import isprime

from .exceptions import ParameterError
from .models import FrobeniusData, LatticePoint

logger = logging.getLogger(__name__)


def _check_shape(n: int, d: int) -> None:
    if n < 1:
        raise ParameterError(f"Dimension n must be at least 1, got {n}.")
    if d < 2:
        raise ParameterError(f"Degree d must be at least 2, got {d}.")


def _check_prime(p: int, d: int) -> None:
    if not isprime(p):
        raise ParameterError(f"p={p} is not a prime.")
    if gcd(p, d) != 1:
        raise ParameterError(f"p={p} and d={d} are not coprime.")


@lru_cache(maxsize=None)
def simplex_points(n: int, d: int) -> Tuple[LatticePoint, ...]:
    """All lattice points of Simp(n,d), in lexicographic order."""
    _check_shape(n, d)
    return tuple(LatticePoint(u) for u in itertools.product(range(d + 1), repeat=n) if sum(u) <= d)


@lru_cache(maxsize=None)
def fundamental_points(n: int, d: int) -> Tuple[LatticePoint, ...]:
    """Points of (0,d)^n, in lexicographic order."""
    _check_shape(n, d)
    return tuple(LatticePoint(u) for u in itertools.product(range(1, d), repeat=n))


def degree_stratum(n: int, d: int, j: int) -> Tuple[LatticePoint, ...]:
    """W_j: fundamental points of coordinate sum j."""
    return tuple(u for u in fundamental_points(n, d) if sum(u) == j)


@lru_cache(maxsize=None)
def hodge_numbers(n: int, d: int) -> Tuple[int, ...]:
    _check_shape(n, d)
    h = [0] * (n * d + 1)
    for u in fundamental_points(n, d):
        h[sum(u)] += 1
    return tuple(h)


@lru_cache(maxsize=None)
def hodge_sums(n: int, d: int) -> Tuple[int, ...]:
    """Arithmetic Hodge sums H_i = sum over j <= i/d of h_{i-jd}."""
    h = hodge_numbers(n, d)
    H: List[int] = []
    for i in range(n * d + 1):
        H.append(h[i] + (H[i - d] if i >= d else 0))
    return tuple(H)


def frobenius_conjugate(i: int, l: int, d: int, p: int) -> int:
    """sigma_i(l), with i - sigma_i(l) = p^{-1}(i - l) mod d."""
    if gcd(p, d) != 1:
        raise ParameterError(f"p={p} and d={d} are not coprime.")
    sigma = (i - pow(p, -1, d) * (i - l)) % d
    if (p - 1) * i % d == 0 and sigma == 0:
        return d
    return sigma


@lru_cache(maxsize=None)
def frobenius_numbers(n: int, d: int, p: int) -> Tuple[Tuple[int, int], ...]:
    """Split table (h_{j,0}, h_{j,1}) for j = 0..nd."""
    _check_shape(n, d)
    _check_prime(p, d)
    H = hodge_sums(n, d)

    def at(i: int) -> int:
        return H[i] if i >= 0 else 0

    table = []
    for j in range(n * d + 1):
        shift = frobenius_conjugate(j, 0, d, p)
        table.append((at(j) - at(j - shift), at(j - shift) - at(j - d)))
    return tuple(table)


def frobenius_slopes(d: int, p: int, j: int, eps: int) -> Fraction:
    if eps not in (0, 1):
        raise ParameterError(f"eps must be 0 or 1, got {eps}.")
    if gcd(p, d) != 1:
        raise ParameterError(f"p={p} and d={d} are not coprime.")
    return Fraction(-((-(p - 1) * j) // d) - eps, p - 1)


def _frobenius_cumulative(n: int, d: int, p: int) -> List[Tuple[int, int]]:
    """(2j - eps, running total) over the split table in ascending key order."""
    split = frobenius_numbers(n, d, p)
    entries = sorted((2 * j - eps, split[j][eps]) for j in range(n * d + 1) for eps in (0, 1))
    running = 0
    out = []
    for key, count in entries:
        running += count
        out.append((key, running))
    return out


@lru_cache(maxsize=None)
def vertex_sets(n: int, d: int, p: int) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    h = hodge_numbers(n, d)
    hodge = {0}
    running = 0
    for hj in h:
        running += hj
        hodge.add(running)
    frobenius = {0} | {total for _, total in _frobenius_cumulative(n, d, p)}
    return tuple(sorted(hodge)), tuple(sorted(frobenius))


@lru_cache(maxsize=None)
def frobenius_data(n: int, d: int, p: int) -> FrobeniusData:
    split = frobenius_numbers(n, d, p)
    slopes = tuple((frobenius_slopes(d, p, j, 0), frobenius_slopes(d, p, j, 1))
                   for j in range(n * d + 1))
    hodge, frobenius = vertex_sets(n, d, p)
    logger.debug(f"Frobenius data for (n,d,p)=({n},{d},{p}): vertices {frobenius}")
    return FrobeniusData(n=n, d=d, p=p, h=hodge_numbers(n, d), H=hodge_sums(n, d), hsplit=split,
                         slopes=slopes, hodge_vertices=hodge, frobenius_vertices=frobenius)


def hodge_vertex_index(n: int, d: int, k: int) -> int:
    """Least i with k = h_0 + ... + h_i; raises unless k is a Hodge vertex."""
    running = 0
    for i, hi in enumerate(hodge_numbers(n, d)):
        running += hi
        if running >= k:
            if running != k:
                break
            return i
    raise ParameterError(f"k={k} is not a Hodge vertex of Simp({n},{d}).")


def hodge_vertex_indices(n: int, d: int, k: int) -> List[int]:
    """Every i with k = h_0 + ... + h_i."""
    running, out = 0, []
    for i, hi in enumerate(hodge_numbers(n, d)):
        running += hi
        if running == k:
            out.append(i)
    return out


def frobenius_vertex_index(n: int, d: int, p: int, k: int) -> Tuple[int, int]:
    """(i, iota) for the least key 2i - iota whose running split total reaches k."""
    for key, total in _frobenius_cumulative(n, d, p):
        if total >= k:
            if total != k:
                break
            i = -((-key) // 2)
            return i, 2 * i - key
    raise ParameterError(f"k={k} is not a Frobenius vertex of ({n},{d},{p}).")


def frobenius_vertex_indices(n: int, d: int, p: int, k: int) -> List[Tuple[int, int]]:
    out = []
    for key, total in _frobenius_cumulative(n, d, p):
        if total == k:
            i = -((-key) // 2)
            out.append((i, 2 * i - key))
    return out


def strata(d: int, j: int) -> Tuple[Tuple[LatticePoint, ...], Tuple[LatticePoint, ...], Tuple[LatticePoint, ...]]:
    """(W_j, W_{j,0}, W_{j,1}) in the plane; W_{j,1} has both coordinates below d/2."""
    if d % 2 != 0 or not (d - j <= j <= d):
        raise ParameterError(f"Stratum split needs even d and d-j <= j <= d, got d={d}, j={j}.")
    whole = degree_stratum(2, d, j)
    inner = tuple(u for u in whole if 2 * u[0] < d and 2 * u[1] < d)
    outer = tuple(u for u in whole if u not in inner)
    return whole, outer, inner
