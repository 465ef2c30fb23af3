# src/application/services/premium_service.py
import itertools
import logging
from fractions import Fraction
from math import factorial, prod
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ...config.settings import settings
from ...domain.exceptions import BudgetExceededError, ParameterError
from ...domain.interfaces import IAssignmentSolver
from ...domain.lattice import (
    degree_stratum, frobenius_vertex_index, fundamental_points, hodge_numbers,
)
from ...domain.models import LatticePoint, Polygon, PointTuple, TwistedPermutation
from ...domain.polygon import lower_hull

logger = logging.getLogger(__name__)

PointSet = Tuple[LatticePoint, ...]

# Largest fundamental set for which premium_at may range over every subset
ALL_MODE_LIMIT = 9


def edge_cost(u: LatticePoint, w: LatticePoint, p: int, d: int) -> int:
    """ceil(deg(pu - w))."""
    v = [p * x - y for x, y in zip(u, w)]
    if min(v) < 0:
        raise ParameterError(f"p*u - w = {v} has a negative coordinate (u={tuple(u)}, w={tuple(w)}, p={p}).")
    return -((-sum(v)) // d)


def permutation_sign(perm: Sequence[int]) -> int:
    sign, seen = 1, [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length, x = 0, start
        while not seen[x]:
            seen[x] = True
            x = perm[x]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def layer_sign(src: PointSet, dst: PointSet, mapping: Dict[LatticePoint, LatticePoint]) -> int:
    """Sign of the position permutation of a bijection src -> dst, both in lexicographic order."""
    position = {w: i for i, w in enumerate(dst)}
    return permutation_sign([position[mapping[u]] for u in src])


def twisted_sign(A: PointTuple, tau: TwistedPermutation) -> int:
    return prod(layer_sign(A.layer(l), A.layer(l - 1), m) for l, m in enumerate(tau.as_dicts()))


def sf_enumerate(k: int, n: int, d: int, mode: str = "minimal_degree") -> Iterator[PointSet]:
    """SF(k) (mode 'all') or its minimal-degree part SF_0(k), as lexicographically sorted tuples."""
    points = fundamental_points(n, d)
    if not 0 <= k <= len(points):
        raise ParameterError(f"k={k} outside [0, {len(points)}].")
    if mode == "all":
        yield from itertools.combinations(points, k)
        return
    if mode != "minimal_degree":
        raise ParameterError(f"Unknown SF mode '{mode}'.")
    if k == 0:
        yield ()
        return
    base: List[LatticePoint] = []
    for i, hi in enumerate(hodge_numbers(n, d)):
        if len(base) + hi >= k:
            for extra in itertools.combinations(degree_stratum(n, d, i), k - len(base)):
                yield tuple(sorted(base + list(extra)))
            return
        base.extend(degree_stratum(n, d, i))


class PremiumService:
    """Frobenius premiums of twisted permutations, point tuples and vertices."""

    def __init__(self, solver: IAssignmentSolver, brute_force_limit: Optional[int] = None):
        self._solver = solver
        self._brute_force_limit = brute_force_limit or settings.BRUTE_FORCE_LIMIT
        self._layer_cache: Dict[Tuple[PointSet, PointSet, int, int], int] = {}

    @staticmethod
    def cost_matrix(src: PointSet, dst: PointSet, p: int, d: int) -> List[List[int]]:
        return [[edge_cost(u, w, p, d) for w in dst] for u in src]

    def premium_of_permutation(self, A: PointTuple, tau: TwistedPermutation, p: int, d: int) -> Fraction:
        if tau.a != A.a:
            raise ParameterError(f"Twisted permutation of length {tau.a} does not fit a {A.a}-tuple.")
        total = 0
        for l, mapping in enumerate(tau.as_dicts()):
            if sorted(mapping) != list(A.layer(l)) or sorted(mapping.values()) != list(A.layer(l - 1)):
                raise ParameterError(f"Map {l} is not a bijection A_{l} -> A_{l - 1}.")
            total += sum(edge_cost(u, w, p, d) for u, w in mapping.items())
        return Fraction(total, A.a * (p - 1))

    def layer_minimizers(self, src: PointSet, dst: PointSet, p: int, d: int) -> Tuple[int, List[Dict[LatticePoint, LatticePoint]]]:
        best, perms = self._solver.minimizers(self.cost_matrix(src, dst, p, d))
        return best, [{u: dst[c] for u, c in zip(src, perm)} for perm in perms]

    def layer_minimum(self, src: PointSet, dst: PointSet, p: int, d: int) -> int:
        key = (src, dst, p, d)
        if key not in self._layer_cache:
            self._layer_cache[key] = self._solver.minimum(self.cost_matrix(src, dst, p, d))
        return self._layer_cache[key]

    def premium_of_tuple(self, A: PointTuple, p: int, d: int,
                         mode: str = "assignment") -> Tuple[Fraction, List[TwistedPermutation]]:
        sizes = {len(layer) for layer in A.layers}
        if len(sizes) != 1:
            raise ParameterError(f"Layers of unequal sizes {sorted(sizes)}.")
        if mode == "brute":
            return self._premium_brute(A, p, d)
        if mode != "assignment":
            raise ParameterError(f"Unknown premium mode '{mode}'.")
        total, per_layer = 0, []
        for l in range(A.a):
            best, maps = self.layer_minimizers(A.layer(l), A.layer(l - 1), p, d)
            total += best
            per_layer.append(maps)
        minimizers = [TwistedPermutation.from_dicts(choice) for choice in itertools.product(*per_layer)]
        return Fraction(total, A.a * (p - 1)), minimizers

    def _premium_brute(self, A: PointTuple, p: int, d: int) -> Tuple[Fraction, List[TwistedPermutation]]:
        size = len(A.layers[0])
        if factorial(size) ** A.a > self._brute_force_limit:
            raise BudgetExceededError(f"Brute force over ({size}!)^{A.a} twisted permutations exceeds the limit.")
        layer_choices = []
        for l in range(A.a):
            dst = A.layer(l - 1)
            layer_choices.append([dict(zip(A.layer(l), perm)) for perm in itertools.permutations(dst)])
        best: Optional[Fraction] = None
        argmin: List[TwistedPermutation] = []
        for choice in itertools.product(*layer_choices):
            tau = TwistedPermutation.from_dicts(choice)
            value = self.premium_of_permutation(A, tau, p, d)
            if best is None or value < best:
                best, argmin = value, [tau]
            elif value == best:
                argmin.append(tau)
        return best, argmin

    def premium_at(self, k: int, n: int, d: int, p: int, a: int = 1, mode: str = "restricted") -> Fraction:
        """Prem(k) = min over SF(k)^a ('all') or SF_0(k)^a ('restricted') as a minimum closed walk."""
        if mode == "all":
            if len(fundamental_points(n, d)) > ALL_MODE_LIMIT:
                raise BudgetExceededError(f"'all' mode is limited to (d-1)^n <= {ALL_MODE_LIMIT}.")
            sets = list(sf_enumerate(k, n, d, "all"))
        elif mode == "restricted":
            sets = list(sf_enumerate(k, n, d, "minimal_degree"))
        else:
            raise ParameterError(f"Unknown premium_at mode '{mode}'.")
        if k == 0:
            return Fraction(0)
        if a == 1:
            best = min(self.layer_minimum(s, s, p, d) for s in sets)
        else:
            weights = np.array([[self.layer_minimum(x, y, p, d) for y in sets] for x in sets], dtype=np.int64)
            walk = weights.copy()
            for _ in range(a - 1):
                walk = np.min(walk[:, :, None] + weights[None, :, :], axis=1)
            best = int(np.min(np.diag(walk)))
        logger.debug(f"Prem({k}) for (n,d,p,a)=({n},{d},{p},{a}) over {len(sets)} sets: {best}/{a * (p - 1)}")
        return Fraction(best, a * (p - 1))

    def premium_polygon(self, n: int, d: int, p: int, a: int = 1, mode: Optional[str] = None) -> Polygon:
        if p <= d:
            raise ParameterError(f"Premium polygon needs p > d, got p={p}, d={d}.")
        if mode is None:
            mode = "all" if len(fundamental_points(n, d)) <= ALL_MODE_LIMIT else "restricted"
        top = len(fundamental_points(n, d))
        return lower_hull((k, self.premium_at(k, n, d, p, a, mode)) for k in range(top + 1))

    @staticmethod
    def satisfies_vertex_condition(A: PointTuple, tau: TwistedPermutation, n: int, d: int, p: int, k: int) -> bool:
        """Fractional-part test for membership in Sym_0 at a Frobenius vertex."""
        i, _ = frobenius_vertex_index(n, d, p, k)
        shift = Fraction(d - 1 - i, d)

        def frac(x: Fraction) -> Fraction:
            return x - (x.numerator // x.denominator)

        for mapping in tau.as_dicts():
            for u, w in mapping.items():
                if frac(w.degree(d) + shift) < frac(p * u.degree(d) + shift):
                    return False
        return True

