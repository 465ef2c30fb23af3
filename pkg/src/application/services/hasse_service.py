# src/application/services/hasse_service.py
import itertools
import logging
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Dict, List, Optional, Tuple

from ...domain.exceptions import ParameterError
from ...domain.interfaces import IAssignmentSolver
from ...domain.lattice import (
    degree_stratum, frobenius_vertex_index, simplex_points, vertex_sets,
)
from ...domain.models import (
    FqPolynomial, LatticePoint, MultiplicityVector, PointTuple, Section, TwistedPermutation,
)
from ...infrastructure.arithmetic.finite_field import FqElem
from ...infrastructure.arithmetic.sparse_poly import SparsePoly
from .premium_service import PointSet, PremiumService, edge_cost, layer_sign, sf_enumerate

logger = logging.getLogger(__name__)

FULL = "full"
SPECIALIZED = "specialized"
MINIMAL = "minimal"
_VARIANT_ALIASES = {FULL: FULL, SPECIALIZED: SPECIALIZED, MINIMAL: MINIMAL, "minimal_interior": MINIMAL}

LayerMap = Dict[LatticePoint, LatticePoint]


def _variant(name: str) -> str:
    try:
        return _VARIANT_ALIASES[name]
    except KeyError:
        raise ParameterError(f"Unknown variant '{name}'.")


def _frac(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


@lru_cache(maxsize=None)
def _artin_hasse_exact(p: int, j: int) -> Fraction:
    """Coefficient of x^j in exp(sum x^(p^i)/p^i), from j*l_j = sum_{p^i <= j} l_{j-p^i}."""
    if j == 0:
        return Fraction(1)
    total = Fraction(0)
    step = 1
    while step <= j:
        total += _artin_hasse_exact(p, j - step)
        step *= p
    return total / j


def artin_hasse_coeff(j: int, p: int) -> int:
    """lambda_j reduced mod p."""
    if j < 0:
        raise ParameterError(f"Artin-Hasse index must be non-negative, got {j}.")
    for i in range(j + 1):
        _artin_hasse_exact(p, i)
    value = _artin_hasse_exact(p, j)
    if value.denominator % p == 0:
        raise ArithmeticError(f"Artin-Hasse coefficient {j} at p={p} has denominator divisible by p.")
    return value.numerator * pow(value.denominator, -1, p) % p


def _check_plane(n: int, d: int, variant: str) -> None:
    if variant != FULL and (n != 2 or d % 2):
        raise ParameterError(f"Variant '{variant}' needs n=2 and even d, got n={n}, d={d}.")


def _allowed_points(n: int, d: int, variant: str) -> Tuple[LatticePoint, ...]:
    """Points usable by sections; the origin never occurs in a minimal-degree section of u != 0."""
    points = [w for w in simplex_points(n, d) if sum(w)]
    if variant != FULL:
        facial = {LatticePoint((d, 0)), LatticePoint((0, d)), LatticePoint((d // 2, d // 2))}
        points = [w for w in points if sum(w) < d or w in facial]
    # degree-one points first keeps the search shallow
    return tuple(sorted(points, key=lambda w: (-sum(w), w)))


@lru_cache(maxsize=None)
def _sections(u: LatticePoint, n: int, d: int, variant: str) -> Tuple[Section, ...]:
    target = _ceil(u.degree(d))
    interior_target = _ceil(_frac(u.degree(d))) if variant == MINIMAL else None
    points = _allowed_points(n, d, SPECIALIZED if variant == MINIMAL else variant)
    found: List[Section] = []
    chosen: List[Tuple[LatticePoint, int]] = []

    def walk(idx: int, rem: List[int], count: int, interior: int) -> None:
        if count == 0:
            if not any(rem) and (interior_target is None or interior == interior_target):
                found.append(Section(d=d, counts=tuple(sorted(chosen))))
            return
        if idx == len(points):
            return
        total = sum(rem)
        if total > d * count or total < count:
            return
        w = points[idx]
        is_interior = sum(w) < d
        top = min([count] + [r // c for r, c in zip(rem, w) if c])
        if is_interior and interior_target is not None:
            top = min(top, interior_target - interior)
        for m in range(top, -1, -1):
            if m:
                chosen.append((w, m))
            walk(idx + 1, [r - m * c for r, c in zip(rem, w)], count - m, interior + (m if is_interior else 0))
            if m:
                chosen.pop()

    if min(u) < 0:
        raise ParameterError(f"Point {tuple(u)} has a negative coordinate.")
    walk(0, list(u), target, 0)
    return tuple(found)


def sections_of(u, n: int, d: int, variant: str = FULL) -> List[Section]:
    """Bund (full), Bund_0 (specialized) or Bund_1 (minimal_interior) of u."""
    variant = _variant(variant)
    _check_plane(n, d, variant)
    u = LatticePoint(u)
    if len(u) != n:
        raise ParameterError(f"Point {tuple(u)} is not in dimension {n}.")
    return list(_sections(u, n, d, variant))


def section_coefficient(s: Section, p: int) -> int:
    out = 1
    for _, m in s.counts:
        out = out * artin_hasse_coeff(m, p) % p
    return out


def monomial_of(s: Section, p: int) -> SparsePoly:
    return SparsePoly.monomial(p, dict(s.counts), section_coefficient(s, p))


@lru_cache(maxsize=None)
def _poly_of_point(u: LatticePoint, n: int, d: int, p: int, variant: str) -> SparsePoly:
    terms: Dict = {}
    for s in _sections(u, n, d, variant):
        key = tuple(sorted(s.counts))
        terms[key] = terms.get(key, 0) + section_coefficient(s, p)
    return SparsePoly.from_dict(p, terms)


def poly_of_point(u, n: int, d: int, p: int, variant: str = FULL) -> SparsePoly:
    variant = _variant(variant)
    _check_plane(n, d, variant)
    return _poly_of_point(LatticePoint(u), n, d, p, variant)


def multiplicity_of_point(u, d: int) -> MultiplicityVector:
    u = LatticePoint(u)
    if len(u) != 2:
        raise ParameterError(f"Multiplicities are defined in the plane, got n={len(u)}.")
    part = _frac(u.degree(d))
    values = [Fraction(0)] * (d + 1)
    for j in range(1, d):
        if part == Fraction(j, d):
            values[j] = Fraction(-1)
    values[d] = -sum(values[1:d], Fraction(0))
    values[0] = Fraction(-1) if u[0] == u[1] else Fraction(0)
    return MultiplicityVector(tuple(values))


def _zero_multiplicity(d: int) -> MultiplicityVector:
    return MultiplicityVector((Fraction(0),) * (d + 1))


def frobenius_exponent(l: int, a: int) -> int:
    """Layer l carries the power p^((l-1) mod a)."""
    return (l - 1) % a


def tau0_image(u: LatticePoint, d: int, i: int) -> LatticePoint:
    """Image of u under tau_0: reflection through (d/2, d/2) or coordinate swap."""
    j = sum(u)
    half = d // 2
    if 2 * j <= d:
        reflect = d - j <= i
    else:
        reflect = 2 * u[0] < d and 2 * u[1] < d
    if reflect:
        return LatticePoint((half - u[0], half - u[1]))
    return LatticePoint((u[1], u[0]))


def tau0_domain(d: int, i: int, hodge: bool) -> PointSet:
    """W_{i,1} plus lower strata, or all strata up to i when hodge is set."""
    points = [u for j in range(i) for u in degree_stratum(2, d, j)]
    if hodge:
        points += degree_stratum(2, d, i)
    else:
        points += [u for u in degree_stratum(2, d, i) if 2 * u[0] < d and 2 * u[1] < d]
    return tuple(sorted(points))


class HasseService:
    """Twisted Hasse polynomials, their specializations and the facial/interior split."""

    def __init__(self, premium_service: PremiumService, solver: IAssignmentSolver):
        self._premium = premium_service
        self._solver = solver
        self._layer_cache: Dict[Tuple, Tuple[Optional[int], List[LayerMap]]] = {}

    # -- layers --------------------------------------------------------------------

    def survives(self, v: LatticePoint, n: int, d: int, p: int) -> bool:
        return any(section_coefficient(s, p) for s in _sections(v, n, d, SPECIALIZED))

    def layer_maps(self, src: PointSet, dst: PointSet, n: int, d: int, p: int, variant: str) -> List[LayerMap]:
        """Per-layer factor of Sym_0 (full), Sym_1 (specialized) or Sym_2 (minimal)."""
        key = (src, dst, n, d, p, variant)
        if key in self._layer_cache:
            return self._layer_cache[key][1]
        best, maps = self._premium.layer_minimizers(src, dst, p, d)
        if variant != FULL:
            maps = self._restricted_layer(src, dst, n, d, p, variant, best)
        self._layer_cache[key] = (best, maps)
        return maps

    def _restricted_layer(self, src: PointSet, dst: PointSet, n: int, d: int, p: int,
                          variant: str, best: int) -> List[LayerMap]:
        base = 2 * len(src) + 1
        cost: List[List[Optional[int]]] = []
        for u in src:
            row: List[Optional[int]] = []
            for w in dst:
                v = LatticePoint(p * x - y for x, y in zip(u, w))
                if not self.survives(v, n, d, p):
                    row.append(None)
                    continue
                c = edge_cost(u, w, p, d)
                if variant == MINIMAL:
                    m = multiplicity_of_point(v, d).values
                    c = c * base ** (d + 1) + sum(int(x) * base ** j for j, x in enumerate(m))
                row.append(c)
            cost.append(row)
        _, perms = self._solver.minimizers(cost)
        maps = [{u: dst[c] for u, c in zip(src, perm)} for perm in perms]
        return [m for m in maps if sum(edge_cost(u, w, p, d) for u, w in m.items()) == best]

    def layer_multiplicity(self, mapping: LayerMap, p: int, d: int) -> MultiplicityVector:
        total = _zero_multiplicity(d)
        for u, w in mapping.items():
            total = total + multiplicity_of_point(LatticePoint(p * x - y for x, y in zip(u, w)), d)
        return total

    def multiplicity_of_tau(self, A: PointTuple, tau: TwistedPermutation, p: int, d: int) -> MultiplicityVector:
        a = A.a
        total = _zero_multiplicity(d)
        for l, mapping in enumerate(tau.as_dicts()):
            total = total + self.layer_multiplicity(mapping, p, d).scaled(Fraction(p ** frobenius_exponent(l, a)))
        return total.scaled(Fraction(p - 1, p ** a - 1))

    def multiplicity_of_tuple(self, A: PointTuple, n: int, d: int, p: int) -> Optional[MultiplicityVector]:
        """min over Sym_1(A); None when Sym_1(A) is empty."""
        a = A.a
        total = _zero_multiplicity(d)
        for l in range(a):
            maps = self.layer_maps(A.layer(l), A.layer(l - 1), n, d, p, MINIMAL)
            if not maps:
                return None
            total = total + self.layer_multiplicity(maps[0], p, d).scaled(Fraction(p ** frobenius_exponent(l, a)))
        return total.scaled(Fraction(p - 1, p ** a - 1))

    def sym_set(self, A: PointTuple, n: int, d: int, p: int, variant: str = FULL) -> List[TwistedPermutation]:
        """Sym_0, Sym_1 or Sym_2 of A."""
        variant = _variant(variant)
        per_layer = [self.layer_maps(A.layer(l), A.layer(l - 1), n, d, p, variant) for l in range(A.a)]
        return [TwistedPermutation.from_dicts(choice) for choice in itertools.product(*per_layer)]

    # -- polynomials ----------------------------------------------------------------

    def _check_vertex(self, k: int, n: int, d: int, p: int) -> None:
        if k not in vertex_sets(n, d, p)[1]:
            raise ParameterError(f"k={k} is not a Frobenius vertex of ({n},{d},{p}).")

    def poly_of_tuple(self, A: PointTuple, n: int, d: int, p: int, variant: str = FULL) -> SparsePoly:
        """Product over layers of the signed sum over that layer's maps, twisted by Frobenius."""
        variant = _variant(variant)
        _check_plane(n, d, variant)
        if p <= d:
            raise ParameterError(f"Twisted Hasse polynomials need p > d, got p={p}, d={d}.")
        out = SparsePoly.constant(p, 1)
        for l in range(A.a):
            src, dst = A.layer(l), A.layer(l - 1)
            layer = SparsePoly(p)
            for mapping in self.layer_maps(src, dst, n, d, p, variant):
                term = SparsePoly.constant(p, layer_sign(src, dst, mapping))
                for u, w in mapping.items():
                    term = term * _poly_of_point(LatticePoint(p * x - y for x, y in zip(u, w)), n, d, p, variant)
                layer = layer + term
            out = out * layer.frobenius_twist(frobenius_exponent(l, A.a))
            if out.is_zero():
                break
        return out

    def poly_of_tuple_expanded(self, A: PointTuple, n: int, d: int, p: int, variant: str = FULL) -> SparsePoly:
        """Literal sum over the whole Sym set."""
        variant = _variant(variant)
        total = SparsePoly(p)
        for tau in self.sym_set(A, n, d, p, variant):
            term = SparsePoly.constant(p, 1)
            for l, mapping in enumerate(tau.as_dicts()):
                src, dst = A.layer(l), A.layer(l - 1)
                factor = SparsePoly.constant(p, layer_sign(src, dst, mapping))
                for u, w in mapping.items():
                    factor = factor * _poly_of_point(LatticePoint(p * x - y for x, y in zip(u, w)), n, d, p, variant)
                term = term * factor.frobenius_twist(frobenius_exponent(l, A.a))
            total = total + term
        return total

    def hasse_tuples(self, k: int, a: int, n: int, d: int, p: int, variant: str = FULL) -> List[PointTuple]:
        """SF_0(k)^a, or SF_1(k) for the minimal variant."""
        variant = _variant(variant)
        self._check_vertex(k, n, d, p)
        sets = list(sf_enumerate(k, n, d, "minimal_degree"))
        tuples = [PointTuple(choice) for choice in itertools.product(sets, repeat=a)]
        if variant != MINIMAL:
            return tuples
        scored = [(self.multiplicity_of_tuple(A, n, d, p), A) for A in tuples]
        scored = [(m, A) for m, A in scored if m is not None]
        if not scored:
            return []
        best = min(m for m, _ in scored)
        return [A for m, A in scored if m == best]

    def twisted_hasse(self, k: int, a: int, n: int, d: int, p: int, variant: str = FULL) -> SparsePoly:
        variant = _variant(variant)
        _check_plane(n, d, variant)
        total = SparsePoly(p)
        for A in self.hasse_tuples(k, a, n, d, p, variant):
            total = total + self.poly_of_tuple(A, n, d, p, variant)
        logger.debug(f"TH^({a})({k}) [{variant}] for ({n},{d},{p}): {len(total.terms)} terms")
        return total

    # -- evaluation -----------------------------------------------------------------

    @staticmethod
    def evaluate_sparse(P: SparsePoly, f: FqPolynomial) -> FqElem:
        if P.p != f.field.p:
            raise ParameterError(f"Polynomial over F_{P.p} evaluated at coefficients over F_{f.field.p}.")
        values = {u: FqElem(f.field, c) for u, c in f.terms}
        return P.evaluate(values, FqElem.one(f.field))

    def twisted_hasse_value(self, k: int, f: FqPolynomial, variant: str = FULL, a: Optional[int] = None) -> FqElem:
        """TH^(a)(k)(f) by evaluating section sums directly in the coefficient field."""
        variant = _variant(variant)
        n, d, p = f.n, f.d, f.field.p
        _check_plane(n, d, variant)
        a = f.field.degree if a is None else a
        values = {u: FqElem(f.field, c) for u, c in f.terms}
        one = FqElem.one(f.field)
        zero = FqElem.zero(f.field)
        memo: Dict[LatticePoint, FqElem] = {}

        def point_value(v: LatticePoint) -> FqElem:
            if v not in memo:
                total = zero
                for s in _sections(v, n, d, variant):
                    term = one * section_coefficient(s, p)
                    for w, m in s.counts:
                        x = values.get(w)
                        if x is None:
                            term = zero
                            break
                        term = term * x ** m
                    total = total + term
                memo[v] = total
            return memo[v]

        total = zero
        for A in self.hasse_tuples(k, a, n, d, p, variant):
            product = one
            for l in range(a):
                src, dst = A.layer(l), A.layer(l - 1)
                layer = zero
                for mapping in self.layer_maps(src, dst, n, d, p, variant):
                    term = one * layer_sign(src, dst, mapping)
                    for u, w in mapping.items():
                        term = term * point_value(LatticePoint(p * x - y for x, y in zip(u, w)))
                    layer = layer + term
                product = product * layer ** (p ** frobenius_exponent(l, a))
            total = total + product
        return total

    # -- facial / interior split ----------------------------------------------------

    def tau0_domain_for_vertex(self, k: int, d: int, p: int) -> Tuple[int, PointSet]:
        i, iota = frobenius_vertex_index(2, d, p, k)
        return i, (tau0_domain(d, i, hodge=(iota == 0)) if k else ())

    def facial_interior_factorization(self, k: int, n: int, d: int, p: int) -> Tuple[SparsePoly, SparsePoly]:
        if n != 2 or d % 2 or (p + 1) % d or p <= d:
            raise ParameterError(f"Factorization needs n=2, even d, p = -1 mod d and p > d; got ({n},{d},{p}).")
        if k > comb(d, 2):
            raise ParameterError(f"k={k} exceeds C(d,2)={comb(d, 2)}.")
        self._check_vertex(k, n, d, p)
        i, A = self.tau0_domain_for_vertex(k, d, p)
        tau0 = {u: tau0_image(u, d, i) for u in A}
        fac = SparsePoly.constant(p, layer_sign(A, A, tau0))
        interior = SparsePoly.constant(p, 1)
        for u, w in tau0.items():
            v = LatticePoint(p * x - y for x, y in zip(u, w))
            part = _frac(v.degree(d))
            if part == 0:
                fac = fac * _poly_of_point(v, n, d, p, MINIMAL)
                continue
            c = part * d / 2
            if c.denominator != 1:
                raise ArithmeticError(f"Interior part of {tuple(v)} is not on the diagonal.")
            w_int = LatticePoint((int(c), int(c)))
            interior = interior * _poly_of_point(w_int, n, d, p, MINIMAL)
            fac = fac * _poly_of_point(v.minus(w_int), n, d, p, MINIMAL)
        return fac, interior
