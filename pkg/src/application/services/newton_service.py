# src/application/services/newton_service.py
import logging
from fractions import Fraction
from typing import Dict, List, Optional

from ...domain.exceptions import ParameterError
from ...domain.interfaces import IPointCounter
from ...domain.models import FqPolynomial, LatticePoint, Polygon
from ...domain.polygon import lower_hull
from ...infrastructure.arithmetic.cyclotomic import CycInt, pi_residue, pi_valuation
from ...infrastructure.arithmetic.finite_field import FqElem

logger = logging.getLogger(__name__)


def _strip(poly: List[FqElem]) -> List[FqElem]:
    while poly and poly[-1].is_zero():
        poly = poly[:-1]
    return poly


def _poly_rem(a: List[FqElem], b: List[FqElem]) -> List[FqElem]:
    a = list(a)
    lead = b[-1].inverse()
    while len(a) >= len(b):
        factor = a[-1] * lead
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] = a[shift + i] - factor * c
        a = _strip(a[:-1])
    return a


def _poly_gcd_degree(a: List[FqElem], b: List[FqElem]) -> int:
    a, b = _strip(a), _strip(b)
    while b:
        a, b = b, _poly_rem(a, b)
    return len(a) - 1


def is_symmetric(P: Polygon, n: int) -> bool:
    """Slope s and slope n - s occur equally often."""
    counts = dict(P.segments)
    return all(counts.get(n - s) == m for s, m in counts.items())


class NewtonService:
    """Exponential sums, L-polynomial coefficients and Newton polygons of f over F_q."""

    def __init__(self, counter: IPointCounter):
        self._counter = counter

    def exponential_sum(self, f: FqPolynomial, k: int) -> CycInt:
        if k < 1:
            raise ParameterError(f"Exponential sums are indexed by k >= 1, got {k}.")
        return CycInt.from_counts(self._counter.trace_counts(f, k))

    @staticmethod
    def is_smooth_leading_form(f: FqPolynomial) -> bool:
        n, d, field = f.n, f.d, f.field
        lead = {u: FqElem(field, c) for u, c in f.leading_terms().items()}
        if n == 1:
            return (d,) in lead
        if n == 2:
            if LatticePoint((d, 0)) not in lead or LatticePoint((0, d)) not in lead:
                return False
            zero = FqElem.zero(field)
            g = [lead.get(LatticePoint((j, d - j)), zero) for j in range(d + 1)]
            dg = [g[j] * j for j in range(1, d + 1)]
            return _poly_gcd_degree(g, dg) == 0
        diagonal = {LatticePoint(d if i == j else 0 for j in range(n)) for i in range(n)}
        if not set(lead) <= diagonal:
            raise ParameterError(f"Smoothness for n={n} is decided only for diagonal leading forms.")
        return set(lead) == diagonal

    def l_polynomial_coeffs(self, f: FqPolynomial, K: int, check_smooth: bool = True) -> List[CycInt]:
        """nu_1..nu_K from Newton's identities on P_k = (-1)^n S_k; K may exceed the degree by one."""
        top = (f.d - 1) ** f.n
        if not 0 <= K <= top + 1:
            raise ParameterError(f"K={K} outside [0, {top + 1}].")
        if check_smooth and not self.is_smooth_leading_form(f):
            raise ParameterError("Leading form is not smooth.")
        p = f.field.p
        sign = -1 if f.n % 2 else 1
        power_sums = [self.exponential_sum(f, k) * sign for k in range(1, K + 1)]
        e = [CycInt.from_int(p, 1)]
        for k in range(1, K + 1):
            acc = CycInt.zero(p)
            for i in range(1, k + 1):
                term = e[k - i] * power_sums[i - 1]
                acc = acc + term if i % 2 else acc - term
            e.append(acc.exact_div(k))
        return e[1:]

    def valuations(self, f: FqPolynomial) -> Dict[int, Optional[Fraction]]:
        """ord_q nu_k for k <= D; the upper half comes from the functional equation."""
        n, a, p = f.n, f.field.degree, f.field.p
        top = (f.d - 1) ** n
        half = top // 2
        nus = self.l_polynomial_coeffs(f, half)
        scale = a * (p - 1)
        ords: Dict[int, Optional[Fraction]] = {0: Fraction(0)}
        for k, nu in enumerate(nus, start=1):
            v = pi_valuation(nu)
            ords[k] = None if v is None else Fraction(v, scale)
        for k in range(top - half, top + 1):
            if k in ords:
                continue
            mirror = ords[top - k]
            ords[k] = None if mirror is None else Fraction(n * top, 2) - n * (top - k) + mirror
        return ords

    def newton_polygon(self, f: FqPolynomial) -> Polygon:
        top = (f.d - 1) ** f.n
        ords = self.valuations(f)
        polygon = lower_hull(sorted(ords.items()))
        if polygon.endpoint != (top, Fraction(f.n * top, 2)) or not is_symmetric(polygon, f.n):
            raise ArithmeticError(f"Newton polygon {polygon.segments} breaks the functional equation.")
        logger.debug(f"NP over F_{f.field.p}^{f.field.degree}: {polygon.segments}")
        return polygon

    @staticmethod
    def residue(nu: CycInt, v: int) -> int:
        return pi_residue(nu, v)
