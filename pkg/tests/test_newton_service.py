from fractions import Fraction

import pytest

from src.application.services.newton_service import is_symmetric
from src.domain.exceptions import ParameterError
from src.domain.polygon import hodge_polygon, is_at_least, polygon_from_slopes
from src.infrastructure.arithmetic.cyclotomic import CycInt, pi_valuation
from src.infrastructure.arithmetic.finite_field import build_field
from src.infrastructure.arithmetic.fq_polynomial import make_polynomial


def _poly(p, n, d, coefficients, a=1):
    return make_polynomial(build_field(p, a), n, d, coefficients)


def test_exponential_sum_of_square(newton):
    f = _poly(3, 1, 2, {(2,): 1})
    assert newton.exponential_sum(f, 1) == CycInt(3, (1, 2))
    assert newton.exponential_sum(_poly(3, 1, 2, {}), 1) == CycInt.from_int(3, 3)
    assert newton.exponential_sum(_poly(5, 1, 2, {(1,): 1}), 1).is_zero()
    with pytest.raises(ParameterError):
        newton.exponential_sum(f, 0)


def test_first_coefficient_of_gauss_sum(newton):
    f = _poly(3, 1, 2, {(2,): 1})
    assert newton.l_polynomial_coeffs(f, 1) == [CycInt(3, (-1, -2))]


@pytest.mark.parametrize("p", [3, 5, 7])
def test_gauss_sum_polygon(newton, p):
    assert newton.newton_polygon(_poly(p, 1, 2, {(2,): 1})).segments == ((Fraction(1, 2), 1),)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_gauss_sum_has_half_valuation(newton, p):
    nu = newton.l_polynomial_coeffs(_poly(p, 1, 2, {(2,): 1}), 1)[0]
    assert pi_valuation(nu) == (p - 1) // 2


def test_cubic_over_f5(newton):
    f = _poly(5, 1, 3, {(3,): 1, (1,): 1})
    assert newton.newton_polygon(f).segments == ((Fraction(1, 2), 2),)
    coeffs = newton.l_polynomial_coeffs(f, 3)
    assert coeffs[2].is_zero()


def test_plane_conic_polygon(newton):
    f = _poly(3, 2, 2, {(2, 0): 1, (0, 2): 1, (1, 0): 1})
    assert newton.newton_polygon(f).segments == ((Fraction(1), 1),)


def test_plane_cubic_lies_above_hodge(newton):
    f = _poly(5, 2, 3, {(3, 0): 1, (0, 3): 1, (1, 1): 2, (1, 0): 3, (0, 0): 1})
    np_ = newton.newton_polygon(f)
    assert np_.endpoint == (4, Fraction(4))
    assert is_symmetric(np_, 2)
    assert is_at_least(np_, hodge_polygon(2, 3))
    ords = newton.valuations(f)
    assert ords[0] == 0 and ords[4] == 4


def test_smoothness_of_leading_forms(newton):
    assert newton.is_smooth_leading_form(_poly(3, 2, 2, {(2, 0): 1, (0, 2): 1}))
    assert not newton.is_smooth_leading_form(_poly(3, 2, 2, {(2, 0): 1, (1, 1): 2, (0, 2): 1}))
    assert not newton.is_smooth_leading_form(_poly(3, 2, 2, {(2, 0): 1, (1, 1): 1, (0, 2): 1}))
    assert not newton.is_smooth_leading_form(_poly(5, 1, 3, {(2,): 1}))
    assert newton.is_smooth_leading_form(_poly(5, 3, 3, {(3, 0, 0): 1, (0, 3, 0): 1, (0, 0, 3): 2}))
    assert not newton.is_smooth_leading_form(_poly(5, 3, 3, {(3, 0, 0): 1, (0, 3, 0): 1}))
    with pytest.raises(ParameterError):
        newton.is_smooth_leading_form(_poly(5, 3, 3, {(3, 0, 0): 1, (1, 1, 1): 1}))


def test_coefficient_requests_are_validated(newton):
    singular = _poly(3, 2, 2, {(2, 0): 1, (1, 1): 2, (0, 2): 1})
    with pytest.raises(ParameterError):
        newton.l_polynomial_coeffs(singular, 1)
    with pytest.raises(ParameterError):
        newton.l_polynomial_coeffs(_poly(5, 1, 3, {(3,): 1}), 4)


def test_is_symmetric():
    assert is_symmetric(polygon_from_slopes([(Fraction(1, 2), 2)]), 1)
    assert not is_symmetric(polygon_from_slopes([(Fraction(1, 3), 1), (Fraction(1, 2), 1)]), 1)
