from fractions import Fraction
from math import factorial

import numpy as np
import pytest

from src.application.services.hasse_service import (
    artin_hasse_coeff, frobenius_exponent, multiplicity_of_point, poly_of_point, sections_of,
    tau0_domain, tau0_image,
)
from src.domain.exceptions import ParameterError
from src.domain.lattice import simplex_points
from src.domain.models import LatticePoint, MultiplicityVector, PointTuple, Section
from src.infrastructure.arithmetic.finite_field import FqElem, build_field
from src.infrastructure.arithmetic.fq_polynomial import make_polynomial
from src.infrastructure.arithmetic.sparse_poly import SparsePoly

A, B, C = LatticePoint((2, 0)), LatticePoint((1, 1)), LatticePoint((0, 2))
CUBIC_CORE = [(1, 1), (1, 2), (2, 1)]


def _conic_quadric(p=3):
    """2 a_{(1,1)}^2 + a_{(2,0)} a_{(0,2)}."""
    return SparsePoly.monomial(p, {B: 2}, 2) + SparsePoly.monomial(p, {A: 1, C: 1})


def _random_polynomial(p, a, n, d, seed):
    field = build_field(p, a)
    rng = np.random.Generator(np.random.Philox(seed))
    return make_polynomial(field, n, d, {
        u: [int(x) for x in rng.integers(0, p, size=a)] for u in simplex_points(n, d)})


def test_artin_hasse_coefficients():
    assert artin_hasse_coeff(0, 3) == 1
    assert artin_hasse_coeff(2, 3) == 2
    assert artin_hasse_coeff(3, 3) == 2
    for j in range(7):
        assert artin_hasse_coeff(j, 7) == pow(factorial(j), -1, 7)
    with pytest.raises(ParameterError):
        artin_hasse_coeff(-1, 3)


def test_sections():
    found = {s.counts for s in sections_of((2, 2), 2, 2)}
    assert found == {((C, 1), (A, 1)), ((B, 2),)}
    assert sections_of((1, 0), 2, 2) == [Section(2, ((LatticePoint((1, 0)), 1),))]
    assert sections_of((0, 0), 2, 2) == [Section(2, ())]
    for s in sections_of((4, 3), 2, 3):
        assert s.degree == 3 and s.vec(2) == (4, 3)
    with pytest.raises(ParameterError):
        sections_of((1, 1), 2, 3, "specialized")
    with pytest.raises(ParameterError):
        sections_of((1, 1), 2, 2, "bogus")


def test_minimal_sections_bound_interior_degree():
    for s in sections_of((5, 4), 2, 4, "minimal_interior"):
        assert s.interior_degree == 1
        assert all(sum(w) < 4 or w in {(4, 0), (0, 4), (2, 2)} for w, _ in s.counts)


def test_poly_of_point():
    assert poly_of_point((2, 2), 2, 2, 3).as_dict() == _conic_quadric().as_dict()
    assert poly_of_point((1,), 1, 2, 5) == SparsePoly.monomial(5, {LatticePoint((1,)): 1})
    assert poly_of_point((0, 0), 2, 3, 5) == SparsePoly.constant(5, 1)


def test_multiplicity_of_point():
    assert multiplicity_of_point((2, 2), 2).values == (-1, 0, 0)
    assert multiplicity_of_point((1, 0), 4).values == (0, -1, 0, 0, 1)
    with pytest.raises(ParameterError):
        multiplicity_of_point((1, 1, 1), 3)
    low = MultiplicityVector((Fraction(5), Fraction(5), Fraction(0)))
    high = MultiplicityVector((Fraction(0), Fraction(0), Fraction(1)))
    assert low < high and low <= low


def test_frobenius_exponent():
    assert [frobenius_exponent(l, 3) for l in range(3)] == [2, 0, 1]
    assert frobenius_exponent(0, 1) == 0


def test_tau0():
    assert tau0_image(LatticePoint((1, 1)), 4, 3) == (1, 1)
    assert tau0_image(LatticePoint((1, 2)), 4, 3) == (2, 1)
    assert tau0_image(LatticePoint((2, 2)), 6, 4) == (1, 1)
    assert tau0_image(LatticePoint((1, 3)), 6, 4) == (3, 1)
    assert tau0_domain(4, 3, hodge=True) == tuple(LatticePoint(u) for u in CUBIC_CORE)
    assert tau0_domain(4, 3, hodge=False) == (LatticePoint((1, 1)),)


def test_sym_sets_on_cubic_core(hasse):
    A3 = PointTuple.power(CUBIC_CORE, 1)
    assert len(hasse.sym_set(A3, 2, 3, 11)) == 2
    assert len(hasse.sym_set(A3, 2, 4, 11)) == 6


@pytest.mark.parametrize("variant", ["full", "specialized", "minimal"])
def test_twisted_hasse_of_conic(hasse, variant):
    assert hasse.twisted_hasse(1, 1, 2, 2, 3, variant).as_dict() == _conic_quadric().as_dict()
    assert hasse.twisted_hasse(0, 1, 2, 2, 3, variant) == SparsePoly.constant(3, 1)


def test_twisted_hasse_rejects_non_vertices(hasse):
    with pytest.raises(ParameterError):
        hasse.twisted_hasse(2, 1, 2, 3, 5)
    with pytest.raises(ParameterError):
        hasse.poly_of_tuple(PointTuple.power([(1, 1)], 1), 2, 3, 3)


def test_power_tuple_factors_through_frobenius(hasse):
    P = hasse.twisted_hasse(1, 1, 2, 2, 3)
    assert hasse.twisted_hasse(1, 2, 2, 2, 3).as_dict() == (P * P.frobenius_twist(1)).as_dict()
    base = PointTuple.power(CUBIC_CORE, 1)
    single = hasse.poly_of_tuple(base, 2, 3, 5)
    doubled = hasse.poly_of_tuple(PointTuple.power(CUBIC_CORE, 2), 2, 3, 5)
    assert doubled.as_dict() == (single * single.frobenius_twist(1)).as_dict()


def test_factorized_and_expanded_polys_agree(hasse):
    for A in (PointTuple.power(CUBIC_CORE, 1),
              PointTuple.of([CUBIC_CORE, [(1, 1), (1, 2), (2, 2)]])):
        assert hasse.poly_of_tuple(A, 2, 3, 5).as_dict() == hasse.poly_of_tuple_expanded(A, 2, 3, 5).as_dict()


def test_evaluate_sparse(hasse):
    field = build_field(3, 1)
    f = make_polynomial(field, 2, 2, {(2, 0): 1, (0, 2): 1})
    assert hasse.evaluate_sparse(_conic_quadric(), f) == FqElem.one(field)
    g = make_polynomial(field, 2, 2, {(2, 0): 1, (1, 1): 1, (0, 2): 1})
    assert hasse.evaluate_sparse(_conic_quadric(), g).is_zero()
    assert hasse.evaluate_sparse(SparsePoly.constant(3, 1), f) == FqElem.one(field)
    with pytest.raises(ParameterError):
        hasse.evaluate_sparse(_conic_quadric(5), f)


@pytest.mark.parametrize("p,a,d,k,variant", [(3, 1, 2, 1, "full"), (3, 2, 2, 1, "specialized"),
                                             (5, 1, 3, 3, "full"), (7, 1, 4, 3, "minimal")])
def test_numeric_value_matches_symbolic_evaluation(hasse, p, a, d, k, variant):
    for seed in range(3):
        f = _random_polynomial(p, a, 2, d, seed)
        symbolic = hasse.evaluate_sparse(hasse.twisted_hasse(k, a, 2, d, p, variant), f)
        assert hasse.twisted_hasse_value(k, f, variant) == symbolic


def test_facial_interior_split_of_conic(hasse):
    fac, interior = hasse.facial_interior_factorization(1, 2, 2, 3)
    assert fac.as_dict() == _conic_quadric().as_dict()
    assert interior == SparsePoly.constant(3, 1)
    with pytest.raises(ParameterError):
        hasse.facial_interior_factorization(1, 2, 3, 5)


@pytest.mark.slow
def test_minimal_tuples_collapse_to_the_unique_set(hasse):
    expected = PointTuple.power([(1, 1), (1, 2), (2, 1), (2, 2)], 1)
    assert hasse.hasse_tuples(4, 1, 2, 6, 11, "minimal") == [expected]
