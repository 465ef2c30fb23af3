import dataclasses

import pytest

from src.application.use_cases.verification_suites import PREMIUM_CASES, _frobenius_data_checks, sweep_triples
from src.domain.exceptions import ParameterError
from src.domain.lattice import frobenius_data

PLANE_CONICS = {"d": 2, "p": (3, 7, 11)}
PLANE_QUARTICS = {"d": 4, "p": (3, 7, 11)}


def _assert_passed(report):
    assert report.assertions, "suite produced no assertions"
    assert report.passed, [f"{a.name}: {a.witness}" for a in report.failed]


def test_registry_lists_every_suite(suites):
    assert set(suites.names) == {
        "FP>=HP", "PP=FP", "NP>=FP", "fitted-identities", "degree-bound", "congruence",
        "specialization", "tau0-uniqueness", "SF1-collapse", "facial-interior", "nonvanishing"}
    with pytest.raises(ParameterError):
        suites.verify_suite("no-such-suite")


def test_sweep_triples_respects_coprimality():
    triples = list(sweep_triples(1, 4, 12))
    assert (1, 2, 5) in triples and (1, 4, 7) in triples
    assert all(p > d + 1 and p % d for _, d, p in triples)


def test_frobenius_above_hodge_sweep(suites):
    report = suites.verify_suite("FP>=HP")
    _assert_passed(report)
    assert report.kind == "FP>=HP"
    assert len(report.assertions) == len(list(sweep_triples(3, 6, 60)))


def test_fitted_identities_sweep(suites):
    _assert_passed(suites.verify_suite("fitted-identities"))


def test_premium_equals_frobenius(suites):
    report = suites.verify_suite("PP=FP")
    _assert_passed(report)
    assert len(report.assertions) >= len(PREMIUM_CASES)


def test_parameters_are_recorded(suites):
    report = suites.verify_suite("fitted-identities", {"n_max": 1, "d_max": 3, "p_max": 12})
    assert report.parameters == (("d_max", "3"), ("n_max", "1"), ("p_max", "12"))


def test_newton_bound_needs_a_large_prime(suites):
    with pytest.raises(ParameterError):
        suites.verify_suite("NP>=FP", {"n": 2, "d": 2, "p": 3})


def test_congruence_on_plane_conics(suites):
    report = suites.verify_suite("congruence")
    _assert_passed(report)
    assert len(report.congruence) == 25
    assert {r.k for r in report.congruence} == {1}
    assert all(r.ord_pi == 2 for r in report.congruence)


def test_degree_bound(suites):
    _assert_passed(suites.verify_suite("degree-bound"))
    with pytest.raises(ParameterError):
        suites.verify_suite("degree-bound", {"p": 7})


@pytest.mark.parametrize("name", ["specialization", "tau0-uniqueness", "SF1-collapse", "facial-interior"])
def test_plane_pipeline_on_conics(suites, name):
    _assert_passed(suites.verify_suite(name, PLANE_CONICS))


def test_nonvanishing_on_conics(suites):
    _assert_passed(suites.verify_suite("nonvanishing", {**PLANE_CONICS, "max_seeds": 50}))


def test_plane_cases_must_exist(suites):
    with pytest.raises(ParameterError):
        suites.verify_suite("tau0-uniqueness", {"d": 3, "p": 5})


@pytest.mark.slow
@pytest.mark.parametrize("name", ["specialization", "tau0-uniqueness", "SF1-collapse", "facial-interior",
                                  "nonvanishing"])
def test_plane_pipeline_on_quartics(suites, name):
    _assert_passed(suites.verify_suite(name, PLANE_QUARTICS))


@pytest.mark.slow
@pytest.mark.parametrize("d", [3, 4])
def test_congruence_at_low_vertices(suites, d):
    report = suites.verify_suite("congruence", {"n": 2, "d": d, "p": 11})
    _assert_passed(report)
    assert {r.k for r in report.congruence} == {1, 3}


@pytest.mark.slow
def test_newton_bound_on_plane_cubics(suites):
    _assert_passed(suites.verify_suite("NP>=FP", {"n": 2, "d": 3, "p": 11, "samples": 50}))


@pytest.mark.parametrize("n,d,p", [(2, 3, 5), (2, 4, 11), (3, 6, 59), (1, 5, 53)])
def test_frobenius_data_checks_hold(n, d, p):
    checks = _frobenius_data_checks(frobenius_data(n, d, p))
    assert all(checks.values()), [label for label, ok in checks.items() if not ok]


def test_frobenius_data_checks_catch_broken_tables():
    data = frobenius_data(2, 3, 5)
    broken = dataclasses.replace(data, hsplit=((0, 0), (0, 0), (1, 0), (1, 0), (1, 0), (0, 0), (0, 0)))
    checks = _frobenius_data_checks(broken)
    assert not checks["split sums"] and not checks["split symmetry"]
    assert checks["sum h_j = (d-1)^n"]
    asymmetric = dataclasses.replace(data, h=(0, 0, 2, 1, 1, 0, 0))
    assert not _frobenius_data_checks(asymmetric)["h symmetric"]


def test_frobenius_above_hodge_reports_every_invariant(suites):
    report = suites.verify_suite("FP>=HP", {"n_max": 2, "d_max": 4, "p_max": 20})
    _assert_passed(report)
    assert {a.witness for a in report.assertions} <= {"P=Q", "P>=Q"}


def test_tau0_uniqueness_on_sextics_by_brute_force(suites):
    report = suites.verify_suite("tau0-uniqueness", {"d": 6, "p": 11, "k_max": 3})
    _assert_passed(report)
    vertices = [a for a in report.assertions if a.name.startswith("tau_0")]
    assert len(vertices) == 2
    assert all("brute force run" in a.witness for a in vertices)


@pytest.mark.slow
@pytest.mark.parametrize("p", [11, 17, 23])
def test_tau0_uniqueness_on_sextics(suites, p):
    report = suites.verify_suite("tau0-uniqueness", {"d": 6, "p": p})
    _assert_passed(report)
    assert any("brute force run" in a.witness for a in report.assertions)
