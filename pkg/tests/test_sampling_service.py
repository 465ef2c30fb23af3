import time

import pytest

from src.application.services.sampling_service import (
    GENERIC, TRINOMIAL, SamplingService, sample_rng, sample_support,
)
from src.domain.exceptions import BudgetExceededError, ParameterError
from src.domain.polygon import frobenius_polygon, hodge_polygon
from src.infrastructure.arithmetic.finite_field import build_field


def test_rng_streams_are_reproducible():
    assert sample_rng(7, 3).integers(0, 10 ** 6, 5).tolist() == sample_rng(7, 3).integers(0, 10 ** 6, 5).tolist()
    assert sample_rng(7, 3).integers(0, 10 ** 6, 5).tolist() != sample_rng(7, 4).integers(0, 10 ** 6, 5).tolist()


def test_sample_support():
    assert len(sample_support(2, 3, GENERIC)) == 10
    trinomial = sample_support(2, 4, TRINOMIAL)
    assert {u for u in trinomial if sum(u) == 4} == {(4, 0), (2, 2), (0, 4)}
    assert {u for u in sample_support(3, 2, GENERIC) if sum(u) == 2} == {(2, 0, 0), (0, 2, 0), (0, 0, 2)}
    with pytest.raises(ParameterError):
        sample_support(2, 3, TRINOMIAL)
    with pytest.raises(ParameterError):
        sample_support(2, 2, "bogus")


def test_sample_smooth_is_seeded_and_smooth(sampling, newton):
    field = build_field(3, 1)
    f = sampling.sample_smooth(2, 2, field, 11, index=2)
    assert f == sampling.sample_smooth(2, 2, field, 11, index=2)
    assert newton.is_smooth_leading_form(f)
    g = sampling.sample_smooth(2, 4, build_field(7, 1), 11, TRINOMIAL)
    assert set(g.leading_terms()) <= {(4, 0), (2, 2), (0, 4)}


def test_sample_smooth_gives_up_at_the_retry_cap(newton, premium, monkeypatch):
    monkeypatch.setattr(newton, "is_smooth_leading_form", lambda f: False)
    capped = SamplingService(newton_service=newton, premium_service=premium, retry_cap=4)
    with pytest.raises(BudgetExceededError):
        capped.sample_smooth(2, 2, build_field(3, 1), 1)


def test_gnp_of_plane_conic(sampling):
    minimum, report = sampling.gnp_estimate(2, 2, 3, 1, samples=5, seed=1)
    assert minimum == hodge_polygon(2, 2)
    assert report.kind == "gnp-sampled"
    assert report.samples == len(report.sample_summaries) == 5
    assert report.stabilized_at == 1
    assert report.passed


def test_gnp_is_deterministic(sampling):
    assert sampling.gnp_estimate(1, 3, 5, 1, samples=10, seed=3) == sampling.gnp_estimate(1, 3, 5, 1, samples=10, seed=3)
    with pytest.raises(ParameterError):
        sampling.gnp_estimate(1, 3, 5, 1, samples=0)


def test_gnp_attains_hodge_when_p_is_one_mod_d(sampling):
    minimum, report = sampling.gnp_estimate(2, 3, 7, 1, samples=100, seed=20240601)
    assert minimum == hodge_polygon(2, 3)
    assert report.passed
    assert dict(report.comparisons)["HP"] == "P=Q"


@pytest.mark.parametrize("d,p", [(3, 5), (4, 7)])
def test_gnp_attains_frobenius_for_curves(sampling, d, p):
    minimum, report = sampling.gnp_estimate(1, d, p, 1, samples=200, seed=20240601)
    assert minimum == frobenius_polygon(1, d, p)
    assert report.passed
    assert report.stabilized_at <= 200


@pytest.mark.slow
@pytest.mark.parametrize("d", [3, 4])
def test_newton_polygons_lie_above_frobenius(sampling, d):
    _, report = sampling.gnp_estimate(2, d, 11, 1, samples=50, seed=20240601)
    assert {a.name for a in report.assertions} >= {"NP>=FP", "sampled min>=FP"}
    assert report.passed


@pytest.mark.slow
def test_plane_quartic_sampling_fits_the_time_budget(sampling):
    # 50 samples of (2,4,11) must fit in ten minutes
    started = time.perf_counter()
    _, report = sampling.gnp_estimate(2, 4, 11, 1, samples=5, seed=20240601)
    assert time.perf_counter() - started < 60
    assert report.passed


def test_gnp_records_samples_breaking_the_functional_equation(sampling, newton, monkeypatch):
    original = newton.newton_polygon
    calls = []

    def flaky(f):
        calls.append(f)
        if len(calls) == 2:
            raise ArithmeticError("Newton polygon breaks the functional equation.")
        return original(f)

    monkeypatch.setattr(newton, "newton_polygon", flaky)
    minimum, report = sampling.gnp_estimate(2, 2, 3, 1, samples=4, seed=1)
    assert minimum == hodge_polygon(2, 2)
    assert [s.index for s in report.sample_summaries] == [0, 2, 3]
    symmetric = next(a for a in report.assertions if a.name.startswith("NP symmetric"))
    assert not symmetric.passed
    assert symmetric.witness == "rejected samples: [1]"
    assert not report.passed


def test_gnp_fails_when_every_sample_is_rejected(sampling, newton, monkeypatch):
    def broken(f):
        raise ArithmeticError("Newton polygon breaks the functional equation.")

    monkeypatch.setattr(newton, "newton_polygon", broken)
    with pytest.raises(ArithmeticError):
        sampling.gnp_estimate(2, 2, 3, 1, samples=2, seed=1)
