# src/application/services/sampling_service.py
import logging
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import numpy as np

from ...config.settings import settings
from ...domain.exceptions import BudgetExceededError, ParameterError
from ...domain.lattice import simplex_points
from ...domain.models import (
    Assertion, ExperimentReport, FieldDesc, FqPolynomial, LatticePoint, Polygon, SampleSummary,
)
from ...domain.polygon import (
    compare, frobenius_polygon, hodge_polygon, integer_points, is_at_least, lower_hull,
)
from ...infrastructure.arithmetic.finite_field import build_field
from ...infrastructure.arithmetic.fq_polynomial import format_polynomial, make_polynomial
from .newton_service import NewtonService
from .premium_service import PremiumService

logger = logging.getLogger(__name__)

GENERIC = "generic"
TRINOMIAL = "trinomial_leading"


def sample_rng(seed: int, index: int) -> np.random.Generator:
    """Counter-based Philox stream for sample `index` of a run seeded with `seed`."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, index])))


def sample_support(n: int, d: int, shape: str) -> List[LatticePoint]:
    interior = [u for u in simplex_points(n, d) if sum(u) < d]
    if shape == TRINOMIAL:
        if n != 2 or d % 2:
            raise ParameterError(f"Trinomial leading forms need n=2 and even d, got n={n}, d={d}.")
        facial = [LatticePoint((d, 0)), LatticePoint((d // 2, d // 2)), LatticePoint((0, d))]
        return interior + facial
    if shape != GENERIC:
        raise ParameterError(f"Unknown sample shape '{shape}'.")
    if n <= 2:
        return list(simplex_points(n, d))
    return interior + [LatticePoint(d if i == j else 0 for j in range(n)) for i in range(n)]


class SamplingService:
    """Seeded sampling of smooth polynomials and sampled generic Newton polygons."""

    def __init__(self, newton_service: NewtonService, premium_service: PremiumService,
                 retry_cap: Optional[int] = None, threads: Optional[int] = None):
        self._newton = newton_service
        self._premium = premium_service
        self._retry_cap = retry_cap or settings.SAMPLE_RETRY_CAP
        self._threads = threads or settings.WORKER_THREADS

    def sample_smooth(self, n: int, d: int, field: FieldDesc, rng_seed: int,
                      shape: str = GENERIC, index: int = 0) -> FqPolynomial:
        support = sample_support(n, d, shape)
        rng = sample_rng(rng_seed, index)
        for attempt in range(1, self._retry_cap + 1):
            draws = rng.integers(0, field.p, size=(len(support), field.degree))
            f = make_polynomial(field, n, d, {u: [int(c) for c in row] for u, row in zip(support, draws)})
            if self._newton.is_smooth_leading_form(f):
                return f
            if attempt == self._retry_cap // 2:
                logger.warning(f"Sample {index} (seed {rng_seed}) still singular after {attempt} draws.")
        raise BudgetExceededError(
            f"No smooth {shape} polynomial for (n,d,q)=({n},{d},{field.size}) within {self._retry_cap} draws.")

    def _reference_polygons(self, n: int, d: int, p: int, a: int) -> List[Tuple[str, Polygon]]:
        refs = [("HP", hodge_polygon(n, d))]
        if p > d + 1:
            refs.append(("FP", frobenius_polygon(n, d, p)))
        try:
            refs.append(("PP", self._premium.premium_polygon(n, d, p, a)))
        except BudgetExceededError as e:
            logger.info(f"Premium polygon skipped: {e}")
        return refs

    def gnp_estimate(self, n: int, d: int, p: int, a: int, samples: int,
                     seed: Optional[int] = None) -> Tuple[Polygon, ExperimentReport]:
        """Sampled minimum of NP(f) over seeded smooth f; never the true infimum."""
        if samples < 1:
            raise ParameterError(f"Need at least one sample, got {samples}.")
        seed = settings.DEFAULT_SEED if seed is None else seed
        field = build_field(p, a)
        logger.info(f"Sampling {samples} polynomials for (n,d,p,a)=({n},{d},{p},{a}), seed {seed}")

        def run(index: int) -> Tuple[int, FqPolynomial, Optional[Polygon]]:
            f = self.sample_smooth(n, d, field, seed, GENERIC, index)
            try:
                return index, f, self._newton.newton_polygon(f)
            except ArithmeticError as exc:
                logger.warning(f"Sample {index} ({format_polynomial(f)}) rejected: {exc}")
                return index, f, None

        if self._threads > 1:
            with ThreadPoolExecutor(max_workers=self._threads) as pool:
                results = list(pool.map(run, range(samples)))
        else:
            results = [run(i) for i in range(samples)]
        broken = [index for index, _, P in results if P is None]
        results = [(index, f, P) for index, f, P in results if P is not None]
        if not results:
            raise ArithmeticError(f"No sample gave a valid Newton polygon; rejected samples {broken}.")

        minima: Dict[int, Fraction] = {}
        history: List[Polygon] = []
        for _, _, polygon in results:
            for k, value in integer_points(polygon):
                if k not in minima or value < minima[k]:
                    minima[k] = value
            history.append(lower_hull(sorted(minima.items())))
        sampled_min = history[-1]
        stabilized_at = next(i + 1 for i, P in enumerate(history) if P == sampled_min)

        refs = self._reference_polygons(n, d, p, a)
        comparisons = tuple((name, compare(sampled_min, ref).value) for name, ref in refs)
        assertions = [Assertion("NP symmetric with endpoint (D, nD/2)", not broken,
                                f"rejected samples: {broken}" if broken else f"{len(results)} samples")]
        ref_map = dict(refs)
        assertions.append(self._all_samples("NP>=HP", results, lambda P: is_at_least(P, ref_map["HP"])))
        if p > 2 * d and "FP" in ref_map:
            assertions.append(self._all_samples("NP>=FP", results, lambda P: is_at_least(P, ref_map["FP"])))
            assertions.append(Assertion("sampled min>=FP", is_at_least(sampled_min, ref_map["FP"]),
                                        f"min={sampled_min.segments}"))
        summaries = tuple(SampleSummary(i, format_polynomial(f), P) for i, f, P in results)
        report = ExperimentReport(
            kind="gnp-sampled", n=n, d=d, p=p, a=a, seed=seed, samples=samples,
            sample_summaries=summaries, min_polygon=sampled_min, stabilized_at=stabilized_at,
            reference_polygons=tuple(refs), comparisons=comparisons, assertions=tuple(assertions))
        logger.info(f"Sampled minimum {sampled_min.segments} stabilized after {stabilized_at} samples")
        return sampled_min, report

    @staticmethod
    def _all_samples(name: str, results, check) -> Assertion:
        bad = [i for i, _, P in results if not check(P)]
        return Assertion(name, not bad, f"failing samples: {bad}" if bad else f"{len(results)} samples")
