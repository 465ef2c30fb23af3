# src/application/use_cases/verification_suites.py
import dataclasses
import itertools
import logging
from fractions import Fraction
from math import comb, gcd
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from sympy import primerange

from ...config.settings import settings
from ...domain.exceptions import ParameterError
from ...domain.lattice import (
    frobenius_data, frobenius_numbers, frobenius_vertex_indices, hodge_numbers,
    hodge_vertex_indices, vertex_sets,
)
from ...domain.models import (
    Assertion, CongruenceRecord, ExperimentReport, FrobeniusData, LatticePoint, PointTuple,
    TwistedPermutation,
)
from ...domain.polygon import (
    Comparison, compare, evaluate, fitted_frobenius_polygon, fitted_gap, frobenius_polygon,
    hodge_polygon,
)
from ...infrastructure.arithmetic.cyclotomic import pi_residue, pi_valuation
from ...infrastructure.arithmetic.finite_field import build_field
from ...infrastructure.arithmetic.fq_polynomial import format_polynomial
from ..services.hasse_service import (
    FULL, MINIMAL, SPECIALIZED, HasseService, sections_of, section_coefficient,
    tau0_image,
)
from ..services.newton_service import NewtonService, is_symmetric
from ..services.premium_service import ALL_MODE_LIMIT, PremiumService, edge_cost, sf_enumerate
from ..services.sampling_service import TRINOMIAL, SamplingService

logger = logging.getLogger(__name__)

Params = Dict[str, object]

PREMIUM_CASES = ((1, 3, 7, 1), (1, 4, 11, 1), (2, 2, 5, 1), (2, 2, 5, 2),
                 (2, 3, 7, 1), (2, 3, 11, 1), (2, 3, 11, 2), (2, 4, 11, 1))

# largest |A| whose bijections are enumerated outright
BRUTE_SYM2_SIZE = 8


def _as_ints(value) -> Tuple[int, ...]:
    if isinstance(value, int):
        return (value,)
    return tuple(int(v) for v in value)


def sweep_triples(n_max: int, d_max: int, p_max: int) -> Iterable[Tuple[int, int, int]]:
    """(n, d, p) with gcd(p, d) = 1 and d + 1 < p < p_max."""
    for n in range(1, n_max + 1):
        for d in range(2, d_max + 1):
            for p in primerange(d + 2, p_max):
                if gcd(p, d) == 1:
                    yield n, d, int(p)


def _plane_cases(params: Params) -> List[Tuple[int, int]]:
    """(d, p) with d even, p = -1 mod d and p > d."""
    cases = []
    for d in _as_ints(params.get("d", (2, 4))):
        for p in _as_ints(params.get("p", (3, 7, 11))):
            if d % 2 == 0 and (p + 1) % d == 0 and p > d:
                cases.append((d, p))
    if not cases:
        raise ParameterError("No (d, p) with even d, p = -1 mod d and p > d in the given parameters.")
    return cases


def _low_vertices(d: int, p: int) -> List[int]:
    """Frobenius vertices 1 <= k <= C(d, 2) in the plane."""
    return [k for k in vertex_sets(2, d, p)[1] if 1 <= k <= comb(d, 2)]


def _frobenius_data_checks(data: FrobeniusData) -> Dict[str, bool]:
    """Every table invariant of FrobeniusData at one (n, d, p)."""
    n, d, p = data.n, data.d, data.p
    h, H, split = data.h, data.H, data.hsplit
    top = n * d
    off = [i for i in range(top + 1) if i % d]
    return {
        "sum h_j = (d-1)^n": sum(h) == (d - 1) ** n,
        "h symmetric": all(h[j] == h[top - j] for j in range(top + 1)),
        "h increasing on the first half": all(h[j] <= h[j + 1] for j in range(1, top // 2)),
        "H_i - H_(i-d) = h_i": all(H[i] - data.hodge_sum(i - d) == h[i] for i in range(top + 1)),
        "H_i + H_(nd-i-d)": all(H[i] + H[top - i - d] == Fraction((d - 1) ** n - (-1) ** n, d)
                                for i in off if top - i - d >= 0),
        "H monotone off multiples of d": all(H[i] <= H[k] for i, k in zip(off, off[1:])),
        "split sums": all(x + y == hj and x >= 0 and y >= 0 for (x, y), hj in zip(split, h)),
        "h_(j,1) = 0 when (p-1)j = 0 mod d": all(split[j][1] == 0 for j in range(top + 1)
                                                 if (p - 1) * j % d == 0),
        "split symmetry": all(split[top - j] == (split[j][1], split[j][0]) for j in range(top + 1)
                              if (p - 1) * j % d),
    }


def _check(name: str, checks: Dict[str, bool], witness: str = "") -> Assertion:
    bad = [label for label, ok in checks.items() if not ok]
    return Assertion(name, not bad, f"failed: {', '.join(bad)}" if bad else witness)


class VerificationSuites:
    """Registry of theorem-verification suites; failures are report content."""

    def __init__(self, premium_service: PremiumService, hasse_service: HasseService,
                 newton_service: NewtonService, sampling_service: SamplingService):
        self._premium = premium_service
        self._hasse = hasse_service
        self._newton = newton_service
        self._sampling = sampling_service
        self._registry: Dict[str, Callable[[Params], ExperimentReport]] = {
            "FP>=HP": self._frobenius_above_hodge,
            "PP=FP": self._premium_equals_frobenius,
            "NP>=FP": self._newton_above_frobenius,
            "fitted-identities": self._fitted_identities,
            "degree-bound": self._degree_bound,
            "congruence": self._congruence,
            "specialization": self._specialization,
            "tau0-uniqueness": self._tau0_uniqueness,
            "SF1-collapse": self._sf1_collapse,
            "facial-interior": self._facial_interior,
            "nonvanishing": self._nonvanishing,
        }

    @property
    def names(self) -> List[str]:
        return list(self._registry)

    def verify_suite(self, name: str, params: Optional[Params] = None) -> ExperimentReport:
        if name not in self._registry:
            raise ParameterError(f"Unknown suite '{name}'. Known suites: {', '.join(self._registry)}.")
        params = dict(params or {})
        logger.info(f"Running suite '{name}' with {params}")
        report = self._registry[name](params)
        report = dataclasses.replace(
            report, kind=name, parameters=tuple(sorted((k, str(v)) for k, v in params.items())))
        for failure in report.failed:
            logger.warning(f"Suite '{name}': {failure.name} failed ({failure.witness})")
        logger.info(f"Suite '{name}': {len(report.assertions) - len(report.failed)}/{len(report.assertions)} passed")
        return report

    # -- combinatorial polygons ------------------------------------------------------

    def _frobenius_above_hodge(self, params: Params) -> ExperimentReport:
        assertions = []
        for n, d, p in sweep_triples(int(params.get("n_max", 3)), int(params.get("d_max", 6)),
                                     int(params.get("p_max", 60))):
            data = frobenius_data(n, d, p)
            hp, fp = hodge_polygon(n, d), frobenius_polygon(n, d, p)
            top = (d - 1) ** n
            relation = compare(fp, hp)
            checks = _frobenius_data_checks(data)
            checks.update({
                "FP>=HP": relation in (Comparison.ABOVE, Comparison.EQUAL),
                "FP=HP iff p=1 mod d": (relation == Comparison.EQUAL) == (p % d == 1),
                "endpoints": fp.endpoint == hp.endpoint == (top, Fraction(n * top, 2)),
                "symmetry": is_symmetric(fp, n) and is_symmetric(hp, n),
                "Hodge vertices are Frobenius vertices": set(data.hodge_vertices) <= set(data.frobenius_vertices),
            })
            assertions.append(_check(f"({n},{d},{p})", checks, relation.value))
        return ExperimentReport(kind="FP>=HP", assertions=tuple(assertions))

    def _fitted_identities(self, params: Params) -> ExperimentReport:
        assertions = []
        for n, d, p in sweep_triples(int(params.get("n_max", 3)), int(params.get("d_max", 6)),
                                     int(params.get("p_max", 60))):
            fp, hp = frobenius_polygon(n, d, p), hodge_polygon(n, d)
            split = frobenius_numbers(n, d, p)
            hodge, frobenius = vertex_sets(n, d, p)
            checks: Dict[str, bool] = {}
            for k in frobenius:
                for i, iota in frobenius_vertex_indices(n, d, p, k):
                    if iota == 1 and split[i][1] == 0:
                        continue
                    fitted = evaluate(fitted_frobenius_polygon(n, d, p, i), k)
                    checks[f"FP({k})=FP^({i})({k})"] = evaluate(fp, k) == fitted
                    if iota == 1:
                        gap = fitted_gap(n, d, p, i, (1 - p) * i)
                        checks[f"split gap k={k} i={i}"] = fitted - evaluate(hp, k) == gap
            for k in hodge:
                for i in hodge_vertex_indices(n, d, k):
                    fitted = evaluate(fitted_frobenius_polygon(n, d, p, i), k)
                    checks[f"Hodge gap k={k} i={i}"] = fitted - evaluate(hp, k) == fitted_gap(n, d, p, i, i)
            assertions.append(_check(f"({n},{d},{p})", checks, f"{len(checks)} identities"))
        return ExperimentReport(kind="fitted-identities", assertions=tuple(assertions))

    def _premium_equals_frobenius(self, params: Params) -> ExperimentReport:
        cases = params.get("cases", PREMIUM_CASES)
        assertions = []
        for n, d, p, a in cases:
            fp = frobenius_polygon(n, d, p)
            mode = "all" if len(list(sf_enumerate(1, n, d, "all"))) <= ALL_MODE_LIMIT else "restricted"
            pp = self._premium.premium_polygon(n, d, p, a, mode)
            assertions.append(Assertion(f"PP=FP ({n},{d},{p},a={a}) [{mode}]", pp == fp, f"PP={pp.segments}"))
            if p > 2 * d and mode == "all":
                restricted = self._premium.premium_polygon(n, d, p, a, "restricted")
                assertions.append(Assertion(f"restricted=all ({n},{d},{p},a={a})", restricted == pp,
                                            f"restricted={restricted.segments}"))
        return ExperimentReport(kind="PP=FP", assertions=tuple(assertions))

    # -- sampled Newton polygons -----------------------------------------------------

    def _newton_above_frobenius(self, params: Params) -> ExperimentReport:
        n, d, p = int(params.get("n", 2)), int(params.get("d", 3)), int(params.get("p", 11))
        if p <= 2 * d:
            raise ParameterError(f"The lower bound is asserted for p > 2d, got p={p}, d={d}.")
        _, report = self._sampling.gnp_estimate(
            n, d, p, int(params.get("a", 1)), int(params.get("samples", 50)),
            int(params.get("seed", settings.DEFAULT_SEED)))
        return report

    def _congruence(self, params: Params) -> ExperimentReport:
        n, d, p = int(params.get("n", 2)), int(params.get("d", 2)), int(params.get("p", 3))
        a = int(params.get("a", 1))
        samples = int(params.get("samples", 25))
        seed = int(params.get("seed", settings.DEFAULT_SEED))
        field = build_field(p, a)
        if "k" in params:
            ks = sorted(_as_ints(params["k"]))
        else:
            ks = [k for k in vertex_sets(n, d, p)[1]
                  if 1 <= k <= comb(d + n - 2, n) and field.size ** (k * n) <= settings.ENUMERATION_BUDGET]
        mode = "all" if (d - 1) ** n <= ALL_MODE_LIMIT else "restricted"
        targets = {k: self._premium.premium_at(k, n, d, p, a, mode) for k in ks}

        records: List[CongruenceRecord] = []
        lower_bound, equivalence = [], []
        for index in range(samples):
            f = self._sampling.sample_smooth(n, d, field, seed, index=index)
            nus = self._newton.l_polynomial_coeffs(f, max(ks))
            for k in ks:
                target = targets[k] * a * (p - 1)
                v = pi_valuation(nus[k - 1])
                th = self._hasse.twisted_hasse_value(k, f, FULL)
                if v is not None and v < target:
                    lower_bound.append((index, k))
                if (v == target) != (not th.is_zero()):
                    equivalence.append((index, k))
                residue = sign = None
                if v == target:
                    residue = pi_residue(nus[k - 1], v)
                    if a == 1 and not th.is_zero():
                        ratio = residue * pow(th.coeffs[0], -1, p) % p
                        sign = 1 if ratio == 1 else (-1 if ratio == p - 1 else 0)
                records.append(CongruenceRecord(sample=index, k=k, premium=targets[k], ord_pi=v,
                                                hasse_value=th.coeffs, residue=residue, sign=sign))
        assertions = [
            Assertion("ord_pi(nu_k) >= a(p-1)Prem(k)", not lower_bound, f"violations: {lower_bound}"),
            Assertion("ord_pi(nu_k) = a(p-1)Prem(k) iff TH(k)(f) != 0", not equivalence,
                      f"violations: {equivalence}"),
        ]
        if a == 1:
            signs = {r.sign for r in records if r.sign is not None}
            assertions.append(Assertion("residue = +-TH(k)(f)", 0 not in signs, f"signs seen: {sorted(signs)}"))
            assertions.append(Assertion("one residue sign", len(signs) <= 1, f"signs seen: {sorted(signs)}"))
        return ExperimentReport(kind="congruence", n=n, d=d, p=p, a=a, seed=seed, samples=samples,
                                congruence=tuple(records), assertions=tuple(assertions))

    # -- twisted Hasse polynomials ----------------------------------------------------

    def _degree_bound(self, params: Params) -> ExperimentReport:
        n, d, p = int(params.get("n", 2)), int(params.get("d", 2)), int(params.get("p", 11))
        if p <= d ** (n + 1):
            raise ParameterError(f"The degree bound needs p > d^(n+1), got p={p}, d={d}, n={n}.")
        assertions = []
        for k in vertex_sets(n, d, p)[1]:
            for a in _as_ints(params.get("a", (1, 2))):
                th = self._hasse.twisted_hasse(k, a, n, d, p, FULL)
                interior = th.degree(lambda w: sum(w) < d)
                assertions.append(Assertion(f"interior degree of TH^({a})({k}) < p^a", interior < p ** a,
                                            f"degree {interior}"))
            sets = list(sf_enumerate(k, n, d, "minimal_degree"))
            wide, silent, seen = [], [], set()
            for src, dst in itertools.product(sets, repeat=2):
                for mapping in self._hasse.layer_maps(src, dst, n, d, p, FULL):
                    for u, w in mapping.items():
                        v = LatticePoint(p * x - y for x, y in zip(u, w))
                        if v in seen:
                            continue
                        seen.add(v)
                        for s in sections_of(v, n, d, FULL):
                            if s.interior_degree >= d:
                                wide.append(tuple(v))
                            if s.degree < p and section_coefficient(s, p) == 0:
                                silent.append(tuple(v))
            assertions.append(_check(f"sections at k={k}", {
                "interior degree < d": not wide,
                "deg Mono(s) = deg(s) below p": not silent,
            }, f"{len(seen)} points"))
        return ExperimentReport(kind="degree-bound", n=n, d=d, p=p, assertions=tuple(assertions))

    def _specialization(self, params: Params) -> ExperimentReport:
        samples = int(params.get("samples", 5))
        seed = int(params.get("seed", settings.DEFAULT_SEED))
        assertions = []
        for d, p in _plane_cases(params):
            field = build_field(p, 1)
            for index in range(samples):
                f = self._sampling.sample_smooth(2, d, field, seed, TRINOMIAL, index)
                checks = {}
                for k in _low_vertices(d, p):
                    full = self._hasse.twisted_hasse_value(k, f, FULL)
                    checks[f"k={k}"] = full == self._hasse.twisted_hasse_value(k, f, SPECIALIZED)
                    if d == 2:
                        symbolic = self._hasse.twisted_hasse(k, 1, 2, d, p, SPECIALIZED)
                        checks[f"k={k} symbolic"] = self._hasse.evaluate_sparse(symbolic, f) == full
                assertions.append(_check(f"TH=TH_0 (d={d}, p={p}, sample {index})", checks,
                                         format_polynomial(f)))
        return ExperimentReport(kind="specialization", seed=seed, samples=samples, assertions=tuple(assertions))

    def _sym2_brute(self, A: Tuple[LatticePoint, ...], d: int, p: int) -> List[Dict[LatticePoint, LatticePoint]]:
        """Sym_2 of a single set by enumerating every bijection."""
        everything = [dict(zip(A, perm)) for perm in itertools.permutations(A)]

        def cost(m):
            return sum(edge_cost(u, w, p, d) for u, w in m.items())

        best = min(cost(m) for m in everything)
        survivors = [m for m in everything if cost(m) == best and all(
            self._hasse.survives(LatticePoint(p * x - y for x, y in zip(u, w)), 2, d, p) for u, w in m.items())]
        if not survivors:
            return []
        scored = [(self._hasse.layer_multiplicity(m, p, d), m) for m in survivors]
        low = min(s for s, _ in scored)
        return [m for s, m in scored if s == low]

    def _tau0_uniqueness(self, params: Params) -> ExperimentReport:
        brute_max = int(params.get("brute_max", BRUTE_SYM2_SIZE))
        assertions = []
        for d, p in _plane_cases(params):
            k_max = int(params.get("k_max", comb(d, 2)))
            split = frobenius_numbers(2, d, p)
            h = hodge_numbers(2, d)
            checks = {f"h_({i},1)": split[i][1] == (h[d - i] if 2 * i > d else 0) for i in range(d + 1)}
            assertions.append(_check(f"split lemma (d={d}, p={p})", checks))
            for k in (k for k in _low_vertices(d, p) if k <= k_max):
                i, A = self._hasse.tau0_domain_for_vertex(k, d, p)
                tau0 = TwistedPermutation.from_dicts([{u: tau0_image(u, d, i) for u in A}])
                sym2 = self._hasse.sym_set(PointTuple.power(A, 1), 2, d, p, MINIMAL)
                checks = {"Sym_2 = {tau_0}": sym2 == [tau0]}
                brute_run = len(A) <= brute_max
                if brute_run:
                    brute = [TwistedPermutation.from_dicts([m]) for m in self._sym2_brute(A, d, p)]
                    checks["brute force agrees"] = brute == [tau0]
                witness = f"|A|={len(A)}, brute force {'run' if brute_run else 'skipped'}"
                assertions.append(_check(f"tau_0 (d={d}, p={p}, k={k}, i={i})", checks, witness))
        return ExperimentReport(kind="tau0-uniqueness", assertions=tuple(assertions))

    def _sf1_collapse(self, params: Params) -> ExperimentReport:
        assertions = []
        for d, p in _plane_cases(params):
            for k in _low_vertices(d, p):
                _, A = self._hasse.tau0_domain_for_vertex(k, d, p)
                for a in _as_ints(params.get("a", (1, 2))):
                    tuples = self._hasse.hasse_tuples(k, a, 2, d, p, MINIMAL)
                    assertions.append(Assertion(f"SF_1 (d={d}, p={p}, k={k}, a={a})",
                                                tuples == [PointTuple.power(A, a)], f"{len(tuples)} tuple(s)"))
        return ExperimentReport(kind="SF1-collapse", assertions=tuple(assertions))

    def _facial_interior(self, params: Params) -> ExperimentReport:
        assertions = []
        for d, p in _plane_cases(params):
            facial = {LatticePoint((d, 0)), LatticePoint((d // 2, d // 2)), LatticePoint((0, d))}
            for k in _low_vertices(d, p):
                fac, interior = self._hasse.facial_interior_factorization(k, 2, d, p)
                product = fac * interior
                checks = {
                    "Int is a monomial": len(interior.terms) == 1
                    and all(sum(w) < d for w in interior.variables()),
                    "Fac is facial and nonzero": not fac.is_zero() and set(fac.variables()) <= facial,
                    "deg Fac < (d-1)^2 p": fac.degree() < (d - 1) ** 2 * p,
                }
                for a in _as_ints(params.get("a", (1, 2))):
                    expected = self._hasse.twisted_hasse(k, a, 2, d, p, MINIMAL)
                    twisted = product
                    for l in range(1, a):
                        twisted = twisted * product.frobenius_twist(l)
                    checks[f"TH_1^({a}) = prod (Fac Int)^(p^l)"] = twisted == expected
                assertions.append(_check(f"Fac/Int (d={d}, p={p}, k={k})", checks, f"Fac={fac.to_text()}"))
        return ExperimentReport(kind="facial-interior", assertions=tuple(assertions))

    def _nonvanishing(self, params: Params) -> ExperimentReport:
        max_seeds = int(params.get("max_seeds", 1000))
        seed = int(params.get("seed", settings.DEFAULT_SEED))
        assertions = []
        for d, p in _plane_cases(params):
            for a in _as_ints(params.get("a", (1, 2))):
                field = build_field(p, a)
                for k in _low_vertices(d, p):
                    witness = None
                    for index in range(max_seeds):
                        f = self._sampling.sample_smooth(2, d, field, seed, TRINOMIAL, index)
                        if not self._hasse.twisted_hasse_value(k, f, SPECIALIZED).is_zero():
                            witness = f"sample {index}: {format_polynomial(f)}"
                            break
                    assertions.append(Assertion(f"TH_0^({a})({k}) != 0 somewhere (d={d}, p={p})",
                                                witness is not None, witness or f"none in {max_seeds} samples"))
        return ExperimentReport(kind="nonvanishing", seed=seed, assertions=tuple(assertions))
