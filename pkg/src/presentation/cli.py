# src/presentation/cli.py
import argparse
import logging
import os
from typing import Dict, List, Optional, Sequence, Tuple

from ..application.services.hasse_service import HasseService
from ..application.services.newton_service import NewtonService
from ..application.services.premium_service import PremiumService
from ..application.services.sampling_service import SamplingService
from ..application.use_cases.verification_suites import VerificationSuites
from ..config import settings
from ..domain.exceptions import ParameterError, SuiteFailure
from ..domain.interfaces import IReportRepository
from ..domain.models import ExperimentReport, Polygon, SampleSummary
from ..domain.polygon import fitted_frobenius_polygon, frobenius_polygon, hodge_polygon, vertices
from ..infrastructure.arithmetic.cyclotomic import pi_valuation
from ..infrastructure.arithmetic.fq_polynomial import format_polynomial, parse_polynomial

logger = logging.getLogger(__name__)

EMIT_FORMATS = ("json", "csv", "svg")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="main.py", description="Frobenius, premium and Newton polygons of exponential sums.")
    parser.add_argument("--emit", choices=EMIT_FORMATS, help="write an artifact in this format")
    parser.add_argument("--out", help="artifact path (default: OUTPUT_DIR/<command>.<format>)")
    parser.add_argument("--budget", type=int, help="max points enumerated per exponential sum")
    parser.add_argument("--threads", type=int, help="worker threads")
    sub = parser.add_subparsers(dest="command", required=True)

    polygon = sub.add_parser("polygon", help="Hodge, Frobenius, premium or fitted polygon")
    polygon.add_argument("kind", choices=("hodge", "frobenius", "premium", "fitted"))
    polygon.add_argument("--n", type=int, required=True)
    polygon.add_argument("--d", type=int, required=True)
    polygon.add_argument("--p", type=int)
    polygon.add_argument("--i", type=int)
    polygon.add_argument("--a", type=int, default=1)

    np_cmd = sub.add_parser("np", help="Newton polygon of a polynomial")
    np_cmd.add_argument("--f", required=True, help="polynomial text or a file holding it")

    lpoly = sub.add_parser("lpoly", help="L-polynomial coefficients nu_1..nu_K")
    lpoly.add_argument("--f", required=True)
    lpoly.add_argument("--upto", type=int, required=True)

    th = sub.add_parser("th", help="twisted Hasse polynomial at a Frobenius vertex")
    th.add_argument("--k", type=int, required=True)
    th.add_argument("--a", type=int, default=1)
    th.add_argument("--variant", choices=("full", "specialized", "minimal"), default="full")
    th.add_argument("--n", type=int, default=2)
    th.add_argument("--d", type=int, required=True)
    th.add_argument("--p", type=int, required=True)
    th.add_argument("--f", help="also evaluate at this polynomial")

    gnp = sub.add_parser("gnp", help="sampled minimum of Newton polygons")
    gnp.add_argument("--n", type=int, required=True)
    gnp.add_argument("--d", type=int, required=True)
    gnp.add_argument("--p", type=int, required=True)
    gnp.add_argument("--a", type=int, default=1)
    gnp.add_argument("--samples", type=int, default=100)
    gnp.add_argument("--seed", type=int, default=settings.DEFAULT_SEED)

    verify = sub.add_parser("verify", help="run a verification suite")
    verify.add_argument("--suite", required=True)
    verify.add_argument("--param", action="append", default=[], metavar="KEY=VALUE",
                        help="suite parameter; comma-separated values give a list")
    return parser


def parse_suite_params(items: Sequence[str]) -> Dict[str, object]:
    params: Dict[str, object] = {}
    for item in items:
        key, sep, raw = item.partition("=")
        if not sep or not key:
            raise ParameterError(f"Suite parameter '{item}' is not KEY=VALUE.")
        try:
            values = [int(v) for v in raw.split(",")]
        except ValueError:
            raise ParameterError(f"Suite parameter '{item}' must hold integers.")
        params[key] = values[0] if len(values) == 1 else tuple(values)
    return params


def _describe(name: str, P: Polygon) -> str:
    slopes = ", ".join(f"{s}x{m}" for s, m in P.segments) or "(empty)"
    points = " ".join(f"({k},{v})" for k, v in vertices(P))
    return f"{name}: {slopes}\n  vertices {points}"


def _read_polynomial(source: str):
    if os.path.isfile(source):
        with open(source, "r", encoding="utf-8") as fh:
            source = fh.read()
    return parse_polynomial(source)


class CommandLineHandlers:
    """One handler per subcommand; each returns printable text and an optional artifact."""

    def __init__(self, premium_service: PremiumService, hasse_service: HasseService,
                 newton_service: NewtonService, sampling_service: SamplingService,
                 suites: VerificationSuites, repository: IReportRepository):
        self._premium = premium_service
        self._hasse = hasse_service
        self._newton = newton_service
        self._sampling = sampling_service
        self._suites = suites
        self._repository = repository

    def run(self, args: argparse.Namespace) -> int:
        handler = getattr(self, f"_{args.command}")
        text, report, polygons = handler(args)
        print(text)
        if args.emit:
            self._emit(args, report, polygons)
        if report is not None and args.command == "verify" and not report.passed:
            raise SuiteFailure(report.kind, len(report.failed))
        return 0

    def _emit(self, args: argparse.Namespace, report: Optional[ExperimentReport],
              polygons: List[Tuple[str, Polygon]]) -> None:
        path = args.out or os.path.join(settings.OUTPUT_DIR, f"{args.command}.{args.emit}")
        if args.emit == "json":
            if report is None:
                report = ExperimentReport(kind=args.command, reference_polygons=tuple(polygons))
            self._repository.save_report(report, path)
        elif not polygons:
            raise ParameterError(f"Command '{args.command}' has no polygons to write as {args.emit}.")
        elif args.emit == "csv":
            self._repository.save_polygons_csv(polygons, path)
        else:
            self._repository.save_polygons_svg(polygons, path)
        print(f"wrote {path}")

    def _polygon(self, args: argparse.Namespace):
        if args.kind != "hodge" and args.p is None:
            raise ParameterError(f"'{args.kind}' needs --p.")
        if args.kind == "hodge":
            name, P = f"HP({args.n},{args.d})", hodge_polygon(args.n, args.d)
        elif args.kind == "frobenius":
            name, P = f"FP({args.n},{args.d};{args.p})", frobenius_polygon(args.n, args.d, args.p)
        elif args.kind == "premium":
            name = f"PP({args.n},{args.d};{args.p}) a={args.a}"
            P = self._premium.premium_polygon(args.n, args.d, args.p, args.a)
        else:
            if args.i is None:
                raise ParameterError("'fitted' needs --i.")
            name = f"FP^({args.i})({args.n},{args.d};{args.p})"
            P = fitted_frobenius_polygon(args.n, args.d, args.p, args.i)
        return _describe(name, P), None, [(name, P)]

    def _np(self, args: argparse.Namespace):
        f = _read_polynomial(args.f)
        P = self._newton.newton_polygon(f)
        report = ExperimentReport(kind="np", n=f.n, d=f.d, p=f.field.p, a=f.field.degree, samples=1,
                                  sample_summaries=(SampleSummary(0, format_polynomial(f), P),))
        return _describe("NP", P), report, [("NP", P)]

    def _lpoly(self, args: argparse.Namespace):
        f = _read_polynomial(args.f)
        nus = self._newton.l_polynomial_coeffs(f, args.upto)
        lines, params = [], []
        for k, nu in enumerate(nus, start=1):
            v = pi_valuation(nu)
            lines.append(f"nu_{k} = {list(nu.coeffs)}  ord_pi = {'inf' if v is None else v}")
            params.append((f"nu_{k}", ",".join(map(str, nu.coeffs))))
        report = ExperimentReport(kind="lpoly", n=f.n, d=f.d, p=f.field.p, a=f.field.degree,
                                  parameters=tuple(params))
        return "\n".join(lines), report, []

    def _th(self, args: argparse.Namespace):
        P = self._hasse.twisted_hasse(args.k, args.a, args.n, args.d, args.p, args.variant)
        lines = [f"TH^({args.a})({args.k}) [{args.variant}] = {P.to_text()}"]
        params = [("polynomial", P.to_text())]
        if args.f:
            f = _read_polynomial(args.f)
            value = self._hasse.evaluate_sparse(P, f)
            lines.append(f"value at f = {list(value.coeffs)}")
            params.append(("value", ",".join(map(str, value.coeffs))))
        report = ExperimentReport(kind="th", n=args.n, d=args.d, p=args.p, a=args.a, parameters=tuple(params))
        return "\n".join(lines), report, []

    def _gnp(self, args: argparse.Namespace):
        sampled, report = self._sampling.gnp_estimate(args.n, args.d, args.p, args.a, args.samples, args.seed)
        lines = [_describe("sampled minimum NP", sampled), f"stabilized after {report.stabilized_at} samples"]
        lines += [f"  vs {name}: {relation}" for name, relation in report.comparisons]
        lines += [f"  [{'ok' if x.passed else 'FAIL'}] {x.name}: {x.witness}" for x in report.assertions]
        polygons = [("sampled min NP", sampled)] + list(report.reference_polygons)
        return "\n".join(lines), report, polygons

    def _verify(self, args: argparse.Namespace):
        report = self._suites.verify_suite(args.suite, parse_suite_params(args.param))
        lines = [f"suite {report.kind}: {'PASS' if report.passed else 'FAIL'}"]
        lines += [f"  [{'ok' if x.passed else 'FAIL'}] {x.name}: {x.witness}" for x in report.assertions]
        return "\n".join(lines), report, list(report.reference_polygons)
