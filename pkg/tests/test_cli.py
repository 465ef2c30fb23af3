import pytest

from main import EXIT_BUDGET, EXIT_PARAMETER, EXIT_SUITE, main
from src.application.use_cases.verification_suites import VerificationSuites
from src.domain.exceptions import ParameterError
from src.domain.models import Assertion, ExperimentReport
from src.presentation.cli import build_parser, parse_suite_params

CONIC = "p=3;a=1;n=2;d=2;terms=0,2:1|1,0:1|2,0:1"
CUBIC = "p=5;a=1;n=2;d=3;terms=0,3:1|3,0:1"


def test_parse_suite_params():
    assert parse_suite_params(["d=2,4", "p=3"]) == {"d": (2, 4), "p": 3}
    assert parse_suite_params([]) == {}
    with pytest.raises(ParameterError):
        parse_suite_params(["d"])
    with pytest.raises(ParameterError):
        parse_suite_params(["d=x"])


def test_parser_requires_a_command():
    with pytest.raises(SystemExit):
        build_parser().parse_args([])


def test_hodge_polygon_command(capsys):
    assert main(["polygon", "hodge", "--n", "2", "--d", "3"]) == 0
    out = capsys.readouterr().out
    assert "HP(2,3): 2/3x1, 1x2, 4/3x1" in out


def test_frobenius_polygon_needs_a_good_prime(capsys):
    assert main(["polygon", "frobenius", "--n", "2", "--d", "3"]) == EXIT_PARAMETER
    assert main(["polygon", "frobenius", "--n", "2", "--d", "3", "--p", "4"]) == EXIT_PARAMETER


def test_newton_polygon_from_file(tmp_path, capsys):
    source = tmp_path / "f.txt"
    source.write_text(CONIC)
    assert main(["np", "--f", str(source)]) == 0
    assert "NP: 1x1" in capsys.readouterr().out


def test_budget_exit_code():
    assert main(["--budget", "10", "np", "--f", CUBIC]) == EXIT_BUDGET


def test_lpoly_command(capsys):
    assert main(["lpoly", "--f", "p=3;a=1;n=1;d=2;terms=2:1", "--upto", "1"]) == 0
    assert "nu_1 = [-1, -2]  ord_pi = 1" in capsys.readouterr().out


def test_th_command(capsys):
    assert main(["th", "--k", "1", "--d", "2", "--p", "3", "--f", CONIC]) == 0
    out = capsys.readouterr().out
    assert "2*a[1,1]^2+1*a[0,2]^1*a[2,0]^1" in out
    assert "value at f = [1]" in out


def test_csv_emission(tmp_path):
    path = tmp_path / "hp.csv"
    assert main(["--emit", "csv", "--out", str(path), "polygon", "hodge", "--n", "2", "--d", "3"]) == 0
    assert path.read_text().splitlines()[:3] == ['k,"HP(2,3)"', "0,0/1", "1,2/3"]


def test_emitting_polygons_needs_polygons(tmp_path):
    out = str(tmp_path / "x.svg")
    assert main(["--emit", "svg", "--out", out, "lpoly", "--f", CONIC, "--upto", "1"]) == EXIT_PARAMETER


def test_verify_exit_codes(monkeypatch, tmp_path):
    assert main(["verify", "--suite", "no-such-suite"]) == EXIT_PARAMETER

    def failing(self, name, params=None):
        return ExperimentReport(kind=name, assertions=(Assertion("claim", False, "counterexample"),))

    monkeypatch.setattr(VerificationSuites, "verify_suite", failing)
    path = tmp_path / "failed.json"
    assert main(["--emit", "json", "--out", str(path), "verify", "--suite", "FP>=HP"]) == EXIT_SUITE
    assert path.exists()
