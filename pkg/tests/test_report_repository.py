import json
from fractions import Fraction

import pytest

from src.domain.exceptions import ParameterError
from src.domain.models import Assertion, CongruenceRecord, ExperimentReport, SampleSummary
from src.domain.polygon import frobenius_polygon, hodge_polygon
from src.infrastructure.persistence.report_repository import FileReportRepository


@pytest.fixture
def repository():
    return FileReportRepository()


def _report():
    hp = hodge_polygon(2, 3)
    return ExperimentReport(
        kind="gnp-sampled", n=2, d=3, p=5, a=1, seed=7, parameters=(("samples", "1"),), samples=1,
        sample_summaries=(SampleSummary(0, "p=5;a=1;n=2;d=3;terms=0,3:1|3,0:1", hp),),
        min_polygon=hp, stabilized_at=1,
        reference_polygons=(("HP", hp), ("FP", frobenius_polygon(2, 3, 5))),
        comparisons=(("HP", "P=Q"), ("FP", "P<=Q")),
        congruence=(CongruenceRecord(sample=0, k=1, premium=Fraction(3, 4), ord_pi=3,
                                     hasse_value=(2,), residue=1, sign=-1),),
        assertions=(Assertion("NP>=HP", True, "1 samples"),))


def test_json_round_trip(repository, tmp_path):
    path = str(tmp_path / "nested" / "report.json")
    report = _report()
    repository.save_report(report, path)
    assert repository.load_report(path) == report


def test_json_layout(repository, tmp_path):
    path = tmp_path / "report.json"
    repository.save_report(_report(), str(path))
    data = json.loads(path.read_text())
    assert data["schema"] == "1"
    assert data["passed"] is True
    assert data["min_polygon_label"] == "sampled minimum"
    assert data["reference_polygons"][0]["polygon"]["segments"][0] == {"slope": [2, 3], "mult": 1}
    assert data["congruence"][0]["premium"] == [3, 4]
    first = path.read_bytes()
    repository.save_report(_report(), str(path))
    assert path.read_bytes() == first


def test_invalid_reports_are_rejected(repository, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"schema": "1", "kind": "x", "unexpected": 1}')
    with pytest.raises(ParameterError):
        repository.load_report(str(path))
    with pytest.raises(OSError):
        repository.load_report(str(tmp_path / "missing.json"))


def test_unwritable_path(repository, tmp_path):
    blocker = tmp_path / "file.txt"
    blocker.write_text("")
    with pytest.raises(OSError):
        repository.save_report(_report(), str(blocker / "report.json"))


def test_csv(repository, tmp_path):
    path = tmp_path / "hp.csv"
    repository.save_polygons_csv([("HP", hodge_polygon(2, 3))], str(path))
    assert path.read_text().splitlines() == ["k,HP", "0,0/1", "1,2/3", "2,5/3", "3,8/3", "4,4/1"]


def test_csv_pads_shorter_polygons(repository, tmp_path):
    path = tmp_path / "two.csv"
    repository.save_polygons_csv([("A", hodge_polygon(1, 2)), ("B", hodge_polygon(1, 3))], str(path))
    assert path.read_text().splitlines() == ["k,A,B", "0,0/1,0/1", "1,1/2,1/3", "2,,1/1"]


def test_svg(repository, tmp_path):
    path = tmp_path / "polygons.svg"
    polygons = [("HP", hodge_polygon(2, 3)), ("FP", frobenius_polygon(2, 3, 5))]
    repository.save_polygons_svg(polygons, str(path))
    first = path.read_text()
    assert "<svg" in first
    repository.save_polygons_svg(polygons, str(path))
    assert path.read_text() == first
    with pytest.raises(ParameterError):
        repository.save_polygons_svg(polygons * 3, str(path))
    with pytest.raises(ParameterError):
        repository.save_polygons_svg([], str(path))
