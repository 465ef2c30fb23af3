# src/infrastructure/persistence/schemas.py
from fractions import Fraction
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from ...domain.models import (
    Assertion, CongruenceRecord, ExperimentReport, Polygon, SampleSummary,
)

SCHEMA_VERSION = "1"


def _pair(x: Fraction) -> Tuple[int, int]:
    return x.numerator, x.denominator


class SegmentModel(BaseModel):
    """One polygon segment; slope as [numerator, denominator]."""
    model_config = ConfigDict(extra="forbid")
    slope: Tuple[int, int]
    mult: int


class PolygonModel(BaseModel):
    model_config = ConfigDict(extra="forbid")
    segments: List[SegmentModel] = []

    @classmethod
    def from_domain(cls, polygon: Polygon) -> "PolygonModel":
        return cls(segments=[SegmentModel(slope=_pair(s), mult=m) for s, m in polygon.segments])

    def to_domain(self) -> Polygon:
        return Polygon(tuple((Fraction(*seg.slope), seg.mult) for seg in self.segments))


class NamedPolygonModel(BaseModel):
    name: str
    polygon: PolygonModel


class ComparisonModel(BaseModel):
    name: str
    relation: str


class ParameterModel(BaseModel):
    name: str
    value: str


class AssertionModel(BaseModel):
    name: str
    passed: bool
    witness: str = ""


class CongruenceModel(BaseModel):
    sample: int
    k: int
    premium: Tuple[int, int]
    ord_pi: Optional[int] = None
    hasse_value: List[int]
    residue: Optional[int] = None
    sign: Optional[int] = None


class SampleModel(BaseModel):
    index: int
    polynomial: str
    newton_polygon: PolygonModel


class ReportModel(BaseModel):
    """Persisted form of an ExperimentReport; field order is the serialization order."""
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    schema_version: str = Field(SCHEMA_VERSION, alias="schema")
    kind: str
    n: Optional[int] = None
    d: Optional[int] = None
    p: Optional[int] = None
    a: Optional[int] = None
    seed: Optional[int] = None
    parameters: List[ParameterModel] = []
    samples: int = 0
    sample_summaries: List[SampleModel] = []
    min_polygon: Optional[PolygonModel] = None
    min_polygon_label: Optional[str] = None
    stabilized_at: Optional[int] = None
    reference_polygons: List[NamedPolygonModel] = []
    comparisons: List[ComparisonModel] = []
    congruence: List[CongruenceModel] = []
    assertions: List[AssertionModel] = []
    passed: bool = True

    @classmethod
    def from_domain(cls, report: ExperimentReport) -> "ReportModel":
        return cls(
            kind=report.kind, n=report.n, d=report.d, p=report.p, a=report.a, seed=report.seed,
            parameters=[ParameterModel(name=k, value=v) for k, v in report.parameters],
            samples=report.samples,
            sample_summaries=[SampleModel(index=s.index, polynomial=s.polynomial,
                                          newton_polygon=PolygonModel.from_domain(s.newton_polygon))
                              for s in report.sample_summaries],
            min_polygon=None if report.min_polygon is None else PolygonModel.from_domain(report.min_polygon),
            min_polygon_label=None if report.min_polygon is None else "sampled minimum",
            stabilized_at=report.stabilized_at,
            reference_polygons=[NamedPolygonModel(name=name, polygon=PolygonModel.from_domain(P))
                                for name, P in report.reference_polygons],
            comparisons=[ComparisonModel(name=name, relation=rel) for name, rel in report.comparisons],
            congruence=[CongruenceModel(sample=r.sample, k=r.k, premium=_pair(r.premium), ord_pi=r.ord_pi,
                                        hasse_value=list(r.hasse_value), residue=r.residue, sign=r.sign)
                        for r in report.congruence],
            assertions=[AssertionModel(name=x.name, passed=x.passed, witness=x.witness) for x in report.assertions],
            passed=report.passed,
        )

    def to_domain(self) -> ExperimentReport:
        return ExperimentReport(
            kind=self.kind, n=self.n, d=self.d, p=self.p, a=self.a, seed=self.seed,
            parameters=tuple((x.name, x.value) for x in self.parameters),
            samples=self.samples,
            sample_summaries=tuple(SampleSummary(s.index, s.polynomial, s.newton_polygon.to_domain())
                                   for s in self.sample_summaries),
            min_polygon=None if self.min_polygon is None else self.min_polygon.to_domain(),
            stabilized_at=self.stabilized_at,
            reference_polygons=tuple((x.name, x.polygon.to_domain()) for x in self.reference_polygons),
            comparisons=tuple((x.name, x.relation) for x in self.comparisons),
            congruence=tuple(CongruenceRecord(sample=r.sample, k=r.k, premium=Fraction(*r.premium),
                                              ord_pi=r.ord_pi, hasse_value=tuple(r.hasse_value),
                                              residue=r.residue, sign=r.sign) for r in self.congruence),
            assertions=tuple(Assertion(x.name, x.passed, x.witness) for x in self.assertions),
        )
