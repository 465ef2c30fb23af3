# src/domain/interfaces.py
from abc import ABC, abstractmethod
from typing import List, Sequence, Tuple

from .models import ExperimentReport, FqPolynomial, Polygon


class IPointCounter(ABC):
    """Backend counting trace values of a polynomial over an extension field."""

    @abstractmethod
    def trace_counts(self, f: FqPolynomial, k: int) -> List[int]:
        """Return N_0..N_{p-1} with N_t = #{x in F_{q^k}^n : Tr f(x) = t}."""
        pass


class IAssignmentSolver(ABC):
    """Solver for square minimum-cost assignment problems with integer costs."""

    @abstractmethod
    def minimum(self, cost: Sequence[Sequence[int]]) -> int:
        """Minimum total cost of a perfect matching rows -> columns."""
        pass

    @abstractmethod
    def minimizers(self, cost: Sequence[Sequence[int]]) -> Tuple[int, List[Tuple[int, ...]]]:
        """Minimum and every optimal assignment as a tuple of column indices per row."""
        pass


class IReportRepository(ABC):
    """Persistence for experiment reports and polygon artifacts."""

    @abstractmethod
    def save_report(self, report: ExperimentReport, path: str) -> str:
        """Write the canonical JSON form of a report and return the path."""
        pass

    @abstractmethod
    def load_report(self, path: str) -> ExperimentReport:
        """Read a report back from its JSON form."""
        pass

    @abstractmethod
    def save_polygons_csv(self, polygons: Sequence[Tuple[str, Polygon]], path: str) -> str:
        """Write polygon vertices as CSV rows."""
        pass

    @abstractmethod
    def save_polygons_svg(self, polygons: Sequence[Tuple[str, Polygon]], path: str) -> str:
        """Draw up to four polygons with a legend."""
        pass
