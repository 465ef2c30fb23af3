# src/infrastructure/persistence/report_repository.py
import csv
import logging
import os
from typing import Sequence, Tuple

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from pydantic import ValidationError  # noqa: E402

from ...domain.exceptions import ParameterError  # noqa: E402
from ...domain.interfaces import IReportRepository  # noqa: E402
from ...domain.models import ExperimentReport, Polygon  # noqa: E402
from ...domain.polygon import integer_points, vertices  # noqa: E402
from .schemas import ReportModel  # noqa: E402

logger = logging.getLogger(__name__)

MAX_SVG_POLYGONS = 4


def _prepare(path: str) -> None:
    folder = os.path.dirname(path)
    if folder:
        os.makedirs(folder, exist_ok=True)


class FileReportRepository(IReportRepository):
    """Reports as canonical JSON files, polygons as CSV tables and SVG plots."""

    def save_report(self, report: ExperimentReport, path: str) -> str:
        text = ReportModel.from_domain(report).model_dump_json(by_alias=True, indent=2)
        try:
            _prepare(path)
            with open(path, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text + "\n")
        except OSError as e:
            logger.error(f"Could not write report to {path}: {e}")
            raise OSError(f"Could not write report to {path}: {e}") from e
        logger.info(f"Report '{report.kind}' written to {path}")
        return path

    def load_report(self, path: str) -> ExperimentReport:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                model = ReportModel.model_validate_json(fh.read())
        except OSError as e:
            logger.error(f"Could not read report {path}: {e}")
            raise OSError(f"Could not read report {path}: {e}") from e
        except ValidationError as e:
            raise ParameterError(f"{path} is not a valid report: {e}")
        return model.to_domain()

    def save_polygons_csv(self, polygons: Sequence[Tuple[str, Polygon]], path: str) -> str:
        """Header 'k,<name>...' then one row per integer abscissa with values as num/den."""
        columns = [dict(integer_points(P)) for _, P in polygons]
        top = max((P.length for _, P in polygons), default=0)
        try:
            _prepare(path)
            with open(path, "w", encoding="utf-8", newline="") as fh:
                writer = csv.writer(fh, lineterminator="\n")
                writer.writerow(["k"] + [name for name, _ in polygons])
                for k in range(top + 1):
                    row = [str(k)]
                    for column in columns:
                        value = column.get(k)
                        row.append("" if value is None else f"{value.numerator}/{value.denominator}")
                    writer.writerow(row)
        except OSError as e:
            logger.error(f"Could not write CSV to {path}: {e}")
            raise OSError(f"Could not write CSV to {path}: {e}") from e
        return path

    def save_polygons_svg(self, polygons: Sequence[Tuple[str, Polygon]], path: str) -> str:
        if not 1 <= len(polygons) <= MAX_SVG_POLYGONS:
            raise ParameterError(f"An SVG overlays 1 to {MAX_SVG_POLYGONS} polygons, got {len(polygons)}.")
        plt.rcParams["svg.hashsalt"] = "polygons"
        fig, ax = plt.subplots(figsize=(6, 4))
        try:
            for name, P in polygons:
                pts = vertices(P)
                ax.plot([float(x) for x, _ in pts], [float(y) for _, y in pts], marker="o", label=name)
            ax.set_xlabel("k")
            ax.set_ylabel("value")
            ax.legend()
            _prepare(path)
            fig.savefig(path, format="svg", metadata={"Date": None})
        except OSError as e:
            logger.error(f"Could not write SVG to {path}: {e}")
            raise OSError(f"Could not write SVG to {path}: {e}") from e
        finally:
            plt.close(fig)
        return path
