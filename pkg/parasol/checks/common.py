"""Shared plumbing for turning per-point results into CheckReports."""

from __future__ import annotations

import logging
from typing import Dict, List, Optional, Sequence, Union

import numpy as np

from parasol.geometry import METRIC, PointGeometry
from parasol.report.models import CheckReport, CheckStatus, PointRecord

logger = logging.getLogger("CheckRunner")


class ParameterError(ValueError):
    """Raised for tensor or theorem parameters outside their admissible range"""


def max_abs(array: np.ndarray) -> float:
    return float(np.max(np.abs(array))) if np.size(array) else 0.0


def error_report(name: str, tolerance: float, message: str) -> CheckReport:
    return CheckReport(check_name=name, status=CheckStatus.ERROR, tolerance=tolerance, message=message)


def not_applicable(
    name: str,
    tolerance: float,
    message: str,
    points_checked: int = 0,
    details: Optional[List[PointRecord]] = None,
) -> CheckReport:
    return CheckReport(
        check_name=name,
        status=CheckStatus.NOT_APPLICABLE,
        tolerance=tolerance,
        message=message,
        points_checked=points_checked,
        details=details or [],
    )


def usable_points(
    name: str, tolerance: float, points: Sequence[PointGeometry], *parts: str
) -> Union[List[PointGeometry], CheckReport]:
    """Non-degenerate points, or an ERROR report if a needed field failed anywhere."""
    for pg in points:
        failed = pg.failure(METRIC, *parts)
        if failed is not None:
            return error_report(name, tolerance, f"point {pg.index}: {failed}")
    usable = [pg for pg in points if pg.degenerate is None]
    if not usable:
        return error_report(name, tolerance, "all sample points are degenerate")
    return usable


def skipped_records(points: Sequence[PointGeometry]) -> List[PointRecord]:
    return [
        PointRecord(
            index=pg.index,
            point=list(pg.x),
            status=CheckStatus.NOT_APPLICABLE,
            message=str(pg.degenerate),
        )
        for pg in points
        if pg.degenerate is not None
    ]


def point_record(
    pg: PointGeometry,
    residual: float,
    tolerance: float,
    values: Optional[Dict[str, Optional[float]]] = None,
    message: str = "",
) -> PointRecord:
    return PointRecord(
        index=pg.index,
        point=list(pg.x),
        residual=residual,
        status=CheckStatus.PASS if residual <= tolerance else CheckStatus.FAIL,
        values=values or {},
        message=message,
    )


def summarize(
    name: str,
    tolerance: float,
    records: List[PointRecord],
    fitted_constants: Optional[Dict[str, Optional[float]]] = None,
    message: str = "",
    extra_residual: float = 0.0,
) -> CheckReport:
    """Fold per-point records (ordered by index) into one report.

    extra_residual carries run-level quantities (e.g. a spread across points)
    that count toward max_residual but belong to no single point.
    """
    records = sorted(records, key=lambda record: record.index)
    checked = [record for record in records if record.residual is not None]
    worst = max(checked, key=lambda record: record.residual, default=None)
    max_residual = max(worst.residual if worst else 0.0, extra_residual)
    status = CheckStatus.PASS if max_residual <= tolerance else CheckStatus.FAIL
    report = CheckReport(
        check_name=name,
        status=status,
        max_residual=max_residual,
        tolerance=tolerance,
        points_checked=len(checked),
        worst_point=list(worst.point) if worst else None,
        details=records,
        fitted_constants=fitted_constants,
        message=message,
    )
    logger.info(f"{name}: {status.value} max_residual={max_residual:.3e}")
    return report
