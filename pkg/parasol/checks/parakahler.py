"""Para-Kähler axioms, curvature identities and the frame-contraction Ricci."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from parasol.checks.common import (
    max_abs,
    point_record,
    skipped_records,
    summarize,
    usable_points,
)
from parasol.config import CHECK_CONFIG
from parasol.geometry import (
    STRUCTURE,
    PointGeometry,
    f_contraction,
    geometry_at,
    pseudo_orthonormal_frame,
)
from parasol.manifold import DegenerateMetricError, FieldBundle, signature
from parasol.report.models import CheckReport, CheckStatus, PointRecord


@dataclass(frozen=True)
class AxiomReport:
    residual_F2: float
    residual_metric_skew: float
    residual_nablaF: float


@dataclass(frozen=True)
class FrameRicci:
    matrix: np.ndarray
    trace_ricci: np.ndarray
    c: Optional[float]
    deviation: float


def axiom_residuals_at(pg: PointGeometry) -> AxiomReport:
    """max |F² − I|, max |FᵀgF + g|, max |∇F| in the coordinate basis."""
    F = pg.structure.F
    n = F.shape[0]
    return AxiomReport(
        residual_F2=max_abs(F @ F - np.eye(n)),
        residual_metric_skew=max_abs(F.T @ pg.g @ F + pg.g),
        residual_nablaF=max_abs(pg.nabla_F),
    )


def axiom_residuals(bundle: FieldBundle, x: Sequence[float]) -> AxiomReport:
    return axiom_residuals_at(geometry_at(bundle, x, STRUCTURE))


def curvature_identity_residuals_at(pg: PointGeometry) -> Dict[str, float]:
    """Residual max-norms of
    R(FX,FY)Z + R(X,Y)Z, R(FX,Y)Z + R(X,FY)Z, S(FX,Y) + S(FY,X), S(FX,FY) + S(X,Y)."""
    F = pg.structure.F
    R = pg.curvature.riemann_up
    S = pg.curvature.ricci
    return {
        "r_fx_fy": max_abs(np.einsum("ai,bj,labk->lijk", F, F, R) + R),
        "r_fx_y": max_abs(
            np.einsum("ai,lajk->lijk", F, R) + np.einsum("bj,libk->lijk", F, R)
        ),
        "s_fx_y": max_abs(F.T @ S + S @ F),
        "s_fx_fy": max_abs(F.T @ S @ F + S),
    }


def curvature_identity_residuals(bundle: FieldBundle, x: Sequence[float]) -> Dict[str, float]:
    return curvature_identity_residuals_at(geometry_at(bundle, x, STRUCTURE))


def fit_ricci_sign(matrix: np.ndarray, ricci: np.ndarray) -> Optional[float]:
    """Least-squares c with matrix ≈ c·ricci; None when ricci vanishes."""
    norm = float(np.sum(ricci * ricci))
    if norm <= 1e-24 * max(1.0, max_abs(matrix)) ** 2:
        return None
    return float(np.sum(matrix * ricci) / norm)


def ricci_via_frame_at(pg: PointGeometry) -> FrameRicci:
    """½ · Σ ε_i R̃(e_i, F e_i, ·, F ·) compared with the trace Ricci tensor."""
    frame = pseudo_orthonormal_frame(pg.g, pg.x)
    matrix = 0.5 * f_contraction(pg.curvature.riemann_low, pg.structure.F, frame)
    ricci = pg.curvature.ricci
    c = fit_ricci_sign(matrix, ricci)
    deviation = max_abs(matrix - (c if c is not None else 0.0) * ricci)
    return FrameRicci(matrix=matrix, trace_ricci=ricci, c=c, deviation=deviation)


def ricci_via_frame(bundle: FieldBundle, x: Sequence[float]) -> FrameRicci:
    return ricci_via_frame_at(geometry_at(bundle, x, STRUCTURE))


def check_axioms(points: Sequence[PointGeometry], tolerance: float) -> CheckReport:
    usable = usable_points("axioms", tolerance, points, STRUCTURE)
    if isinstance(usable, CheckReport):
        return usable
    records: List[PointRecord] = skipped_records(points)
    non_neutral = 0
    for pg in usable:
        axioms = axiom_residuals_at(pg)
        residual = max(
            axioms.residual_F2,
            axioms.residual_metric_skew / pg.scale,
            axioms.residual_nablaF / pg.scale,
        )
        values: Dict[str, Optional[float]] = {
            "residual_F2": axioms.residual_F2,
            "residual_metric_skew": axioms.residual_metric_skew,
            "residual_nablaF": axioms.residual_nablaF,
        }
        message = ""
        try:
            n_plus, n_minus = signature(pg.g, pg.x)
            values.update({"n_plus": float(n_plus), "n_minus": float(n_minus)})
            if n_plus != n_minus:
                non_neutral += 1
                message = f"signature ({n_plus},{n_minus}) is not neutral"
        except DegenerateMetricError as exc:
            message = str(exc)
        records.append(point_record(pg, residual, tolerance, values, message))
    message = f"non-neutral signature at {non_neutral} point(s)" if non_neutral else ""
    return summarize("axioms", tolerance, records, message=message)


def check_identities(points: Sequence[PointGeometry], tolerance: float) -> CheckReport:
    usable = usable_points("identities", tolerance, points, STRUCTURE)
    if isinstance(usable, CheckReport):
        return usable
    records: List[PointRecord] = skipped_records(points)
    for pg in usable:
        residuals = curvature_identity_residuals_at(pg)
        scale = pg.scale * max(
            1.0, max_abs(pg.curvature.riemann_up), max_abs(pg.curvature.ricci)
        )
        residual = max(residuals.values()) / scale
        records.append(point_record(pg, residual, tolerance, dict(residuals)))
    return summarize("identities", tolerance, records)


def check_frame_ricci(points: Sequence[PointGeometry], tolerance: float) -> CheckReport:
    """Frame-contraction Ricci against trace Ricci with one point-independent sign c."""
    usable = usable_points("frame_ricci", tolerance, points, STRUCTURE)
    if isinstance(usable, CheckReport):
        return usable
    records: List[PointRecord] = skipped_records(points)
    results: List[Tuple[PointGeometry, FrameRicci]] = []
    for pg in usable:
        try:
            results.append((pg, ricci_via_frame_at(pg)))
        except DegenerateMetricError as exc:
            records.append(
                PointRecord(
                    index=pg.index,
                    point=list(pg.x),
                    status=CheckStatus.NOT_APPLICABLE,
                    message=str(exc),
                )
            )
    signs = [result.c for _, result in results if result.c is not None]
    c = float(np.mean(signs)) if signs else None
    spread = float(max(signs) - min(signs)) if signs else 0.0

    for pg, result in results:
        scale = max(1.0, max_abs(result.trace_ricci))
        deviation = max_abs(result.matrix - (c if c is not None else 0.0) * result.trace_ricci)
        records.append(
            point_record(
                pg,
                deviation / scale,
                tolerance,
                {"c": result.c, "deviation": deviation},
            )
        )
    extra = 0.0
    message = "trace Ricci vanishes at every point; c undetermined"
    fitted: Dict[str, Optional[float]] = {"c": c, "c_spread": spread if signs else None}
    if c is not None:
        # spread is measured against its own threshold, rescaled onto tolerance
        extra = max(abs(abs(c) - 1.0), spread * tolerance / CHECK_CONFIG["frame_sign_spread"])
        message = f"frame Ricci = c * S with c={c:+.12g}"
        if spread > CHECK_CONFIG["frame_sign_spread"]:
            message = f"{message}; c varies across points (spread={spread:.3e})"
    return summarize("frame_ricci", tolerance, records, fitted, message, extra_residual=extra)
