"""Soliton and flow residuals, the trace identity, theorem verdicts and classification."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from parasol.checks.common import (
    ParameterError,
    error_report,
    max_abs,
    not_applicable,
    point_record,
    skipped_records,
    summarize,
    usable_points,
)
from parasol.checks.special_tensors import (
    PSEUDO_PROJECTIVE,
    QUASI_CONFORMAL,
    W2,
    flatness_threshold,
    tensor_at,
)
from parasol.geometry import (
    STRUCTURE,
    VECTOR_FIELD,
    CurvatureValue,
    PointGeometry,
    divergence_at,
    geometry_at,
    lie_derivative_metric_at,
)
from parasol.manifold import FieldBundle, MissingVectorFieldError, SolitonParams, TensorParams
from parasol.report.models import CheckReport, CheckStatus, PointRecord

EINSTEIN = "einstein_soliton"
CONFORMAL_RICCI = "conformal_ricci_soliton"
CONFORMAL_EINSTEIN = "conformal_einstein_soliton"

FLAT_CASE_CHECKS = {
    QUASI_CONFORMAL: "solenoidal_quasi_conformal",
    PSEUDO_PROJECTIVE: "solenoidal_pseudo_projective",
    W2: "solenoidal_w2",
}


class SolitonClass(str, Enum):
    SHRINKING = "shrinking"
    STEADY = "steady"
    EXPANDING = "expanding"


@dataclass(frozen=True)
class SolitonResidual:
    matrix: np.ndarray
    norm: float
    trace_identity_value: float


def _lie(pg: PointGeometry) -> np.ndarray:
    if pg.vector is None:
        raise MissingVectorFieldError("soliton residual")
    return lie_derivative_metric_at(pg.metric, pg.vector)


def conformal_shift(params: SolitonParams, n: int) -> float:
    """p + 2/n"""
    return params.p + 2.0 / n


def trace_identity_at(pg: PointGeometry, params: SolitonParams, n: int) -> float:
    """div V + r + [λ − r/2 + ½(p + 2/n)]·n"""
    if pg.vector is None:
        raise MissingVectorFieldError("trace_identity")
    r = pg.curvature.scalar
    div = divergence_at(pg.metric, pg.ginv, pg.gamma, pg.vector)
    return div + r + (params.lam - r / 2.0 + 0.5 * conformal_shift(params, n)) * n


def _residual(pg: PointGeometry, matrix: np.ndarray, params: SolitonParams, n: int) -> SolitonResidual:
    matrix = 0.5 * (matrix + matrix.T)
    return SolitonResidual(
        matrix=matrix,
        norm=max_abs(matrix),
        trace_identity_value=trace_identity_at(pg, params, n),
    )


def conformal_einstein_residual_at(pg: PointGeometry, params: SolitonParams, n: int) -> SolitonResidual:
    """£_V g + 2S + [2λ − r + (p + 2/n)]g"""
    curv = pg.curvature
    coefficient = 2.0 * params.lam - curv.scalar + conformal_shift(params, n)
    return _residual(pg, _lie(pg) + 2.0 * curv.ricci + coefficient * pg.g, params, n)


def einstein_soliton_residual_at(pg: PointGeometry, params: SolitonParams, n: int) -> SolitonResidual:
    """£_V g + 2S + (2λ − r)g"""
    curv = pg.curvature
    coefficient = 2.0 * params.lam - curv.scalar
    return _residual(pg, _lie(pg) + 2.0 * curv.ricci + coefficient * pg.g, params, n)


def conformal_ricci_residual_at(pg: PointGeometry, params: SolitonParams, n: int) -> SolitonResidual:
    """£_V g + 2S − [2λ − (p + 2/n)]g"""
    coefficient = 2.0 * params.lam - conformal_shift(params, n)
    return _residual(pg, _lie(pg) + 2.0 * pg.curvature.ricci - coefficient * pg.g, params, n)


def conformal_einstein_residual(bundle: FieldBundle, x: Sequence[float]) -> SolitonResidual:
    return conformal_einstein_residual_at(geometry_at(bundle, x, VECTOR_FIELD), bundle.soliton, bundle.n)


def einstein_soliton_residual(bundle: FieldBundle, x: Sequence[float]) -> SolitonResidual:
    return einstein_soliton_residual_at(geometry_at(bundle, x, VECTOR_FIELD), bundle.soliton, bundle.n)


def conformal_ricci_residual(bundle: FieldBundle, x: Sequence[float]) -> SolitonResidual:
    return conformal_ricci_residual_at(geometry_at(bundle, x, VECTOR_FIELD), bundle.soliton, bundle.n)


def trace_identity(bundle: FieldBundle, x: Sequence[float]) -> float:
    return trace_identity_at(geometry_at(bundle, x, VECTOR_FIELD), bundle.soliton, bundle.n)


def half_metric_trace(matrix: np.ndarray, ginv: np.ndarray) -> float:
    return 0.5 * float(np.einsum("ij,ij->", ginv, matrix))


def einstein_flow_velocity(curv: CurvatureValue, g: np.ndarray) -> np.ndarray:
    """∂g/∂t = −2(S − (r/2)g)"""
    return -2.0 * (curv.ricci - 0.5 * curv.scalar * g)


def solenoidal_scalar_value(lam: float, p: float, n: int) -> float:
    """Scalar curvature 2λn/(n−2) + n(p + 2/n)/(n−2) singled out by a solenoidal V."""
    if n <= 2:
        raise ParameterError(f"the solenoidal scalar curvature formula needs n > 2, got n={n}")
    return 2.0 * lam * n / (n - 2) + n * (p + 2.0 / n) / (n - 2)


def classify_soliton(lam: float) -> SolitonClass:
    if lam < 0:
        return SolitonClass.SHRINKING
    if lam == 0:
        return SolitonClass.STEADY
    return SolitonClass.EXPANDING


def _vector_scale(pg: PointGeometry) -> float:
    return 1.0 + max_abs(pg.vector.V)


def _biconditional_residual(left: float, right: float, tolerance: float) -> float:
    """Both sides are normalized distances; the iff holds when both are within
    tolerance (residual = the larger) or both are outside (residual 0)."""
    if left > tolerance and right > tolerance:
        return 0.0
    return max(left, right)


ResidualFn = Callable[[PointGeometry, SolitonParams, int], SolitonResidual]

RESIDUALS: Dict[str, ResidualFn] = {
    EINSTEIN: einstein_soliton_residual_at,
    CONFORMAL_RICCI: conformal_ricci_residual_at,
    CONFORMAL_EINSTEIN: conformal_einstein_residual_at,
}


def _missing_vector_field(name: str, tolerance: float) -> CheckReport:
    return not_applicable(name, tolerance, "no vector field defined")


def check_soliton(
    name: str,
    points: Sequence[PointGeometry],
    params: SolitonParams,
    n: int,
    tolerance: float,
    has_vector_field: bool,
) -> CheckReport:
    if not has_vector_field:
        return _missing_vector_field(name, tolerance)
    usable = usable_points(name, tolerance, points, VECTOR_FIELD)
    if isinstance(usable, CheckReport):
        return usable
    records: List[PointRecord] = skipped_records(points)
    for pg in usable:
        residual = RESIDUALS[name](pg, params, n)
        values: Dict[str, Optional[float]] = {
            "norm": residual.norm,
            "scalar": pg.curvature.scalar,
            "div_v": divergence_at(pg.metric, pg.ginv, pg.gamma, pg.vector),
        }
        records.append(point_record(pg, residual.norm / pg.scale, tolerance, values))
    return summarize(name, tolerance, records)


def check_trace_identity(
    points: Sequence[PointGeometry],
    params: SolitonParams,
    n: int,
    tolerance: float,
    has_vector_field: bool,
) -> CheckReport:
    """Trace identity value against ½ g^ij (conformal Einstein residual)_ij."""
    name = "trace_identity"
    if not has_vector_field:
        return _missing_vector_field(name, tolerance)
    usable = usable_points(name, tolerance, points, VECTOR_FIELD)
    if isinstance(usable, CheckReport):
        return usable
    records: List[PointRecord] = skipped_records(points)
    for pg in usable:
        residual = conformal_einstein_residual_at(pg, params, n)
        contracted = half_metric_trace(residual.matrix, pg.ginv)
        value = residual.trace_identity_value
        gap = abs(value - contracted) / max(1.0, abs(value), abs(contracted))
        records.append(
            point_record(pg, gap, tolerance, {"trace_identity": value, "half_trace": contracted})
        )
    return summarize(name, tolerance, records)


def _soliton_gate(
    usable: Sequence[PointGeometry], params: SolitonParams, n: int, tolerance: float
) -> Optional[str]:
    for pg in usable:
        residual = conformal_einstein_residual_at(pg, params, n)
        if residual.norm / pg.scale > tolerance:
            return (
                f"conformal Einstein soliton equation fails at point {pg.index} "
                f"(residual={residual.norm:.3e})"
            )
    return None


def solenoidal_scalar_verdict(
    points: Sequence[PointGeometry],
    params: SolitonParams,
    n: int,
    tolerance: float,
    has_vector_field: bool,
) -> CheckReport:
    """div V = 0 iff r equals the closed-form scalar curvature, on soliton inputs."""
    name = "solenoidal_scalar"
    if n <= 2:
        return error_report(name, tolerance, f"needs n > 2, got n={n}")
    if not has_vector_field:
        return _missing_vector_field(name, tolerance)
    usable = usable_points(name, tolerance, points, VECTOR_FIELD)
    if isinstance(usable, CheckReport):
        return usable
    gate = _soliton_gate(usable, params, n, tolerance)
    if gate is not None:
        return not_applicable(name, tolerance, gate)
    formula = solenoidal_scalar_value(params.lam, params.p, n)
    records: List[PointRecord] = skipped_records(points)
    forward = backward = 0
    for pg in usable:
        div = divergence_at(pg.metric, pg.ginv, pg.gamma, pg.vector)
        r = pg.curvature.scalar
        solenoidal = abs(div) / _vector_scale(pg)
        on_formula = abs(r - formula) / (1.0 + abs(formula))
        residual = _biconditional_residual(solenoidal, on_formula, tolerance)
        is_solenoidal, formula_holds = solenoidal <= tolerance, on_formula <= tolerance
        forward += int(formula_holds or not is_solenoidal)
        backward += int(is_solenoidal or not formula_holds)
        values: Dict[str, Optional[float]] = {
            "div_v": div,
            "scalar": r,
            "formula": formula,
            "solenoidal": 1.0 if solenoidal <= tolerance else 0.0,
            "formula_holds": 1.0 if on_formula <= tolerance else 0.0,
        }
        records.append(point_record(pg, residual, tolerance, values))
    total = len(usable)
    message = (
        f"solenoidal => r formula held at {forward}/{total} point(s); "
        f"r formula => solenoidal held at {backward}/{total} point(s)"
    )
    return summarize(name, tolerance, records, {"formula_scalar": formula}, message)


def _degenerate_params(which: str, params: TensorParams) -> Optional[str]:
    if which == QUASI_CONFORMAL:
        combo = params.alpha + 2.0 * params.beta
        if abs(combo) <= 1e-12 * max(1.0, abs(params.alpha), abs(params.beta)):
            return f"alpha + 2 beta = 0 (alpha={params.alpha}, beta={params.beta})"
    if which == PSEUDO_PROJECTIVE:
        combo = params.a + params.b
        if abs(combo) <= 1e-12 * max(1.0, abs(params.a), abs(params.b)):
            return f"a + b = 0 (a={params.a}, b={params.b})"
    return None


def flat_case_verdict(
    which: str,
    points: Sequence[PointGeometry],
    params: SolitonParams,
    tensor_params: TensorParams,
    n: int,
    tolerance: float,
    has_vector_field: bool,
) -> CheckReport:
    """On a soliton with the selected tensor flat: S, r and R̃ vanish and
    div V = 0 iff λ + ½(p + 2/n) = 0."""
    name = FLAT_CASE_CHECKS[which]
    degenerate = _degenerate_params(which, tensor_params)
    if degenerate is not None:
        return CheckReport(
            check_name=name,
            status=CheckStatus.DEGENERATE_PARAMS,
            tolerance=tolerance,
            message=degenerate,
        )
    if not has_vector_field:
        return _missing_vector_field(name, tolerance)
    usable = usable_points(name, tolerance, points, STRUCTURE, VECTOR_FIELD)
    if isinstance(usable, CheckReport):
        return usable
    gate = _soliton_gate(usable, params, n, tolerance)
    if gate is not None:
        return not_applicable(name, tolerance, gate)
    for pg in usable:
        tensor = tensor_at(which, pg.curvature, pg.g, tensor_params, n)
        threshold = flatness_threshold(tolerance, pg.g, pg.curvature.scalar)
        if max_abs(tensor.components) > threshold:
            return not_applicable(
                name, tolerance, f"{which} tensor is not flat at point {pg.index}"
            )

    constant = params.lam + 0.5 * conformal_shift(params, n)
    constant_zero = abs(constant) <= tolerance
    records: List[PointRecord] = skipped_records(points)
    for pg in usable:
        curv = pg.curvature
        div = divergence_at(pg.metric, pg.ginv, pg.gamma, pg.vector)
        flat_residual = max(
            max_abs(curv.ricci) / pg.scale,
            abs(curv.scalar),
            max_abs(curv.riemann_low) / pg.scale**2,
        )
        solenoidal = abs(div) / _vector_scale(pg)
        biconditional = _biconditional_residual(solenoidal, abs(constant), tolerance)
        values: Dict[str, Optional[float]] = {
            "div_v": div,
            "ricci_norm": max_abs(curv.ricci),
            "scalar": curv.scalar,
            "riemann_norm": max_abs(curv.riemann_low),
            "soliton_constant": constant,
            "reduced_identity": div + constant * n,
        }
        records.append(point_record(pg, max(flat_residual, biconditional), tolerance, values))
    message = (
        f"lambda + (p + 2/n)/2 = {constant:.17g} "
        f"({'zero' if constant_zero else 'nonzero'}); expected solenoidal: {constant_zero}"
    )
    return summarize(name, tolerance, records, {"soliton_constant": constant}, message)


def classification_report(params: SolitonParams, tolerance: float) -> CheckReport:
    label = classify_soliton(params.lam)
    return CheckReport(
        check_name="classification",
        status=CheckStatus.PASS,
        max_residual=0.0,
        tolerance=tolerance,
        points_checked=1,
        fitted_constants={"lambda": params.lam},
        message=label.value,
    )
