"""
Check runner
Evaluates the sample points once, then runs every selected check in catalogue order
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np
from tqdm import tqdm

from parasol.checks.common import error_report
from parasol.checks.parakahler import check_axioms, check_frame_ricci, check_identities
from parasol.checks.soliton import (
    CONFORMAL_EINSTEIN,
    CONFORMAL_RICCI,
    EINSTEIN,
    FLAT_CASE_CHECKS,
    check_soliton,
    check_trace_identity,
    classification_report,
    conformal_einstein_residual_at,
    einstein_flow_velocity,
    flat_case_verdict,
    solenoidal_scalar_verdict,
)
from parasol.checks.special_tensors import TENSOR_KINDS, check_tensor, tensor_at
from parasol.config import PARA_KAHLER_CHECKS
from parasol.geometry import (
    VECTOR_FIELD,
    PointGeometry,
    TensorValue,
    evaluate_point,
    geometry_at,
)
from parasol.manifold import FieldBundle, Point, SamplePlan, sample_points
from parasol.report.models import CheckReport, RunOptions

logger = logging.getLogger("CheckRunner")

QUANTITIES = (
    "ricci",
    "scalar",
    "riemann",
    "christoffel",
    "quasi_conformal",
    "pseudo_projective",
    "w2",
    "soliton",
    "flow",
)

# checks judged against axiom_tolerance rather than tolerance
AXIOM_CHECKS = {"axioms", "identities", "frame_ricci"}


def evaluate_points(
    bundle: FieldBundle, points: Sequence[Point], workers: int = 1, progress: bool = False
) -> List[PointGeometry]:
    """PointGeometry for every point, in index order whatever the completion order."""
    indexed = list(enumerate(points))

    def _evaluate(item) -> PointGeometry:
        index, x = item
        return evaluate_point(bundle, x, index)

    with ThreadPoolExecutor(max_workers=workers) as executor:
        results = executor.map(_evaluate, indexed)
        if progress:
            results = tqdm(results, total=len(indexed), desc="points", unit="pt")
        evaluated = list(results)
    degenerate = sum(1 for pg in evaluated if pg.degenerate is not None)
    if degenerate:
        logger.warning(f"{degenerate}/{len(evaluated)} sample point(s) skipped as degenerate")
    return evaluated


def _ricci_sign(reports: Dict[str, CheckReport]) -> Optional[float]:
    frame = reports.get("frame_ricci")
    if frame is None or not frame.fitted_constants:
        return None
    c = frame.fitted_constants.get("c")
    if c is None or not np.isfinite(c):
        return None
    return float(np.sign(c)) or None


def _dispatch(
    name: str,
    bundle: FieldBundle,
    points: List[PointGeometry],
    tolerance: float,
    done: Dict[str, CheckReport],
) -> CheckReport:
    n = bundle.n
    has_vf = bundle.has_vector_field
    if name == "axioms":
        return check_axioms(points, tolerance)
    if name == "identities":
        return check_identities(points, tolerance)
    if name == "frame_ricci":
        return check_frame_ricci(points, tolerance)
    if name in (EINSTEIN, CONFORMAL_RICCI, CONFORMAL_EINSTEIN):
        return check_soliton(name, points, bundle.soliton, n, tolerance, has_vf)
    if name == "trace_identity":
        return check_trace_identity(points, bundle.soliton, n, tolerance, has_vf)
    if name in TENSOR_KINDS:
        return check_tensor(name, points, bundle.tensor_params, n, tolerance, _ricci_sign(done))
    if name == "solenoidal_scalar":
        return solenoidal_scalar_verdict(points, bundle.soliton, n, tolerance, has_vf)
    for kind, verdict_name in FLAT_CASE_CHECKS.items():
        if name == verdict_name:
            return flat_case_verdict(
                kind, points, bundle.soliton, bundle.tensor_params, n, tolerance, has_vf
            )
    if name == "classification":
        return classification_report(bundle.soliton, tolerance)
    raise ValueError(f"Unknown check: {name}")


def run_checks(bundle: FieldBundle, plan: SamplePlan, options: RunOptions) -> List[CheckReport]:
    """Run options.checks over the plan; a failing check becomes ERROR, the run goes on."""
    plan = plan.with_overrides(options.points, options.seed)
    points = evaluate_points(
        bundle, sample_points(plan, bundle.n), options.workers, options.progress
    )
    reports: Dict[str, CheckReport] = {}
    for name in options.checks:
        tolerance = options.axiom_tolerance if name in AXIOM_CHECKS else options.tolerance
        if name in PARA_KAHLER_CHECKS and bundle.m < 2:
            reports[name] = error_report(
                name, tolerance, f"needs a para-Kähler chart with m >= 2, got n={bundle.n}"
            )
            continue
        try:
            reports[name] = _dispatch(name, bundle, points, tolerance, reports)
        except Exception as exc:
            logger.error(f"{name}: {type(exc).__name__}: {exc}")
            reports[name] = error_report(name, tolerance, f"{type(exc).__name__}: {exc}")
    failed = [name for name, report in reports.items() if report.status.fails_run]
    logger.info(f"Ran {len(reports)} check(s) on {len(points)} point(s); failing: {failed or 'none'}")
    return [reports[name] for name in options.checks]


def _tensor(name: str, array: np.ndarray, valence) -> TensorValue:
    return TensorValue(name, np.asarray(array, dtype=float), valence)


QuantityFn = Callable[[FieldBundle, PointGeometry], TensorValue]

_QUANTITIES: Dict[str, QuantityFn] = {
    "ricci": lambda b, pg: _tensor("ricci", pg.curvature.ricci, (0, 2)),
    "scalar": lambda b, pg: _tensor("scalar", pg.curvature.scalar, (0, 0)),
    "riemann": lambda b, pg: _tensor("riemann", pg.curvature.riemann_up, (1, 3)),
    "christoffel": lambda b, pg: _tensor("christoffel", pg.gamma, (1, 2)),
    "soliton": lambda b, pg: _tensor(
        "soliton", conformal_einstein_residual_at(pg, b.soliton, b.n).matrix, (0, 2)
    ),
    "flow": lambda b, pg: _tensor("flow", einstein_flow_velocity(pg.curvature, pg.g), (0, 2)),
}


def eval_quantity(bundle: FieldBundle, x: Sequence[float], quantity: str) -> TensorValue:
    """One named tensor at one point; raises on degenerate or unevaluable input."""
    if len(x) != bundle.n:
        raise ValueError(f"point has {len(x)} coordinates, chart dimension is {bundle.n}")
    if quantity in TENSOR_KINDS:
        pg = geometry_at(bundle, x)
        return tensor_at(quantity, pg.curvature, pg.g, bundle.tensor_params, bundle.n)
    if quantity not in _QUANTITIES:
        raise ValueError(f"Unknown quantity: {quantity} (choose from {', '.join(QUANTITIES)})")
    parts = (VECTOR_FIELD,) if quantity == "soliton" else ()
    pg = geometry_at(bundle, x, *parts)
    return _QUANTITIES[quantity](bundle, pg)


__all__ = [
    "AXIOM_CHECKS",
    "QUANTITIES",
    "eval_quantity",
    "evaluate_points",
    "run_checks",
]
