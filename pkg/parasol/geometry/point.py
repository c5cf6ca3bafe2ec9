"""Everything the checks need at one sample point, computed once."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from parasol.geometry.connection import (
    CurvatureValue,
    christoffel_at,
    christoffel_derivative_at,
    covariant_derivative_structure,
    riemann_at,
)
from parasol.manifold import (
    DegenerateMetricError,
    FieldBundle,
    FieldEvaluationError,
    MetricJetValue,
    StructureJetValue,
    VectorJetValue,
    inverse_metric,
    metric_at,
    structure_at,
    vector_field_at,
)

logger = logging.getLogger("CheckRunner")

METRIC = "metric"
STRUCTURE = "structure"
VECTOR_FIELD = "vector_field"


@dataclass(frozen=True)
class TensorValue:
    """A pointwise component array with its valence (contravariant, covariant)."""

    name: str
    components: np.ndarray
    valence: Tuple[int, int]


@dataclass
class PointGeometry:
    index: int
    x: Tuple[float, ...]
    metric: Optional[MetricJetValue] = None
    ginv: Optional[np.ndarray] = None
    gamma: Optional[np.ndarray] = None
    dgamma: Optional[np.ndarray] = None
    curvature: Optional[CurvatureValue] = None
    structure: Optional[StructureJetValue] = None
    nabla_F: Optional[np.ndarray] = None
    vector: Optional[VectorJetValue] = None
    degenerate: Optional[DegenerateMetricError] = None
    errors: Dict[str, FieldEvaluationError] = field(default_factory=dict)

    @property
    def g(self) -> np.ndarray:
        return self.metric.g

    @property
    def scale(self) -> float:
        """max(1, max |g_ij|), the per-point scale every tolerance is multiplied by."""
        return max(1.0, float(np.max(np.abs(self.metric.g))))

    def failure(self, *parts: str) -> Optional[FieldEvaluationError]:
        """First recorded failure among parts, if any."""
        for part in parts:
            if part in self.errors:
                return self.errors[part]
        return None

    def require(self, *parts: str) -> "PointGeometry":
        """Re-raise the recorded failure when the metric or a needed part is unusable."""
        failed = self.failure(METRIC, *parts)
        if failed is not None:
            raise failed
        if self.degenerate is not None:
            raise self.degenerate
        return self


def evaluate_point(bundle: FieldBundle, x: Sequence[float], index: int = 0) -> PointGeometry:
    """Evaluate g, F, V and derived geometry; failures are recorded per part."""
    point = PointGeometry(index=index, x=tuple(float(c) for c in x))
    try:
        point.metric = metric_at(bundle, point.x)
    except FieldEvaluationError as exc:
        point.errors[METRIC] = exc
    if point.metric is not None:
        try:
            point.ginv = inverse_metric(point.metric.g, point.x)
        except DegenerateMetricError as exc:
            point.degenerate = exc
            logger.debug(f"Point {index} skipped: {exc}")
    if point.ginv is not None:
        point.gamma = christoffel_at(point.metric, point.ginv)
        point.dgamma = christoffel_derivative_at(point.metric, point.ginv)
        point.curvature = riemann_at(point.metric, point.ginv, point.gamma, point.dgamma)
    try:
        point.structure = structure_at(bundle, point.x)
    except FieldEvaluationError as exc:
        point.errors[STRUCTURE] = exc
    if point.structure is not None and point.gamma is not None:
        point.nabla_F = covariant_derivative_structure(
            point.structure.F, point.structure.dF, point.gamma
        )
    if bundle.vector_field is not None:
        try:
            point.vector = vector_field_at(bundle, point.x)
        except FieldEvaluationError as exc:
            point.errors[VECTOR_FIELD] = exc
    return point


def geometry_at(bundle: FieldBundle, x: Sequence[float], *parts: str) -> PointGeometry:
    """evaluate_point for single-point callers: raises instead of recording."""
    return evaluate_point(bundle, x).require(*parts)
