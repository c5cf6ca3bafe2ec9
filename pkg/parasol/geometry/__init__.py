"""Levi-Civita geometry of a coordinate chart."""

from parasol.geometry.connection import (
    CurvatureValue,
    christoffel_at,
    christoffel_derivative_at,
    covariant_derivative_structure,
    curvature_symmetry_residuals,
    inverse_metric_derivative,
    ricci_at,
    ricci_operator_at,
    riemann_at,
    scalar_curvature_at,
)
from parasol.geometry.frames import (
    FrameValue,
    f_contraction,
    f_contraction_metric,
    frame_gram_residual,
    pseudo_orthonormal_frame,
)
from parasol.geometry.point import (
    METRIC,
    STRUCTURE,
    VECTOR_FIELD,
    PointGeometry,
    TensorValue,
    evaluate_point,
    geometry_at,
)
from parasol.geometry.vector_fields import divergence_at, lie_derivative_metric_at
from parasol.manifold import MissingVectorFieldError

__all__ = [
    "METRIC",
    "STRUCTURE",
    "VECTOR_FIELD",
    "CurvatureValue",
    "FrameValue",
    "MissingVectorFieldError",
    "PointGeometry",
    "TensorValue",
    "christoffel_at",
    "christoffel_derivative_at",
    "covariant_derivative_structure",
    "curvature_symmetry_residuals",
    "divergence_at",
    "evaluate_point",
    "geometry_at",
    "f_contraction",
    "f_contraction_metric",
    "frame_gram_residual",
    "inverse_metric_derivative",
    "lie_derivative_metric_at",
    "pseudo_orthonormal_frame",
    "ricci_at",
    "ricci_operator_at",
    "riemann_at",
    "scalar_curvature_at",
]
