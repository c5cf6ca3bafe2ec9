"""Para-Kähler, special-tensor and soliton checks."""

from parasol.checks.common import ParameterError, max_abs
from parasol.checks.parakahler import (
    AxiomReport,
    FrameRicci,
    axiom_residuals,
    axiom_residuals_at,
    check_axioms,
    check_frame_ricci,
    check_identities,
    curvature_identity_residuals,
    curvature_identity_residuals_at,
    fit_ricci_sign,
    ricci_via_frame,
    ricci_via_frame_at,
)
from parasol.checks.soliton import (
    FLAT_CASE_CHECKS,
    SolitonClass,
    SolitonResidual,
    check_soliton,
    check_trace_identity,
    classification_report,
    classify_soliton,
    conformal_einstein_residual,
    conformal_einstein_residual_at,
    conformal_ricci_residual,
    conformal_ricci_residual_at,
    einstein_flow_velocity,
    einstein_soliton_residual,
    einstein_soliton_residual_at,
    flat_case_verdict,
    half_metric_trace,
    solenoidal_scalar_value,
    solenoidal_scalar_verdict,
    trace_identity,
    trace_identity_at,
)
from parasol.checks.special_tensors import (
    PSEUDO_PROJECTIVE,
    QUASI_CONFORMAL,
    TENSOR_KINDS,
    W2,
    ContractionFit,
    check_tensor,
    constant_curvature_data,
    contraction_coefficients,
    contraction_fit,
    first_pair_antisymmetry,
    flatness_norm,
    flatness_threshold,
    is_flat,
    pseudo_projective_at,
    quasi_conformal_at,
    tensor_at,
    w2_at,
)

__all__ = [
    "FLAT_CASE_CHECKS",
    "PSEUDO_PROJECTIVE",
    "QUASI_CONFORMAL",
    "TENSOR_KINDS",
    "W2",
    "AxiomReport",
    "ContractionFit",
    "FrameRicci",
    "ParameterError",
    "SolitonClass",
    "SolitonResidual",
    "axiom_residuals",
    "axiom_residuals_at",
    "check_axioms",
    "check_frame_ricci",
    "check_identities",
    "check_soliton",
    "check_tensor",
    "check_trace_identity",
    "classification_report",
    "classify_soliton",
    "conformal_einstein_residual",
    "conformal_einstein_residual_at",
    "conformal_ricci_residual",
    "conformal_ricci_residual_at",
    "constant_curvature_data",
    "contraction_coefficients",
    "contraction_fit",
    "curvature_identity_residuals",
    "curvature_identity_residuals_at",
    "einstein_flow_velocity",
    "einstein_soliton_residual",
    "einstein_soliton_residual_at",
    "first_pair_antisymmetry",
    "fit_ricci_sign",
    "flat_case_verdict",
    "flatness_norm",
    "flatness_threshold",
    "half_metric_trace",
    "is_flat",
    "max_abs",
    "pseudo_projective_at",
    "quasi_conformal_at",
    "ricci_via_frame",
    "ricci_via_frame_at",
    "solenoidal_scalar_value",
    "solenoidal_scalar_verdict",
    "tensor_at",
    "trace_identity",
    "trace_identity_at",
    "w2_at",
]
