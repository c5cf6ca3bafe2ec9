"""Chart descriptions: spec loading, builtin families, sampling and field jets."""

from parasol.manifold.bundle import (
    FieldBundle,
    builtin_flat,
    builtin_potential,
    default_coordinates,
    flat_metric,
    potential_metric,
    standard_structure,
    symmetric_metric,
)
from parasol.manifold.errors import (
    DegenerateMetricError,
    FieldEvaluationError,
    MissingVectorFieldError,
    SpecError,
)
from parasol.manifold.fields import (
    MetricJetValue,
    StructureJetValue,
    VectorJetValue,
    check_nondegenerate,
    inverse_metric,
    inverse_metric_at,
    metric_at,
    signature,
    signature_at,
    structure_at,
    vector_field_at,
)
from parasol.manifold.params import SolitonParams, TensorParams, default_beta, default_tensor_params
from parasol.manifold.registry import BuiltinFamily, BuiltinRegistry
from parasol.manifold.sampling import Point, SamplePlan, SplitMix64, sample_points
from parasol.manifold.spec_file import (
    LoadedSpec,
    canonicalize,
    fnv1a_64,
    load_spec,
    load_spec_file,
    spec_digest,
)

__all__ = [
    "BuiltinFamily",
    "BuiltinRegistry",
    "DegenerateMetricError",
    "FieldBundle",
    "FieldEvaluationError",
    "LoadedSpec",
    "MetricJetValue",
    "MissingVectorFieldError",
    "Point",
    "SamplePlan",
    "SolitonParams",
    "SpecError",
    "SplitMix64",
    "StructureJetValue",
    "TensorParams",
    "VectorJetValue",
    "builtin_flat",
    "builtin_potential",
    "canonicalize",
    "check_nondegenerate",
    "default_beta",
    "default_coordinates",
    "default_tensor_params",
    "flat_metric",
    "fnv1a_64",
    "inverse_metric",
    "inverse_metric_at",
    "load_spec",
    "load_spec_file",
    "metric_at",
    "potential_metric",
    "sample_points",
    "signature",
    "signature_at",
    "spec_digest",
    "standard_structure",
    "structure_at",
    "symmetric_metric",
    "vector_field_at",
]
