"""
Parasol configuration
Tolerances, thresholds and defaults shared by the verification pipeline
"""

import logging
import os
from typing import Dict, List, Optional

logger = logging.getLogger("ParasolConfig")

# Check catalogue, in execution order
CHECK_ORDER: List[str] = [
    "axioms",
    "identities",
    "frame_ricci",
    "einstein_soliton",
    "conformal_ricci_soliton",
    "conformal_einstein_soliton",
    "trace_identity",
    "quasi_conformal",
    "pseudo_projective",
    "w2",
    "solenoidal_scalar",
    "solenoidal_quasi_conformal",
    "solenoidal_pseudo_projective",
    "solenoidal_w2",
    "classification",
]

# Checks whose verdicts only make sense on a para-Kähler chart (n = 2m, m >= 2)
PARA_KAHLER_CHECKS = {
    "axioms",
    "identities",
    "frame_ricci",
    "quasi_conformal",
    "pseudo_projective",
    "w2",
    "solenoidal_scalar",
    "solenoidal_quasi_conformal",
    "solenoidal_pseudo_projective",
    "solenoidal_w2",
}

CHECK_CONFIG = {
    "tolerance": 1e-7,
    "axiom_tolerance": 1e-8,
    "frame_sign_spread": 1e-10,
    # Einstein and conformal Ricci solitons are separate notions; opt-in only
    "default_checks": [
        name
        for name in CHECK_ORDER
        if name not in ("einstein_soliton", "conformal_ricci_soliton")
    ],
}

GEOMETRY_CONFIG = {
    "degeneracy_threshold": 1e-12,  # |det g| < t * (max |g_ij|)^n
    "eigen_threshold": 1e-12,
    "tan_cos_guard": 1e-12,
    "tie_tolerance": 1e-12,  # eigenvalue ties in frame ordering
}

SAMPLING_CONFIG = {
    "default_count": 20,
    "default_seed": 42,
    "default_box": (-0.3, 0.3),
}

REPORT_CONFIG = {
    "version": "1.0",
    "float_digits": 17,
}

ENV_TOLERANCE = "PARASOL_TOLERANCE"
ENV_WORKERS = "PARASOL_WORKERS"
ENV_LOG_LEVEL = "PARASOL_LOG_LEVEL"
ENV_BUILTINS_YAML = "PARASOL_BUILTINS_YAML"


def _safe_float(value: Optional[str]) -> Optional[float]:
    if value is None or not value.strip():
        return None
    try:
        return float(value.strip())
    except ValueError:
        return None


def tolerance_from_env() -> Optional[float]:
    """Tolerance override from PARASOL_TOLERANCE, ignored when not a positive number"""
    raw = os.getenv(ENV_TOLERANCE)
    value = _safe_float(raw)
    if raw is not None and (value is None or value <= 0):
        logger.warning(f"Ignoring {ENV_TOLERANCE}={raw!r}: not a positive number")
        return None
    return value


def workers_from_env() -> Optional[int]:
    raw = os.getenv(ENV_WORKERS)
    if raw is None:
        return None
    try:
        value = int(raw.strip())
    except ValueError:
        value = 0
    if value < 1:
        logger.warning(f"Ignoring {ENV_WORKERS}={raw!r}: not a positive integer")
        return None
    return value


def get_default_checks() -> List[str]:
    return list(CHECK_CONFIG["default_checks"])


def get_check_rank() -> Dict[str, int]:
    """Position of every check in the execution order"""
    return {name: index for index, name in enumerate(CHECK_ORDER)}
