"""Soliton and tensor-family constants."""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field


class SolitonParams(BaseModel):
    """Soliton constant λ and the scalar field value p (one constant per run)."""

    model_config = ConfigDict(frozen=True, populate_by_name=True, allow_inf_nan=False)

    lam: float = Field(default=0.0, alias="lambda")
    p: float = 0.0


class TensorParams(BaseModel):
    """α, β of the quasi-conformal tensor and a, b of the pseudo-projective tensor."""

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    alpha: float = 1.0
    beta: float = 0.0
    a: float = 1.0
    b: float = 1.0


def default_beta(n: int) -> float:
    """β = −1/(n−2) turns the quasi-conformal tensor into the conformal one."""
    if n <= 2:
        return 0.0
    return -1.0 / (n - 2)


def default_tensor_params(n: int) -> TensorParams:
    return TensorParams(alpha=1.0, beta=default_beta(n), a=1.0, b=1.0)
