"""Lie derivative of the metric and divergence of a vector field."""

from __future__ import annotations

from typing import Optional

import numpy as np

from parasol.manifold import MetricJetValue, MissingVectorFieldError, VectorJetValue


def _require(vj: Optional[VectorJetValue], operation: str) -> VectorJetValue:
    if vj is None:
        raise MissingVectorFieldError(operation)
    return vj


def lie_derivative_metric_at(mj: MetricJetValue, vj: Optional[VectorJetValue]) -> np.ndarray:
    """(£_V g)_ij = V^k ∂_k g_ij + g_kj ∂_i V^k + g_ik ∂_j V^k."""
    vj = _require(vj, "lie_derivative_metric_at")
    lie = (
        np.einsum("k,kij->ij", vj.V, mj.dg)
        + np.einsum("kj,ik->ij", mj.g, vj.dV)
        + np.einsum("ik,jk->ij", mj.g, vj.dV)
    )
    return 0.5 * (lie + lie.T)


def divergence_at(
    mj: MetricJetValue,
    ginv: np.ndarray,
    gamma: np.ndarray,
    vj: Optional[VectorJetValue],
) -> float:
    """div V = ∂_i V^i + Γ^i_ik V^k."""
    vj = _require(vj, "divergence_at")
    return float(np.trace(vj.dV) + np.einsum("iik,k->", gamma, vj.V))
