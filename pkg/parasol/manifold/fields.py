"""Pointwise evaluation of g, F and V with exact derivatives via Jet2 seeds."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Sequence, Tuple

import numpy as np

from parasol.config import GEOMETRY_CONFIG
from parasol.exprlang import EvaluationError, ExprAst, evaluate
from parasol.jets import Jet2, seed_jet
from parasol.manifold.bundle import FieldBundle
from parasol.manifold.errors import (
    DegenerateMetricError,
    FieldEvaluationError,
    MissingVectorFieldError,
    SpecError,
)


@dataclass(frozen=True)
class MetricJetValue:
    """g_ij, dg[k, i, j] = ∂_k g_ij and ddg[k, l, i, j] = ∂_k∂_l g_ij at one point."""

    g: np.ndarray
    dg: np.ndarray
    ddg: np.ndarray


@dataclass(frozen=True)
class StructureJetValue:
    """F[j, k] = F^j_k and dF[i, j, k] = ∂_i F^j_k."""

    F: np.ndarray
    dF: np.ndarray


@dataclass(frozen=True)
class VectorJetValue:
    """V[k] = V^k and dV[i, k] = ∂_i V^k."""

    V: np.ndarray
    dV: np.ndarray


def jet_environment(bundle: FieldBundle, x: Sequence[float]) -> Dict[str, Jet2]:
    if len(x) != bundle.n:
        raise SpecError(f"point has {len(x)} coordinates, chart dimension is {bundle.n}")
    return {
        name: seed_jet(float(value), index, bundle.n)
        for index, (name, value) in enumerate(zip(bundle.coordinates, x))
    }


def _entry_jet(ast: ExprAst, env: Dict[str, Jet2], n: int, label: str) -> Jet2:
    try:
        result = evaluate(ast, env)
    except EvaluationError as exc:
        raise FieldEvaluationError(label, exc) from exc
    if isinstance(result, Jet2):
        return result
    return Jet2.constant(float(result), n)


def metric_at(bundle: FieldBundle, x: Sequence[float]) -> MetricJetValue:
    n = bundle.n
    env = jet_environment(bundle, x)
    g = np.zeros((n, n))
    dg = np.zeros((n, n, n))
    ddg = np.zeros((n, n, n, n))
    for i in range(n):
        for j in range(i, n):
            jet = _entry_jet(bundle.metric[i][j], env, n, f"g[{i}][{j}]")
            for a, b in ((i, j), (j, i)):
                g[a, b] = jet.value
                dg[:, a, b] = jet.gradient
                ddg[:, :, a, b] = jet.hessian
    return MetricJetValue(g=g, dg=dg, ddg=ddg)


def structure_at(bundle: FieldBundle, x: Sequence[float]) -> StructureJetValue:
    n = bundle.n
    env = jet_environment(bundle, x)
    F = np.zeros((n, n))
    dF = np.zeros((n, n, n))
    for j in range(n):
        for k in range(n):
            jet = _entry_jet(bundle.structure[j][k], env, n, f"F[{j}][{k}]")
            F[j, k] = jet.value
            dF[:, j, k] = jet.gradient
    return StructureJetValue(F=F, dF=dF)


def vector_field_at(bundle: FieldBundle, x: Sequence[float]) -> VectorJetValue:
    if bundle.vector_field is None:
        raise MissingVectorFieldError("vector_field_at")
    n = bundle.n
    env = jet_environment(bundle, x)
    V = np.zeros(n)
    dV = np.zeros((n, n))
    for k, ast in enumerate(bundle.vector_field):
        jet = _entry_jet(ast, env, n, f"V[{k}]")
        V[k] = jet.value
        dV[:, k] = jet.gradient
    return VectorJetValue(V=V, dV=dV)


def check_nondegenerate(g: np.ndarray, x: Sequence[float]) -> float:
    """det g, raising when |det g| < threshold · (max |g_ij|)^n."""
    n = g.shape[0]
    scale = float(np.max(np.abs(g)))
    det = float(np.linalg.det(g))
    if scale == 0.0 or abs(det) < GEOMETRY_CONFIG["degeneracy_threshold"] * scale**n:
        raise DegenerateMetricError(x, det)
    return det


def inverse_metric(g: np.ndarray, x: Sequence[float]) -> np.ndarray:
    check_nondegenerate(g, x)
    ginv = np.linalg.inv(g)
    return 0.5 * (ginv + ginv.T)


def inverse_metric_at(bundle: FieldBundle, x: Sequence[float]) -> np.ndarray:
    return inverse_metric(metric_at(bundle, x).g, x)


def signature(g: np.ndarray, x: Sequence[float]) -> Tuple[int, int]:
    """(n_plus, n_minus) from the eigenvalues of the symmetric matrix g."""
    eigenvalues = np.linalg.eigvalsh(g)
    scale = float(np.max(np.abs(g)))
    threshold = GEOMETRY_CONFIG["eigen_threshold"] * max(scale, 1.0)
    smallest = float(np.min(np.abs(eigenvalues)))
    if smallest < threshold:
        raise DegenerateMetricError(
            x, float(np.prod(eigenvalues)), detail=f"eigenvalue magnitude {smallest:.3e}"
        )
    return int(np.sum(eigenvalues > 0)), int(np.sum(eigenvalues < 0))


def signature_at(bundle: FieldBundle, x: Sequence[float]) -> Tuple[int, int]:
    return signature(metric_at(bundle, x).g, x)
