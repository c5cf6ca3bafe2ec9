"""Pseudo-orthonormal frames and the signed F-contraction."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from parasol.config import GEOMETRY_CONFIG
from parasol.manifold import DegenerateMetricError


@dataclass(frozen=True)
class FrameValue:
    """Columns e_i of vectors with g(e_i, e_j) = signs[i] δ_ij."""

    vectors: np.ndarray
    signs: np.ndarray

    @property
    def counts(self) -> Tuple[int, int]:
        return int(np.sum(self.signs > 0)), int(np.sum(self.signs < 0))


def _normalize_sign(vector: np.ndarray) -> np.ndarray:
    for component in vector:
        if abs(component) > GEOMETRY_CONFIG["eigen_threshold"]:
            return vector if component > 0 else -vector
    return vector


def _ordered_eigenpairs(g: np.ndarray) -> List[Tuple[float, np.ndarray]]:
    """Eigenvalues descending; a run of tied eigenvalues is ordered by
    lexicographically greatest sign-normalized eigenvector first."""
    eigenvalues, eigenvectors = np.linalg.eigh(g)
    pairs = sorted(
        ((float(mu), _normalize_sign(eigenvectors[:, i])) for i, mu in enumerate(eigenvalues)),
        key=lambda pair: -pair[0],
    )
    tie = GEOMETRY_CONFIG["tie_tolerance"] * max(1.0, float(np.max(np.abs(eigenvalues))))
    ordered: List[Tuple[float, np.ndarray]] = []
    group: List[Tuple[float, np.ndarray]] = []
    for pair in pairs:
        if group and abs(group[-1][0] - pair[0]) > tie:
            ordered.extend(sorted(group, key=lambda p: tuple(p[1]), reverse=True))
            group = []
        group.append(pair)
    ordered.extend(sorted(group, key=lambda p: tuple(p[1]), reverse=True))
    return ordered


def pseudo_orthonormal_frame(
    g: np.ndarray, x: Optional[Sequence[float]] = None
) -> FrameValue:
    """e_i = v_i / sqrt|μ_i| from g = Σ μ_i v_i v_iᵀ, ε_i = sign μ_i."""
    pairs = _ordered_eigenpairs(g)
    scale = max(1.0, max(abs(mu) for mu, _ in pairs))
    vectors = np.zeros_like(g, dtype=float)
    signs = np.zeros(g.shape[0])
    for i, (mu, v) in enumerate(pairs):
        if abs(mu) < GEOMETRY_CONFIG["eigen_threshold"] * scale:
            raise DegenerateMetricError(
                x if x is not None else (),
                float(np.linalg.det(g)),
                detail=f"eigenvalue {mu:.3e} below threshold",
            )
        vectors[:, i] = v / np.sqrt(abs(mu))
        signs[i] = 1.0 if mu > 0 else -1.0
    return FrameValue(vectors=vectors, signs=signs)


def frame_gram_residual(g: np.ndarray, frame: FrameValue) -> float:
    """max |g(e_i, e_j) − ε_i δ_ij|"""
    gram = frame.vectors.T @ g @ frame.vectors
    return float(np.max(np.abs(gram - np.diag(frame.signs))))


def f_contraction(T_low: np.ndarray, F: np.ndarray, frame: FrameValue) -> np.ndarray:
    """M(∂_z, ∂_w) = Σ_i ε_i T̃(e_i, F e_i, ∂_z, F ∂_w)."""
    E = frame.vectors
    return np.einsum("i,ai,bi,abzd,dw->zw", frame.signs, E, F @ E, T_low, F)


def f_contraction_metric(T_low: np.ndarray, F: np.ndarray, ginv: np.ndarray) -> np.ndarray:
    """Frame-free form of f_contraction, using Σ ε_i e_i ⊗ e_i = g^{-1}."""
    return np.einsum("ac,bc,abzd,dw->zw", ginv, F, T_low, F)
