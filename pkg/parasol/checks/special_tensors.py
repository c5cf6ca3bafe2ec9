"""Quasi-conformal, pseudo-projective and W₂ curvature tensors.

All tensors are lowered (0,4) arrays T[i, j, k, l] = T̃(∂_i, ∂_j, ∂_k, ∂_l),
i.e. slots (X, Y, Z, W).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from parasol.checks.common import (
    ParameterError,
    max_abs,
    point_record,
    skipped_records,
    summarize,
    usable_points,
)
from parasol.geometry import (
    STRUCTURE,
    CurvatureValue,
    PointGeometry,
    TensorValue,
    f_contraction_metric,
)
from parasol.manifold import TensorParams
from parasol.report.models import CheckReport, PointRecord

QUASI_CONFORMAL = "quasi_conformal"
PSEUDO_PROJECTIVE = "pseudo_projective"
W2 = "w2"
TENSOR_KINDS = (QUASI_CONFORMAL, PSEUDO_PROJECTIVE, W2)


@dataclass(frozen=True)
class ContractionFit:
    s_coefficient: float
    g_coefficient: float
    residual: float
    rank: int


def _gg(g: np.ndarray) -> np.ndarray:
    # g(Y,Z)g(X,W) − g(X,Z)g(Y,W)
    return np.einsum("jk,il->ijkl", g, g) - np.einsum("ik,jl->ijkl", g, g)


def _sg(S: np.ndarray, g: np.ndarray) -> np.ndarray:
    # S(Y,Z)g(X,W) − S(X,Z)g(Y,W)
    return np.einsum("jk,il->ijkl", S, g) - np.einsum("ik,jl->ijkl", S, g)


def _gs(S: np.ndarray, g: np.ndarray) -> np.ndarray:
    # g(Y,Z)S(X,W) − g(X,Z)S(Y,W)
    return np.einsum("jk,il->ijkl", g, S) - np.einsum("ik,jl->ijkl", g, S)


def quasi_conformal_at(
    curv: CurvatureValue, g: np.ndarray, alpha: float, beta: float, n: int
) -> TensorValue:
    """C̃ = αR̃ + β[S(Y,Z)g(X,W) − S(X,Z)g(Y,W) + g(Y,Z)S(X,W) − g(X,Z)S(Y,W)]
    − (r/n)(α/(n−1) + 2β)[g(Y,Z)g(X,W) − g(X,Z)g(Y,W)]."""
    if alpha == 0.0:
        raise ParameterError("alpha must be nonzero for the quasi-conformal tensor")
    S, r = curv.ricci, curv.scalar
    components = (
        alpha * curv.riemann_low
        + beta * (_sg(S, g) + _gs(S, g))
        - (r / n) * (alpha / (n - 1) + 2.0 * beta) * _gg(g)
    )
    return TensorValue(QUASI_CONFORMAL, components, (0, 4))


def pseudo_projective_at(
    curv: CurvatureValue, g: np.ndarray, a: float, b: float, n: int
) -> TensorValue:
    """P̄̃ = aR̃ + b[S(Y,Z)g(X,W) − S(X,Z)g(Y,W)] − (r/n)(a/(n−1) + b)[g g terms]."""
    if a == 0.0 or b == 0.0:
        raise ParameterError(f"a and b must be nonzero for the pseudo-projective tensor (a={a}, b={b})")
    S, r = curv.ricci, curv.scalar
    components = (
        a * curv.riemann_low + b * _sg(S, g) - (r / n) * (a / (n - 1) + b) * _gg(g)
    )
    return TensorValue(PSEUDO_PROJECTIVE, components, (0, 4))


def w2_at(curv: CurvatureValue, g: np.ndarray, n: int) -> TensorValue:
    """W̃₂ = R̃ + (1/(n−1))[g(X,Z)S(Y,W) − g(Y,Z)S(X,W)]."""
    if n <= 2:
        raise ParameterError(f"the W2 tensor needs n > 2, got n={n}")
    S = curv.ricci
    components = curv.riemann_low - _gs(S, g) / (n - 1)
    return TensorValue(W2, components, (0, 4))


def tensor_at(kind: str, curv: CurvatureValue, g: np.ndarray, params: TensorParams, n: int) -> TensorValue:
    if kind == QUASI_CONFORMAL:
        return quasi_conformal_at(curv, g, params.alpha, params.beta, n)
    if kind == PSEUDO_PROJECTIVE:
        return pseudo_projective_at(curv, g, params.a, params.b, n)
    if kind == W2:
        return w2_at(curv, g, n)
    raise ValueError(f"Unknown tensor kind: {kind}")


def flatness_norm(t: TensorValue) -> float:
    return max_abs(t.components)


def flatness_threshold(tolerance: float, g: np.ndarray, r: float) -> float:
    """tol · max|g|² · max(1, |r|); rescaling g rescales tensor and threshold alike."""
    return tolerance * max_abs(g) ** 2 * max(1.0, abs(r))


def is_flat(t: TensorValue, tolerance: float, g: np.ndarray, r: float) -> bool:
    return flatness_norm(t) <= flatness_threshold(tolerance, g, r)


def first_pair_antisymmetry(t: TensorValue) -> float:
    return max_abs(t.components + np.einsum("jikl->ijkl", t.components))


def contraction_fit(M: np.ndarray, S: np.ndarray, g: np.ndarray) -> ContractionFit:
    """Least-squares M ≈ s·S + t·g; residual is relative to max(1, max|M|)."""
    basis = np.stack([S.ravel(), g.ravel()], axis=1)
    coefficients, _, rank, _ = np.linalg.lstsq(basis, M.ravel(), rcond=None)
    fitted = basis @ coefficients
    residual = max_abs(M.ravel() - fitted) / max(1.0, max_abs(M))
    return ContractionFit(
        s_coefficient=float(coefficients[0]),
        g_coefficient=float(coefficients[1]),
        residual=residual,
        rank=int(rank),
    )


def contraction_coefficients(
    kind: str, params: TensorParams, r: float, n: int, ricci_sign: float = 1.0
) -> Tuple[float, float]:
    """Closed-form (S, g) coefficients of the signed F-contraction of each tensor,
    given ½ f(R̃) = ricci_sign · S."""
    c = ricci_sign
    if kind == QUASI_CONFORMAL:
        alpha, beta = params.alpha, params.beta
        return 2.0 * c * alpha + 4.0 * beta, -(2.0 * r / n) * (alpha / (n - 1) + 2.0 * beta)
    if kind == PSEUDO_PROJECTIVE:
        a, b = params.a, params.b
        return 2.0 * c * a + 2.0 * b, -(2.0 * r / n) * (a / (n - 1) + b)
    if kind == W2:
        return 2.0 * c - 2.0 / (n - 1), 0.0
    raise ValueError(f"Unknown tensor kind: {kind}")


def constant_curvature_data(g: np.ndarray, K: float) -> CurvatureValue:
    """Space-form curvature R̃ = K(g_jk g_il − g_ik g_jl), S = K(n−1)g, r = n(n−1)K."""
    n = g.shape[0]
    ginv = np.linalg.inv(g)
    riemann_low = K * _gg(g)
    riemann_up = np.einsum("lm,ijkm->lijk", ginv, riemann_low)
    ricci = K * (n - 1) * g
    return CurvatureValue(
        riemann_up=riemann_up,
        riemann_low=riemann_low,
        ricci=ricci,
        scalar=float(n * (n - 1) * K),
        q_op=ginv @ ricci,
    )


def check_tensor(
    kind: str,
    points: Sequence[PointGeometry],
    params: TensorParams,
    n: int,
    tolerance: float,
    ricci_sign: Optional[float] = None,
) -> CheckReport:
    """Structural check of one tensor family; the flatness verdict is informational."""
    usable = usable_points(kind, tolerance, points, STRUCTURE)
    if isinstance(usable, CheckReport):
        return usable
    records: List[PointRecord] = skipped_records(points)
    flat_everywhere = True
    worst_norm = 0.0
    fit_reference: Optional[Tuple[ContractionFit, Tuple[float, float]]] = None
    mismatch = 0.0
    sign = 1.0 if ricci_sign is None else ricci_sign
    for pg in usable:
        tensor = tensor_at(kind, pg.curvature, pg.g, params, n)
        norm = flatness_norm(tensor)
        threshold = flatness_threshold(tolerance, pg.g, pg.curvature.scalar)
        flat = norm <= threshold
        flat_everywhere = flat_everywhere and flat
        worst_norm = max(worst_norm, norm)
        scale = max(1.0, norm)
        antisymmetry = first_pair_antisymmetry(tensor) / scale
        M = f_contraction_metric(tensor.components, pg.structure.F, pg.ginv)
        fit = contraction_fit(M, pg.curvature.ricci, pg.g)
        expected = contraction_coefficients(kind, params, pg.curvature.scalar, n, sign)
        if fit.rank == 2:
            mismatch = max(
                mismatch,
                abs(fit.s_coefficient - expected[0]) / max(1.0, abs(expected[0])),
                abs(fit.g_coefficient - expected[1]) / max(1.0, abs(expected[1])),
            )
            if fit_reference is None:
                fit_reference = (fit, expected)
        values: Dict[str, Optional[float]] = {
            "flatness_norm": norm,
            "flat_threshold": threshold,
            "antisymmetry": antisymmetry,
            "fit_residual": fit.residual,
            "s_coefficient": fit.s_coefficient if fit.rank == 2 else None,
            "g_coefficient": fit.g_coefficient if fit.rank == 2 else None,
        }
        records.append(
            point_record(pg, max(antisymmetry, fit.residual), tolerance, values)
        )
    fitted: Dict[str, Optional[float]] = {
        "flat": 1.0 if flat_everywhere else 0.0,
        "flatness_norm": worst_norm,
        "s_coefficient": None,
        "g_coefficient": None,
        "expected_s_coefficient": None,
        "expected_g_coefficient": None,
    }
    message = "FLAT" if flat_everywhere else f"NOT FLAT (max norm={worst_norm:.6e})"
    if fit_reference is not None:
        fit, expected = fit_reference
        fitted.update(
            {
                "s_coefficient": fit.s_coefficient,
                "g_coefficient": fit.g_coefficient,
                "expected_s_coefficient": expected[0],
                "expected_g_coefficient": expected[1],
                "coefficient_mismatch": mismatch,
            }
        )
        if mismatch > tolerance:
            message = f"{message}; contraction coefficients differ from closed form (mismatch={mismatch:.3e})"
    return summarize(kind, tolerance, records, fitted, message)
