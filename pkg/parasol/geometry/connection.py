"""Levi-Civita connection and curvature of a coordinate metric.

Index conventions (all arrays are plain numpy, coordinate basis):
    gamma[k, i, j]         Γ^k_ij
    dgamma[m, k, i, j]     ∂_m Γ^k_ij
    riemann_up[l, i, j, k] R^l_ijk with R(∂_i, ∂_j)∂_k = R^l_ijk ∂_l
    riemann_low[i, j, k, l] R̃_ijkl = g_lm R^m_ijk
    ricci[j, k]            S_jk = R^i_ijk
    q_op[i, j]             Q^i_j = g^ik S_kj
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from parasol.manifold import MetricJetValue


@dataclass(frozen=True)
class CurvatureValue:
    riemann_up: np.ndarray
    riemann_low: np.ndarray
    ricci: np.ndarray
    scalar: float
    q_op: np.ndarray


def _koszul(dg: np.ndarray) -> np.ndarray:
    # T[i, j, l] = ∂_i g_jl + ∂_j g_il − ∂_l g_ij
    return dg + np.einsum("jil->ijl", dg) - np.einsum("lij->ijl", dg)


def christoffel_at(mj: MetricJetValue, ginv: np.ndarray) -> np.ndarray:
    """Γ^k_ij = ½ g^kl (∂_i g_jl + ∂_j g_il − ∂_l g_ij)."""
    gamma = 0.5 * np.einsum("kl,ijl->kij", ginv, _koszul(mj.dg))
    # lower-index symmetry is exact in exact arithmetic; remove rounding asymmetry
    return 0.5 * (gamma + np.einsum("kji->kij", gamma))


def inverse_metric_derivative(mj: MetricJetValue, ginv: np.ndarray) -> np.ndarray:
    """dginv[m, k, l] = ∂_m g^kl = −g^ka ∂_m g_ab g^bl."""
    return -np.einsum("ka,mab,bl->mkl", ginv, mj.dg, ginv)


def christoffel_derivative_at(mj: MetricJetValue, ginv: np.ndarray) -> np.ndarray:
    """∂_m Γ^k_ij from dg and ddg, with no extra differentiation pass."""
    koszul = _koszul(mj.dg)
    ddg = mj.ddg
    d_koszul = ddg + np.einsum("mjil->mijl", ddg) - np.einsum("mlij->mijl", ddg)
    dginv = inverse_metric_derivative(mj, ginv)
    dgamma = 0.5 * (
        np.einsum("mkl,ijl->mkij", dginv, koszul) + np.einsum("kl,mijl->mkij", ginv, d_koszul)
    )
    return 0.5 * (dgamma + np.einsum("mkji->mkij", dgamma))


def ricci_from_riemann(riemann_up: np.ndarray) -> np.ndarray:
    ricci = np.einsum("iijk->jk", riemann_up)
    return 0.5 * (ricci + ricci.T)


def riemann_at(
    mj: MetricJetValue, ginv: np.ndarray, gamma: np.ndarray, dgamma: np.ndarray
) -> CurvatureValue:
    riemann_up = (
        np.einsum("iljk->lijk", dgamma)
        - np.einsum("jlik->lijk", dgamma)
        + np.einsum("lim,mjk->lijk", gamma, gamma)
        - np.einsum("ljm,mik->lijk", gamma, gamma)
    )
    riemann_low = np.einsum("lm,mijk->ijkl", mj.g, riemann_up)
    ricci = ricci_from_riemann(riemann_up)
    return CurvatureValue(
        riemann_up=riemann_up,
        riemann_low=riemann_low,
        ricci=ricci,
        scalar=float(np.einsum("jk,jk->", ginv, ricci)),
        q_op=ginv @ ricci,
    )


def ricci_at(curv: CurvatureValue) -> np.ndarray:
    return ricci_from_riemann(curv.riemann_up)


def scalar_curvature_at(curv: CurvatureValue, ginv: np.ndarray) -> float:
    return float(np.einsum("jk,jk->", ginv, curv.ricci))


def ricci_operator_at(curv: CurvatureValue, ginv: np.ndarray) -> np.ndarray:
    """Q with g(QX, Y) = S(X, Y)."""
    return ginv @ curv.ricci


def covariant_derivative_structure(
    F: np.ndarray, dF: np.ndarray, gamma: np.ndarray
) -> np.ndarray:
    """(∇_i F)^j_k = ∂_i F^j_k + Γ^j_im F^m_k − Γ^m_ik F^j_m."""
    return (
        dF
        + np.einsum("jim,mk->ijk", gamma, F)
        - np.einsum("mik,jm->ijk", gamma, F)
    )


def curvature_symmetry_residuals(riemann_low: np.ndarray) -> dict:
    """Max-norm of the algebraic Riemann symmetries and first Bianchi sum."""
    return {
        "antisymmetry_ij": float(np.max(np.abs(riemann_low + np.einsum("jikl->ijkl", riemann_low)))),
        "antisymmetry_kl": float(np.max(np.abs(riemann_low + np.einsum("ijlk->ijkl", riemann_low)))),
        "pair_symmetry": float(np.max(np.abs(riemann_low - np.einsum("klij->ijkl", riemann_low)))),
        "first_bianchi": float(
            np.max(
                np.abs(
                    riemann_low
                    + np.einsum("jkil->ijkl", riemann_low)
                    + np.einsum("kijl->ijkl", riemann_low)
                )
            )
        ),
    }
