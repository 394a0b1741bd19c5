"""Steady-state quadrature covariance from the Lyapunov equation ΛV + VΛᵀ = −D.

For a 4×4 drift the equation is solved exactly as the 16×16 linear system
(Λ⊗I + I⊗Λ) vec(V) = −vec(D) by dense LU with partial pivoting, followed by
one step of iterative refinement and symmetrization.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import linalg

from ..errors import InadmissibleBranch, SingularSystem, UnstableDrift
from ..model import DEFAULT_TOLERANCES, SystemParams, Tolerances
from ..stability import DriftMatrix, build_drift_matrix, max_real_part
from ..steadystate import BranchLabel, branch_by_label, magnon_branches

logger = logging.getLogger(__name__)

_EYE4 = np.eye(4)
_PIVOT_RATIO_MIN = 1e-14


@dataclass(frozen=True, eq=False)
class DiffusionMatrix:
    entries: np.ndarray


@dataclass(frozen=True, eq=False)
class CovarianceMatrix:
    entries: np.ndarray
    residual: float = 0.0
    near_marginal: bool = False


def diffusion_matrix(params: SystemParams) -> DiffusionMatrix:
    """D = diag[(2n̄a+1)κa, (2n̄a+1)κa, (2n̄m+1)γm, (2n̄m+1)γm]."""
    ca = (2.0 * params.nbar_a + 1.0) * params.kappa_a
    cm = (2.0 * params.nbar_m + 1.0) * params.gamma_m
    return DiffusionMatrix(np.diag([ca, ca, cm, cm]))


def lyapunov_residual(drift: DriftMatrix, diff: DiffusionMatrix, V: np.ndarray) -> float:
    L = drift.entries
    return float(np.max(np.abs(L @ V + V @ L.T + diff.entries)))


def solve_lyapunov(
    drift: DriftMatrix,
    diff: DiffusionMatrix,
    tol_stab: float = DEFAULT_TOLERANCES.tol_stab,
    marginal_band: float = DEFAULT_TOLERANCES.marginal_band,
) -> CovarianceMatrix:
    """Symmetric V with ‖ΛV + VΛᵀ + D‖_max at round-off level."""
    top = max_real_part(drift)
    if abs(top) <= tol_stab:
        raise SingularSystem(f"marginal drift, max Re(λ) = {top:.3g}; Lyapunov operator is singular")
    if top > tol_stab:
        raise UnstableDrift(f"max Re(λ) = {top:.6g}; no stationary covariance")

    L = drift.entries
    op = np.kron(L, _EYE4) + np.kron(_EYE4, L)
    lu, piv = linalg.lu_factor(op, check_finite=True)
    pivots = np.abs(np.diag(lu))
    if pivots.min() <= _PIVOT_RATIO_MIN * pivots.max():
        raise SingularSystem(f"Lyapunov operator is numerically singular (max Re(λ) = {top:.3g})")

    rhs = -diff.entries.reshape(-1)
    v = linalg.lu_solve((lu, piv), rhs)
    # one refinement step against the assembled operator
    v = v + linalg.lu_solve((lu, piv), rhs - op @ v)

    V = v.reshape(4, 4)
    V = 0.5 * (V + V.T)
    residual = lyapunov_residual(drift, diff, V)
    near = top > -marginal_band
    if near:
        logger.debug("near-marginal covariance: max Re(λ) = %.3g, residual %.3g", top, residual)
    return CovarianceMatrix(V, residual=residual, near_marginal=near)


def magnon_fluctuations(cov: CovarianceMatrix) -> float:
    """⟨δm†δm⟩ = [(V₃₃ + V₄₄) − 1]/2."""
    V = cov.entries
    return float((V[2, 2] + V[3, 3] - 1.0) / 2.0)


def photon_fluctuations(cov: CovarianceMatrix) -> float:
    """⟨δa†δa⟩ = [(V₁₁ + V₂₂) − 1]/2."""
    V = cov.entries
    return float((V[0, 0] + V[1, 1] - 1.0) / 2.0)


def log_fluctuations(n: float) -> float:
    """lg(n + 1), the plotted form; NaN passes through."""
    if math.isnan(n):
        return math.nan
    return math.log10(n + 1.0)


@dataclass(frozen=True)
class FluctuationResult:
    label: BranchLabel
    magnon: float
    photon: float
    residual: float
    near_marginal: bool


def branch_fluctuations(
    params: SystemParams,
    label: BranchLabel,
    tol: Tolerances = DEFAULT_TOLERANCES,
    branches: Optional[list] = None,
) -> FluctuationResult:
    """Branch → amplitude → Λ → V → ⟨δm†δm⟩, ⟨δa†δa⟩."""
    if branches is None:
        branches = magnon_branches(params, eps_den=tol.eps_den, tol_phase=tol.tol_phase, tol_fp=tol.tol_fp)
    branch = branch_by_label(branches, label)
    if not branch.admissible:
        raise InadmissibleBranch(f"{label.value} branch is not admissible")
    drift = build_drift_matrix(params, branch.m_amplitude)
    cov = solve_lyapunov(drift, diffusion_matrix(params), tol_stab=tol.tol_stab, marginal_band=tol.marginal_band)
    return FluctuationResult(label, magnon_fluctuations(cov), photon_fluctuations(cov), cov.residual, cov.near_marginal)
