"""Drift matrix of the linearized quadrature fluctuations and its spectrum.

Quadrature ordering is (x_a, y_a, x_m, y_m).  The spectrum comes from LAPACK
(Hessenberg reduction + shifted QR via scipy.linalg.eigvals); the characteristic
polynomial used by the Routh–Hurwitz cross-check is built independently with
the Faddeev–LeVerrier recursion so the two verdicts share no code path.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy import linalg

from ..errors import ConvergenceFailure
from ..model import DEFAULT_TOLERANCES, SystemParams


@dataclass(frozen=True, eq=False)
class DriftMatrix:
    entries: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.entries, dtype=float)
        if arr.shape != (4, 4):
            raise ValueError(f"drift matrix must be 4x4, got {arr.shape}")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @property
    def trace(self) -> float:
        return float(np.trace(self.entries))


class StabilityState(str, Enum):
    STABLE = "stable"
    MARGINAL = "marginal"
    UNSTABLE = "unstable"


def build_drift_matrix(params: SystemParams, m_amplitude: complex) -> DriftMatrix:
    """Λ with Δ̃m = Δm + 2K|M|² and F = KM² taken from the magnon amplitude."""
    M = complex(m_amplitude)
    K = params.kerr
    occ = M.real * M.real + M.imag * M.imag
    dm = params.delta_m + 2.0 * K * occ
    F = K * M * M
    ka, gm, g, da, om = params.kappa_a, params.gamma_m, params.g_m, params.delta_a, params.omega_drive
    return DriftMatrix(
        np.array(
            [
                [-ka, da - om, 0.0, g],
                [-da - om, -ka, -g, 0.0],
                [0.0, g, -gm + F.imag, dm - F.real],
                [-g, 0.0, -dm - F.real, -gm - F.imag],
            ]
        )
    )


def eigenvalues(matrix: DriftMatrix) -> np.ndarray:
    """The four eigenvalues, sorted by descending real part."""
    try:
        lam = linalg.eigvals(matrix.entries, check_finite=True)
    except (linalg.LinAlgError, ValueError) as e:
        raise ConvergenceFailure(f"eigenvalue solver failed: {e}") from e
    order = np.lexsort((lam.imag, -lam.real))
    return lam[order]


def max_real_part(matrix: DriftMatrix) -> float:
    return float(np.max(eigenvalues(matrix).real))


def state_from_max_real(top: float, tol_stab: float = DEFAULT_TOLERANCES.tol_stab) -> StabilityState:
    if top < -tol_stab:
        return StabilityState.STABLE
    if top <= tol_stab:
        return StabilityState.MARGINAL
    return StabilityState.UNSTABLE


def stability_state(matrix: DriftMatrix, tol_stab: float = DEFAULT_TOLERANCES.tol_stab) -> StabilityState:
    """Tri-state verdict; |max Re λ| ≤ tol_stab is Marginal."""
    return state_from_max_real(max_real_part(matrix), tol_stab)


def is_stable(matrix: DriftMatrix, tol_stab: float = DEFAULT_TOLERANCES.tol_stab) -> bool:
    """True iff every eigenvalue has Re λ < −tol_stab."""
    return stability_state(matrix, tol_stab) is StabilityState.STABLE


def characteristic_coefficients(matrix: DriftMatrix) -> np.ndarray:
    """[1, a1, a2, a3, a4] of det(λI − Λ) by Faddeev–LeVerrier."""
    A = matrix.entries
    n = A.shape[0]
    coeffs = np.zeros(n + 1)
    coeffs[0] = 1.0
    Mk = np.zeros_like(A)
    eye = np.eye(n)
    for k in range(1, n + 1):
        Mk = A @ Mk + coeffs[k - 1] * eye
        coeffs[k] = -np.trace(A @ Mk) / k
    return coeffs


def routh_hurwitz_stable(matrix: DriftMatrix) -> bool:
    """Hurwitz test of the characteristic quartic λ⁴ + a1λ³ + a2λ² + a3λ + a4."""
    _, a1, a2, a3, a4 = characteristic_coefficients(matrix)
    if min(a1, a2, a3, a4) <= 0:
        return False
    if a1 * a2 - a3 <= 0:
        return False
    return a1 * a2 * a3 - a3 * a3 - a1 * a1 * a4 > 0
