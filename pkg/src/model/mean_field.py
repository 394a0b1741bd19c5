"""Derived auxiliary quantities and the mean-field equations of motion."""

from __future__ import annotations

import math
from typing import Tuple

from scipy import constants

from ..errors import DegenerateDenominator
from .schemas import DEFAULT_TOLERANCES, DerivedQuantities, SystemParams


def drive_denominator(params: SystemParams) -> float:
    """Δa² + κa² − Ω², which vanishes at the parametric resonance."""
    return params.delta_a ** 2 + params.kappa_a ** 2 - params.omega_drive ** 2


def derived(params: SystemParams, eps_den: float = DEFAULT_TOLERANCES.eps_den) -> DerivedQuantities:
    """Return η = gm²/(Δa²+κa²−Ω²), Δ′m = Δm − ηΔa and γ′m = γm + ηκa."""
    den = drive_denominator(params)
    if abs(den) <= eps_den:
        raise DegenerateDenominator(
            f"|Δa² + κa² − Ω²| = {abs(den):.3g} <= {eps_den:.3g} at Ω={params.omega_drive:.12g}"
        )
    eta = params.g_m ** 2 / den
    return DerivedQuantities(
        eta=eta,
        delta_m_prime=params.delta_m - eta * params.delta_a,
        gamma_m_prime=params.gamma_m + eta * params.kappa_a,
    )


def mean_field_rhs(params: SystemParams, A: complex, M: complex) -> Tuple[complex, complex]:
    """Time derivatives (Ȧ, Ṁ) of the cavity and magnon amplitudes."""
    A = complex(A)
    M = complex(M)
    dA = -1j * (params.delta_a - 1j * params.kappa_a) * A - 1j * params.g_m * M - 1j * params.omega_drive * A.conjugate()
    occ = M.real * M.real + M.imag * M.imag
    dM = -1j * (params.delta_m + params.kerr * occ - 1j * params.gamma_m) * M - 1j * params.g_m * A
    return dA, dM


def residual_norm(params: SystemParams, A: complex, M: complex) -> float:
    dA, dM = mean_field_rhs(params, A, M)
    return math.hypot(abs(dA), abs(dM))


def scaled_occupation(params: SystemParams, magnon_occ: float) -> float:
    """ρ = |K||M|²/γm, the scale-free order parameter."""
    return params.kerr_magnitude * magnon_occ / params.gamma_m


def physical_occupation(params: SystemParams, rho: float) -> float:
    """Inverse of `scaled_occupation`: |M|² from ρ using the configured |K|."""
    return rho * params.gamma_m / params.kerr_magnitude


def bose_occupancy(x: float) -> float:
    """Bose-Einstein occupancy 1/(eˣ − 1) for x = ħω/kBT; 0 for x = ∞."""
    if x <= 0:
        raise ValueError("bose_occupancy needs x = ħω/kBT > 0")
    if math.isinf(x) or x > 700.0:
        return 0.0
    return 1.0 / math.expm1(x)


def thermal_occupancy(frequency_hz: float, temperature_k: float) -> float:
    """Thermal occupancy of a mode of frequency f (Hz) in a bath at T (K)."""
    if frequency_hz <= 0:
        raise ValueError("frequency must be positive")
    if temperature_k < 0:
        raise ValueError("temperature must be non-negative")
    if temperature_k == 0:
        return 0.0
    return bose_occupancy(constants.h * frequency_hz / (constants.k * temperature_k))
