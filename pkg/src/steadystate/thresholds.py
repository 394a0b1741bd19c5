"""Critical ratio ξ, critical drives Ω₁ and Ω₂, and the branch admissibility table.

None of these depend on the Kerr coefficient.  Ω₁ is where the discriminant
of the branch formulas vanishes (the nonzero branches appear as a pair), Ω₂ is
where a nonzero branch passes through |M|² = 0, and the two meet at Δm/Δa = ξ.
"""

from __future__ import annotations

import math
from enum import Enum
from typing import Dict

from ..errors import NoRealThreshold, ZeroCoupling
from ..model import KerrSign, SystemParams
from .branches import BranchLabel


class Admissibility(str, Enum):
    ADMISSIBLE = "admissible"
    INADMISSIBLE = "inadmissible"
    NOT_CONSIDERED = "not-considered"


def critical_xi(params: SystemParams) -> float:
    """ξ = 2γm² / (√(4(Δa²+κa²)γm² + (4κaγm+gm²)gm²) − (2κaγm + gm²))."""
    if params.g_m <= 0:
        raise ZeroCoupling("critical ratio needs g_m > 0")
    ka, gm, g2 = params.kappa_a, params.gamma_m, params.g_m ** 2
    root = math.sqrt(4.0 * (params.delta_a ** 2 + ka ** 2) * gm ** 2 + (4.0 * ka * gm + g2) * g2)
    return 2.0 * gm ** 2 / (root - (2.0 * ka * gm + g2))


def omega_1(params: SystemParams) -> float:
    """Ω₁ = √(Δa²+κa²+(4κaγm+gm²)gm²/4γm²) − gm²/2γm."""
    ka, gm, g2 = params.kappa_a, params.gamma_m, params.g_m ** 2
    return math.sqrt(params.delta_a ** 2 + ka ** 2 + (4.0 * ka * gm + g2) * g2 / (4.0 * gm ** 2)) - g2 / (2.0 * gm)


def omega_2(params: SystemParams) -> float:
    """Ω₂ = √(Δa²+κa²−(2ΔaΔm−2κaγm−gm²)gm²/(Δm²+γm²))."""
    ka, gm, g2 = params.kappa_a, params.gamma_m, params.g_m ** 2
    radicand = params.delta_a ** 2 + ka ** 2 - (
        2.0 * params.delta_a * params.delta_m - 2.0 * ka * gm - g2
    ) * g2 / (params.delta_m ** 2 + gm ** 2)
    if radicand < 0:
        raise NoRealThreshold(f"Ω₂ radicand is negative ({radicand:.6g}) at Δm={params.delta_m:.6g}")
    return math.sqrt(radicand)


def zero_branch_threshold(params: SystemParams) -> float:
    """Drive at which the Zero branch loses stability (the Ω₂ curve)."""
    return omega_2(params)


def onset_drive(params: SystemParams) -> float:
    """Drive above which the sign-appropriate nonzero branch has |M|² > 0."""
    if params.g_m <= 0:
        return math.sqrt(params.delta_a ** 2 + params.kappa_a ** 2)
    below_xi = params.detuning_ratio < critical_xi(params)
    if params.kerr_sign is KerrSign.POSITIVE:
        return omega_1(params) if below_xi else omega_2(params)
    return omega_2(params) if below_xi else omega_1(params)


def admissibility(params: SystemParams) -> Dict[BranchLabel, Admissibility]:
    """Which nonzero branch is positive for the given Kerr sign and drive.

    The opposite-sign branch (Minus for K>0, Plus for K<0) is reported as
    not considered; the Zero branch is always admissible.
    """
    considered = BranchLabel.PLUS if params.kerr_sign is KerrSign.POSITIVE else BranchLabel.MINUS
    ignored = BranchLabel.MINUS if considered is BranchLabel.PLUS else BranchLabel.PLUS

    if params.g_m <= 0 or params.omega_drive <= 0:
        verdict = Admissibility.INADMISSIBLE
    else:
        verdict = Admissibility.ADMISSIBLE if params.omega_drive > onset_drive(params) else Admissibility.INADMISSIBLE

    return {
        BranchLabel.ZERO: Admissibility.ADMISSIBLE,
        considered: verdict,
        ignored: Admissibility.NOT_CONSIDERED,
    }
