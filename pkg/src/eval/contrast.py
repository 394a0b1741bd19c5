"""Order-parameter convention and the bidirectional contrast ratio.

In the bistable phase the reported order parameter is the nonzero branch;
that is the convention under which the K<0 curve at Δm/Δa = 1.3 jumps at Ω₁.
The Zero-branch alternative is carried alongside for hysteresis studies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..errors import UnstableRegion
from ..model import DEFAULT_TOLERANCES, KerrSign, SystemParams, Tolerances, scaled_occupation
from ..stability import PhaseLabel, PhaseReport, phase_report


@dataclass(frozen=True)
class OrderParameter:
    rho: float
    phase: PhaseLabel
    flagged: bool
    rho_zero_branch: float
    marginal: bool = False


def order_parameter_from_report(params: SystemParams, report: PhaseReport) -> OrderParameter:
    label = report.label
    zero_alt = 0.0 if report.zero.stable else math.nan
    if label is PhaseLabel.UNSTABLE:
        return OrderParameter(math.nan, label, True, zero_alt, report.marginal)
    if label is PhaseLabel.NORMAL:
        return OrderParameter(0.0, label, False, zero_alt, report.marginal)
    rho = scaled_occupation(params, report.nonzero.branch.magnon_occ)
    return OrderParameter(rho, label, False, zero_alt, report.marginal)


def order_parameter(params: SystemParams, tol: Tolerances = DEFAULT_TOLERANCES) -> OrderParameter:
    """ρ = |K||M|²/γm of the stable nonzero branch, 0 in the Normal phase, NaN (flagged) when Unstable."""
    return order_parameter_from_report(params, phase_report(params, tol))


def contrast_value(rho_pos: float, rho_neg: float, eps_rel: float = DEFAULT_TOLERANCES.eps_rel) -> float:
    """I = |ρ₊ − ρ₋|/(ρ₊ + ρ₋), or 0 when the two agree within eps_rel."""
    total = rho_pos + rho_neg
    diff = abs(rho_pos - rho_neg)
    if total <= 0.0 or diff <= eps_rel * total:
        return 0.0
    return min(1.0, diff / total)


@dataclass(frozen=True)
class ContrastPoint:
    omega: float
    detuning_ratio: float
    rho_pos: float
    rho_neg: float
    contrast: float
    phase_pos: PhaseLabel
    phase_neg: PhaseLabel

    @property
    def nonreciprocal(self) -> bool:
        """|M|²(K>0) ≠ |M|²(K<0)."""
        return self.contrast > 0.0


def contrast_ratio(params: SystemParams, tol: Tolerances = DEFAULT_TOLERANCES) -> ContrastPoint:
    """Evaluate both Kerr signs at the same |K| and remaining parameters."""
    pos = order_parameter(params.with_sign(KerrSign.POSITIVE), tol)
    neg = order_parameter(params.with_sign(KerrSign.NEGATIVE), tol)
    if pos.phase is PhaseLabel.UNSTABLE or neg.phase is PhaseLabel.UNSTABLE:
        raise UnstableRegion(
            f"Ω={params.omega_drive:.6g}, Δm/Δa={params.detuning_ratio:.6g}: "
            f"K>0 {pos.phase.value}, K<0 {neg.phase.value}"
        )
    return ContrastPoint(
        omega=params.omega_drive,
        detuning_ratio=params.detuning_ratio,
        rho_pos=pos.rho,
        rho_neg=neg.rho,
        contrast=contrast_value(pos.rho, neg.rho, tol.eps_rel),
        phase_pos=pos.phase,
        phase_neg=neg.phase,
    )
