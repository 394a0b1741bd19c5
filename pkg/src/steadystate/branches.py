"""Steady-state branches of the magnon and photon occupations.

Setting Ȧ = Ṁ = 0 in the mean-field equations gives a quadratic for the
shifted magnon detuning Δm + K|M|², hence three branches: the origin and the
two roots labelled Plus and Minus.  Inadmissible roots are kept (flagged) so
that sweeps can see how far a point is from a branch appearing.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Dict, List, Tuple

from ..errors import InadmissibleBranch, PhaseInconsistent, ZeroCoupling
from ..model import DEFAULT_TOLERANCES, KerrSign, SystemParams, derived, residual_norm


class BranchLabel(str, Enum):
    ZERO = "zero"
    PLUS = "plus"
    MINUS = "minus"


@dataclass(frozen=True)
class BranchSolution:
    """One candidate steady state.

    ``magnon_occ`` holds the raw root for inadmissible branches (possibly
    negative, NaN when the discriminant is negative) for diagnostics.
    """

    label: BranchLabel
    magnon_occ: float
    photon_occ: float
    m_amplitude: complex
    a_amplitude: complex
    admissible: bool
    discriminant: float = 0.0


def sanctioned_branch(sign: KerrSign) -> BranchLabel:
    """The nonzero branch that can be stable for the given Kerr sign."""
    return BranchLabel.PLUS if sign is KerrSign.POSITIVE else BranchLabel.MINUS


def _raw_branches(params: SystemParams, eps_den: float) -> List[BranchSolution]:
    d = derived(params, eps_den=eps_den)
    disc = (d.eta * params.omega_drive) ** 2 - d.gamma_m_prime ** 2
    zero = BranchSolution(BranchLabel.ZERO, 0.0, 0.0, 0j, 0j, True, disc)

    if disc < 0:
        nonzero = [
            BranchSolution(label, math.nan, math.nan, 0j, 0j, False, disc)
            for label in (BranchLabel.PLUS, BranchLabel.MINUS)
        ]
        return [zero, *nonzero]

    root = math.sqrt(disc)
    K = params.kerr
    out = [zero]
    for label, s in ((BranchLabel.PLUS, 1.0), (BranchLabel.MINUS, -1.0)):
        occ = (-d.delta_m_prime + s * root) / K
        out.append(BranchSolution(label, occ, math.nan, 0j, 0j, occ > 0.0, disc))
    return out


def photon_occupation(params: SystemParams, branch: BranchSolution) -> float:
    """|A|² = [(Δm + K|M|²)² + γm²]|M|²/gm², zero on the Zero branch."""
    if not branch.admissible:
        raise InadmissibleBranch(f"{branch.label.value} branch is not admissible")
    if branch.label is BranchLabel.ZERO:
        return 0.0
    if params.g_m <= 0:
        raise ZeroCoupling("photon occupation of a nonzero branch needs g_m > 0")
    occ = branch.magnon_occ
    shifted = params.delta_m + params.kerr * occ
    return (shifted ** 2 + params.gamma_m ** 2) * occ / params.g_m ** 2


def mean_field_amplitudes(
    params: SystemParams,
    branch: BranchSolution,
    tol_phase: float = DEFAULT_TOLERANCES.tol_phase,
    tol_fp: float = DEFAULT_TOLERANCES.tol_fp,
) -> Tuple[complex, complex]:
    """Reconstruct (M, A) with arg M = θ ∈ [0, π) from the phase equation.

    e^{−2iθ} = [gm² − (Δa − iκa)(Δ̃′ − iγm)] / [Ω(Δ̃′ + iγm)],  Δ̃′ = Δm + K|M|²,
    and A = −(Δ̃′ − iγm)M/gm.  The parity partner (−M, −A) is an equally valid
    fixed point and is never returned.
    """
    if not branch.admissible:
        raise InadmissibleBranch(f"{branch.label.value} branch is not admissible")
    if branch.label is BranchLabel.ZERO:
        return 0j, 0j
    if params.g_m <= 0:
        raise ZeroCoupling("amplitude reconstruction needs g_m > 0")

    occ = branch.magnon_occ
    shifted = params.delta_m + params.kerr * occ
    numerator = params.g_m ** 2 - complex(params.delta_a, -params.kappa_a) * complex(shifted, -params.gamma_m)
    z = numerator / (params.omega_drive * complex(shifted, params.gamma_m))
    modulus = abs(z)
    if abs(modulus - 1.0) > tol_phase:
        raise PhaseInconsistent(
            f"|e^(-2iθ)| = {modulus:.12g} for |M|² = {occ:.12g} ({branch.label.value} branch)"
        )

    theta = (-cmath.phase(z) / 2.0) % math.pi
    M = math.sqrt(occ) * cmath.exp(1j * theta)
    A = -complex(shifted, -params.gamma_m) * M / params.g_m

    res = residual_norm(params, A, M)
    if res > tol_fp * (1.0 + abs(A) + abs(M)):
        raise PhaseInconsistent(f"fixed-point residual {res:.3g} exceeds tolerance on the {branch.label.value} branch")
    return M, A


def parity_partner(M: complex, A: complex) -> Tuple[complex, complex]:
    """(M, A) → (−M, −A), the θ → θ + π image."""
    return -M, -A


def magnon_branches(
    params: SystemParams,
    eps_den: float = DEFAULT_TOLERANCES.eps_den,
    tol_phase: float = DEFAULT_TOLERANCES.tol_phase,
    tol_fp: float = DEFAULT_TOLERANCES.tol_fp,
) -> List[BranchSolution]:
    """Zero, Plus and Minus branches with occupations and, where admissible, amplitudes."""
    out: List[BranchSolution] = []
    for branch in _raw_branches(params, eps_den):
        if branch.admissible and branch.label is not BranchLabel.ZERO:
            photon = photon_occupation(params, branch)
            M, A = mean_field_amplitudes(params, branch, tol_phase=tol_phase, tol_fp=tol_fp)
            branch = replace(branch, photon_occ=photon, m_amplitude=M, a_amplitude=A)
        out.append(branch)
    return out


def branch_by_label(branches: List[BranchSolution], label: BranchLabel) -> BranchSolution:
    for b in branches:
        if b.label is label:
            return b
    raise KeyError(label)


def all_branches_with_amplitudes(params: SystemParams, **tolerances) -> Dict[BranchLabel, BranchSolution]:
    """Admissible branches only, keyed by label."""
    return {b.label: b for b in magnon_branches(params, **tolerances) if b.admissible}
