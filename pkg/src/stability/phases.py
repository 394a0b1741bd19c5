"""Phase classification from the stability of the steady-state branches.

Only the Zero branch and the nonzero branch that can be stable for the given
Kerr sign (Plus for K>0, Minus for K<0) enter the hot path.
`diagnose_all_branches` evaluates every branch, which is how the claim that
the opposite-sign branch is never stable gets checked on sweeps.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Optional

import numpy as np

from ..model import DEFAULT_TOLERANCES, SystemParams, Tolerances
from ..steadystate import BranchLabel, BranchSolution, branch_by_label, magnon_branches, sanctioned_branch
from .drift import StabilityState, build_drift_matrix, eigenvalues, state_from_max_real

logger = logging.getLogger(__name__)


class PhaseLabel(str, Enum):
    NORMAL = "Normal"
    SUPERRADIANT = "Superradiant"
    BISTABLE = "Bistable"
    UNSTABLE = "Unstable"


@dataclass(frozen=True)
class BranchVerdict:
    """Stability of one branch; ``state`` is None when the branch has no amplitude."""

    branch: BranchSolution
    state: Optional[StabilityState]
    max_real: float

    @property
    def stable(self) -> bool:
        return self.state is StabilityState.STABLE

    @property
    def marginal(self) -> bool:
        return self.state is StabilityState.MARGINAL


@dataclass(frozen=True)
class PhaseReport:
    label: PhaseLabel
    zero: BranchVerdict
    nonzero: BranchVerdict

    @property
    def marginal(self) -> bool:
        return self.zero.marginal or self.nonzero.marginal


def branch_verdict(params: SystemParams, branch: BranchSolution, tol_stab: float = DEFAULT_TOLERANCES.tol_stab) -> BranchVerdict:
    """Eigenvalue verdict for an admissible branch; inadmissible ones are not evaluated."""
    if not branch.admissible:
        return BranchVerdict(branch, None, float("nan"))
    top = float(np.max(eigenvalues(build_drift_matrix(params, branch.m_amplitude)).real))
    return BranchVerdict(branch, state_from_max_real(top, tol_stab), top)


def phase_report(params: SystemParams, tol: Tolerances = DEFAULT_TOLERANCES) -> PhaseReport:
    branches = magnon_branches(params, eps_den=tol.eps_den, tol_phase=tol.tol_phase, tol_fp=tol.tol_fp)
    zero = branch_verdict(params, branch_by_label(branches, BranchLabel.ZERO), tol.tol_stab)
    nonzero = branch_verdict(params, branch_by_label(branches, sanctioned_branch(params.kerr_sign)), tol.tol_stab)

    if zero.stable and nonzero.stable:
        label = PhaseLabel.BISTABLE
    elif zero.stable:
        label = PhaseLabel.NORMAL
    elif nonzero.stable:
        label = PhaseLabel.SUPERRADIANT
    else:
        label = PhaseLabel.UNSTABLE
    logger.debug("Ω=%.6g Δm=%.6g K%s -> %s", params.omega_drive, params.delta_m, params.kerr_sign.value, label.value)
    return PhaseReport(label, zero, nonzero)


def classify_phase(params: SystemParams, tol: Tolerances = DEFAULT_TOLERANCES) -> PhaseLabel:
    """Normal / Superradiant / Bistable / Unstable from the two sanctioned branches."""
    return phase_report(params, tol).label


def diagnose_all_branches(params: SystemParams, tol: Tolerances = DEFAULT_TOLERANCES) -> Dict[BranchLabel, BranchVerdict]:
    """Stability verdict of all three branches, including the opposite-sign one."""
    branches = magnon_branches(params, eps_den=tol.eps_den, tol_phase=tol.tol_phase, tol_fp=tol.tol_fp)
    return {b.label: branch_verdict(params, b, tol.tol_stab) for b in branches}
