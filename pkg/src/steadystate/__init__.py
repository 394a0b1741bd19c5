"""Steady-state branches, amplitudes and critical thresholds."""

from .branches import (
    BranchLabel,
    BranchSolution,
    all_branches_with_amplitudes,
    branch_by_label,
    magnon_branches,
    mean_field_amplitudes,
    parity_partner,
    photon_occupation,
    sanctioned_branch,
)
from .thresholds import (
    Admissibility,
    admissibility,
    critical_xi,
    omega_1,
    omega_2,
    onset_drive,
    zero_branch_threshold,
)

__all__ = [
    "Admissibility",
    "BranchLabel",
    "BranchSolution",
    "admissibility",
    "all_branches_with_amplitudes",
    "branch_by_label",
    "critical_xi",
    "magnon_branches",
    "mean_field_amplitudes",
    "omega_1",
    "omega_2",
    "onset_drive",
    "parity_partner",
    "photon_occupation",
    "sanctioned_branch",
    "zero_branch_threshold",
]
