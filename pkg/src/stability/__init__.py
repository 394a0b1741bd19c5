"""Linear stability of the steady states and phase classification."""

from .drift import (
    DriftMatrix,
    StabilityState,
    build_drift_matrix,
    characteristic_coefficients,
    eigenvalues,
    is_stable,
    max_real_part,
    routh_hurwitz_stable,
    stability_state,
    state_from_max_real,
)
from .phases import (
    BranchVerdict,
    PhaseLabel,
    PhaseReport,
    branch_verdict,
    classify_phase,
    diagnose_all_branches,
    phase_report,
)

__all__ = [
    "BranchVerdict",
    "DriftMatrix",
    "PhaseLabel",
    "PhaseReport",
    "StabilityState",
    "branch_verdict",
    "build_drift_matrix",
    "characteristic_coefficients",
    "classify_phase",
    "diagnose_all_branches",
    "eigenvalues",
    "is_stable",
    "max_real_part",
    "phase_report",
    "routh_hurwitz_stable",
    "stability_state",
    "state_from_max_real",
]
