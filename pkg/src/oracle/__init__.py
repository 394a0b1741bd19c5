"""Brute-force time-domain verification of the analytic pipeline."""

from .hysteresis import bistable_window, hysteresis_loop, hysteresis_sweep
from .integrators import (
    DisplacementTrace,
    IntegrationResult,
    integrate_to_rest,
    integrate_until_settled,
    rk4_step,
    trace_displacement,
)
from .relaxation import (
    DEFAULT_ORACLE,
    BasinResult,
    MeanFieldRelaxation,
    OracleSettings,
    ProbeResult,
    basin_probe,
    probe_batch,
    probe_stability,
    relax_covariance,
    relax_covariance_batch,
    relax_mean_field,
    relax_mean_field_batch,
)
from .validation import ValidationRun, summarize_validation, validation_grid

__all__ = [
    "DEFAULT_ORACLE",
    "BasinResult",
    "DisplacementTrace",
    "IntegrationResult",
    "MeanFieldRelaxation",
    "OracleSettings",
    "ProbeResult",
    "ValidationRun",
    "basin_probe",
    "bistable_window",
    "hysteresis_loop",
    "hysteresis_sweep",
    "integrate_to_rest",
    "integrate_until_settled",
    "probe_batch",
    "probe_stability",
    "relax_covariance",
    "relax_covariance_batch",
    "relax_mean_field",
    "relax_mean_field_batch",
    "rk4_step",
    "summarize_validation",
    "trace_displacement",
    "validation_grid",
]
