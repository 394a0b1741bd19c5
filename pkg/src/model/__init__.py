"""Physical parameter set, unit conventions and the mean-field equations."""

from .mean_field import (
    bose_occupancy,
    derived,
    drive_denominator,
    mean_field_rhs,
    physical_occupation,
    residual_norm,
    scaled_occupation,
    thermal_occupancy,
)
from .schemas import (
    DEFAULT_TOLERANCES,
    DerivedQuantities,
    KerrSign,
    SystemParams,
    Tolerances,
    reference_params,
)

__all__ = [
    "DEFAULT_TOLERANCES",
    "DerivedQuantities",
    "KerrSign",
    "SystemParams",
    "Tolerances",
    "bose_occupancy",
    "derived",
    "drive_denominator",
    "mean_field_rhs",
    "physical_occupation",
    "reference_params",
    "residual_norm",
    "scaled_occupation",
    "thermal_occupancy",
]
