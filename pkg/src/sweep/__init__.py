"""Grid evaluation and the datasets built on it."""

from .datasets import (
    CONTRAST_COLUMNS,
    FLUCTUATION_COLUMNS,
    ORDER_COLUMNS,
    PHASE_COLUMNS,
    contrast_map,
    contrast_point,
    fluctuation_cut,
    fluctuation_point,
    jump_at,
    order_parameter_cut,
    order_parameter_point,
    phase_boundary,
    phase_diagram,
    phase_point,
)
from .engine import AxisRange, GridEngine, RowTask, SweepSpec, evaluate_point, evaluate_row

__all__ = [
    "CONTRAST_COLUMNS",
    "FLUCTUATION_COLUMNS",
    "ORDER_COLUMNS",
    "PHASE_COLUMNS",
    "AxisRange",
    "GridEngine",
    "RowTask",
    "SweepSpec",
    "contrast_map",
    "contrast_point",
    "evaluate_point",
    "evaluate_row",
    "fluctuation_cut",
    "fluctuation_point",
    "jump_at",
    "order_parameter_cut",
    "order_parameter_point",
    "phase_boundary",
    "phase_diagram",
    "phase_point",
]
