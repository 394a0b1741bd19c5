"""Deterministic grid evaluation.

A grid is evaluated one Δm/Δa row at a time. Rows go to worker processes
through an ordered map and land in a preallocated slot, so the resulting
table is the same for any worker count.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, model_validator
from tqdm import tqdm

from ..errors import MagnonicsError
from ..model import DEFAULT_TOLERANCES, SystemParams, Tolerances
from ..utils.logging import get_logger

logger = logging.getLogger(__name__)

PointFunction = Callable[[SystemParams, Tolerances], Dict[str, Any]]


class AxisRange(BaseModel):
    """Evenly spaced axis [min, max] with ``count`` samples, endpoints included."""

    model_config = ConfigDict(frozen=True)

    min: float
    max: float
    count: int = Field(..., ge=2)

    @model_validator(mode="after")
    def _ordered(self) -> "AxisRange":
        if not self.min < self.max:
            raise ValueError(f"axis needs min < max, got [{self.min}, {self.max}]")
        return self

    def values(self) -> List[float]:
        return np.linspace(self.min, self.max, self.count).tolist()

    @property
    def step(self) -> float:
        return (self.max - self.min) / (self.count - 1)


class SweepSpec(BaseModel):
    """Ω/κa axis plus either a Δm/Δa axis or a fixed ratio, over a base operating point."""

    model_config = ConfigDict(frozen=True)

    omega: AxisRange
    ratio: Optional[AxisRange] = None
    fixed_ratio: Optional[float] = Field(None, gt=0)
    base: SystemParams
    tol: Tolerances = DEFAULT_TOLERANCES

    @model_validator(mode="after")
    def _one_ratio_source(self) -> "SweepSpec":
        if (self.ratio is None) == (self.fixed_ratio is None):
            raise ValueError("give exactly one of a ratio axis or a fixed ratio")
        return self

    def ratios(self) -> List[float]:
        return self.ratio.values() if self.ratio is not None else [float(self.fixed_ratio)]

    def omegas(self) -> List[float]:
        return self.omega.values()

    @property
    def size(self) -> int:
        return len(self.ratios()) * self.omega.count


@dataclass(frozen=True)
class RowTask:
    fn: PointFunction
    base: SystemParams
    tol: Tolerances
    ratio: float
    omegas: Sequence[float]


def evaluate_point(fn: PointFunction, params: SystemParams, tol: Tolerances) -> Dict[str, Any]:
    """One grid point; numerical errors become a sentinel row named after the error class."""
    row: Dict[str, Any] = {"omega": params.omega_drive, "ratio": params.detuning_ratio, "status": "ok"}
    try:
        row.update(fn(params, tol))
    except MagnonicsError as e:
        logger.debug("sentinel at Ω=%.6g ratio=%.6g: %s", params.omega_drive, params.detuning_ratio, e)
        row["status"] = type(e).__name__
    return row


def evaluate_row(task: RowTask) -> List[Dict[str, Any]]:
    base = task.base.with_ratio(task.ratio)
    return [evaluate_point(task.fn, base.with_drive(omega), task.tol) for omega in task.omegas]


@dataclass
class GridEngine:
    """Evaluate a point function over every (ratio, Ω) of a SweepSpec."""

    spec: SweepSpec
    jobs: int = 1
    progress: bool = False
    run_id: Optional[str] = None

    def _chunks(self, omegas: List[float], n_rows: int) -> List[List[float]]:
        """Whole rows, unless there are fewer rows than workers (1-D cuts)."""
        if self.jobs <= 1 or n_rows >= self.jobs:
            return [omegas]
        size = max(1, -(-len(omegas) // (4 * self.jobs)))
        return [omegas[k : k + size] for k in range(0, len(omegas), size)]

    def run(self, fn: PointFunction, columns: Sequence[str], label: str = "grid") -> pd.DataFrame:
        log = get_logger("sweep", self.run_id) if self.run_id else logger
        omegas = self.spec.omegas()
        ratios = self.spec.ratios()
        tasks = [
            RowTask(fn, self.spec.base, self.spec.tol, r, chunk)
            for r in ratios
            for chunk in self._chunks(omegas, len(ratios))
        ]
        log.info("%s: %d x %d points, jobs=%d", label, len(ratios), len(omegas), self.jobs)

        results: List[Optional[List[Dict[str, Any]]]] = [None] * len(tasks)
        bar = tqdm(total=len(tasks), desc=label, unit="task", disable=not self.progress)
        if self.jobs <= 1 or len(tasks) == 1:
            for j, task in enumerate(tasks):
                results[j] = evaluate_row(task)
                bar.update(1)
        else:
            with ProcessPoolExecutor(max_workers=self.jobs) as pool:
                for j, rows in enumerate(pool.map(evaluate_row, tasks)):
                    results[j] = rows
                    bar.update(1)
        bar.close()

        flat = [row for rows in results for row in rows]
        df = pd.DataFrame(flat, columns=list(columns))
        n_bad = int((df["status"] != "ok").sum())
        if n_bad:
            log.info("%s: %d sentinel rows", label, n_bad)
        return df
