"""Quasi-static drive sweeps that follow whichever attractor the system sits in."""

from __future__ import annotations

import logging
from typing import Iterable, List, Optional

import numpy as np
import pandas as pd
from tqdm import tqdm

from ..model import DEFAULT_TOLERANCES, SystemParams, Tolerances, scaled_occupation
from ..steadystate import branch_by_label, magnon_branches, sanctioned_branch
from .relaxation import DEFAULT_ORACLE, OracleSettings, random_kicks, relax_mean_field_batch

logger = logging.getLogger(__name__)

HYSTERESIS_COLUMNS = ["omega", "ratio", "kerr_sign", "direction", "rho", "converged", "status"]


def _check_monotone(omegas: List[float]) -> str:
    diffs = np.diff(omegas)
    if len(omegas) < 2 or np.all(diffs > 0):
        return "up"
    if np.all(diffs < 0):
        return "down"
    raise ValueError("omega list must be strictly monotone")


def _branch_start(params: SystemParams, tol: Tolerances):
    branches = magnon_branches(params, eps_den=tol.eps_den, tol_phase=tol.tol_phase, tol_fp=tol.tol_fp)
    nonzero = branch_by_label(branches, sanctioned_branch(params.kerr_sign))
    if nonzero.admissible:
        return nonzero.a_amplitude, nonzero.m_amplitude
    return 0j, 0j


def hysteresis_sweep(
    params: SystemParams,
    omegas: Iterable[float],
    settings: OracleSettings = DEFAULT_ORACLE,
    tol: Tolerances = DEFAULT_TOLERANCES,
    start: str = "zero",
    kick: float = 1e-6,
    progress: bool = False,
) -> pd.DataFrame:
    """Relax at each Ω in order, starting each point from the previous converged state.

    Every start is nudged by a seeded kick of size ``kick`` so that an unstable
    fixed point is left. ``start="branch"`` seeds the first point on the nonzero
    branch of this Kerr sign (falls back to the origin if it does not exist).
    """
    omega_list = [float(o) for o in omegas]
    direction = _check_monotone(omega_list)
    if start not in ("zero", "branch"):
        raise ValueError("start must be 'zero' or 'branch'")

    A, M = (0j, 0j)
    if start == "branch" and omega_list:
        A, M = _branch_start(params.with_drive(omega_list[0]), tol)

    base = {"ratio": params.detuning_ratio, "kerr_sign": params.kerr_sign.value, "direction": direction}
    rows = []
    sign_stream = 0 if params.kerr_sign.factor > 0 else 1
    for i, omega in enumerate(tqdm(omega_list, desc=f"hysteresis {direction}", disable=not progress)):
        point = params.with_drive(omega)
        dy = random_kicks(settings.seed, [(sign_stream, 0 if direction == "up" else 1, i)], kick)
        res = relax_mean_field_batch([point], np.array([A + dy[0, 0]]), np.array([M + dy[1, 0]]), settings)
        if res.diverged[0]:
            logger.info("diverged at Ω=%.6g (%s sweep); restarting from the origin", omega, direction)
            rows.append({**base, "omega": omega, "rho": np.nan, "converged": False, "status": "Diverged"})
            A, M = (0j, 0j)
            continue
        A, M = complex(res.state[0, 0]), complex(res.state[1, 0])
        rows.append(
            {
                **base,
                "omega": omega,
                "rho": scaled_occupation(point, abs(M) ** 2),
                "converged": bool(res.converged[0]),
                "status": "ok" if res.converged[0] else "NotSettled",
            }
        )
    return pd.DataFrame(rows, columns=HYSTERESIS_COLUMNS)


def hysteresis_loop(
    params: SystemParams,
    omegas: Iterable[float],
    settings: OracleSettings = DEFAULT_ORACLE,
    tol: Tolerances = DEFAULT_TOLERANCES,
    progress: bool = False,
) -> pd.DataFrame:
    """Up-sweep from the origin and down-sweep from the nonzero branch, stacked in one table."""
    up = sorted(float(o) for o in omegas)
    down = up[::-1]
    up_df = hysteresis_sweep(params, up, settings, tol, start="zero", progress=progress)
    down_df = hysteresis_sweep(params, down, settings, tol, start="branch", progress=progress)
    return pd.concat([up_df, down_df], ignore_index=True)


def bistable_window(loop: pd.DataFrame, threshold: float = 1e-3) -> Optional[tuple]:
    """(Ω_min, Ω_max) of the drives where up- and down-sweep disagree, or None.

    Only drives where both directions settled are compared; on a limit cycle
    the two sweeps stop at arbitrary phases of the same orbit.
    """
    settled = loop[loop["status"] == "ok"]
    up = settled[settled["direction"] == "up"].set_index("omega")["rho"]
    down = settled[settled["direction"] == "down"].set_index("omega")["rho"]
    joined = pd.concat([up.rename("up"), down.rename("down")], axis=1).dropna()
    differs = joined[(joined["up"] - joined["down"]).abs() > threshold]
    if differs.empty:
        return None
    return float(differs.index.min()), float(differs.index.max())
