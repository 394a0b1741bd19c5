"""Long-format datasets behind the phase diagrams, order-parameter and fluctuation cuts, and the contrast map.

Every table carries explicit (omega, ratio) columns plus a ``status`` column
that is ``ok`` or names the error that turned the point into a sentinel row.
"""

from __future__ import annotations

import math
from typing import Any, Dict, Optional

import pandas as pd

from ..errors import UnstableRegion
from ..eval.contrast import contrast_ratio, contrast_value, order_parameter, order_parameter_from_report
from ..fluctuations import branch_fluctuations, log_fluctuations
from ..model import KerrSign, SystemParams, Tolerances
from ..stability import PhaseLabel, phase_report
from .engine import GridEngine, SweepSpec

PHASE_COLUMNS = ["omega", "ratio", "kerr_sign", "phase", "rho", "marginal", "zero_max_real", "nonzero_max_real", "status"]

ORDER_COLUMNS = [
    "omega",
    "ratio",
    "rho_pos",
    "rho_neg",
    "phase_pos",
    "phase_neg",
    "rho_zero_branch_pos",
    "rho_zero_branch_neg",
    "nonreciprocal",
    "status",
]

FLUCTUATION_COLUMNS = [
    "omega",
    "ratio",
    "lg_fluct_pos",
    "lg_fluct_neg",
    "fluct_pos",
    "fluct_neg",
    "photon_fluct_pos",
    "photon_fluct_neg",
    "fluct_zero_branch_pos",
    "fluct_zero_branch_neg",
    "phase_pos",
    "phase_neg",
    "near_marginal_pos",
    "near_marginal_neg",
    "residual_max",
    "status",
]

CONTRAST_COLUMNS = ["omega", "ratio", "contrast", "rho_pos", "rho_neg", "phase_pos", "phase_neg", "nonreciprocal", "status"]

_SIGNS = (("pos", KerrSign.POSITIVE), ("neg", KerrSign.NEGATIVE))


def _nonreciprocal(rho_pos: float, rho_neg: float, eps_rel: float) -> Optional[bool]:
    if math.isnan(rho_pos) or math.isnan(rho_neg):
        return None
    return contrast_value(rho_pos, rho_neg, eps_rel) > 0.0


def phase_point(params: SystemParams, tol: Tolerances) -> Dict[str, Any]:
    report = phase_report(params, tol)
    op = order_parameter_from_report(params, report)
    return {
        "kerr_sign": params.kerr_sign.value,
        "phase": report.label.value,
        "rho": op.rho,
        "marginal": report.marginal,
        "zero_max_real": report.zero.max_real,
        "nonzero_max_real": report.nonzero.max_real,
    }


def order_parameter_point(params: SystemParams, tol: Tolerances) -> Dict[str, Any]:
    row: Dict[str, Any] = {}
    for tag, sign in _SIGNS:
        op = order_parameter(params.with_sign(sign), tol)
        row[f"rho_{tag}"] = op.rho
        row[f"phase_{tag}"] = op.phase.value
        row[f"rho_zero_branch_{tag}"] = op.rho_zero_branch
    row["nonreciprocal"] = _nonreciprocal(row["rho_pos"], row["rho_neg"], tol.eps_rel)
    return row


def fluctuation_point(params: SystemParams, tol: Tolerances) -> Dict[str, Any]:
    """Fluctuations on the branch the order parameter reports, plus the Zero-branch alternative."""
    row: Dict[str, Any] = {}
    residual = 0.0
    for tag, sign in _SIGNS:
        p = params.with_sign(sign)
        report = phase_report(p, tol)
        pair = [report.zero.branch, report.nonzero.branch]
        row[f"phase_{tag}"] = report.label.value
        magnon = photon = math.nan
        near = False
        if report.label is not PhaseLabel.UNSTABLE:
            reported = report.zero if report.label is PhaseLabel.NORMAL else report.nonzero
            res = branch_fluctuations(p, reported.branch.label, tol, branches=pair)
            magnon, photon, near = res.magnon, res.photon, res.near_marginal
            residual = max(residual, res.residual)
        zero_alt = math.nan
        if report.zero.stable:
            zero_alt = branch_fluctuations(p, report.zero.branch.label, tol, branches=pair).magnon
        row[f"fluct_{tag}"] = magnon
        row[f"lg_fluct_{tag}"] = log_fluctuations(magnon)
        row[f"photon_fluct_{tag}"] = photon
        row[f"fluct_zero_branch_{tag}"] = zero_alt
        row[f"near_marginal_{tag}"] = near
    row["residual_max"] = residual
    return row


def contrast_point(params: SystemParams, tol: Tolerances) -> Dict[str, Any]:
    try:
        cp = contrast_ratio(params, tol)
    except UnstableRegion:
        row: Dict[str, Any] = {"contrast": math.nan, "nonreciprocal": None, "status": "UnstableRegion"}
        for tag, sign in _SIGNS:
            op = order_parameter(params.with_sign(sign), tol)
            row[f"rho_{tag}"] = op.rho
            row[f"phase_{tag}"] = op.phase.value
        return row
    return {
        "contrast": cp.contrast,
        "rho_pos": cp.rho_pos,
        "rho_neg": cp.rho_neg,
        "phase_pos": cp.phase_pos.value,
        "phase_neg": cp.phase_neg.value,
        "nonreciprocal": cp.nonreciprocal,
    }


def phase_diagram(spec: SweepSpec, sign: KerrSign, jobs: int = 1, progress: bool = False, run_id: Optional[str] = None) -> pd.DataFrame:
    """One PhaseLabel per (ratio, Ω) via the phase classifier."""
    signed = spec.model_copy(update={"base": spec.base.with_sign(sign)})
    df = GridEngine(signed, jobs, progress, run_id).run(phase_point, PHASE_COLUMNS, label=f"phase K{sign.value}")
    df["kerr_sign"] = sign.value
    return df


def order_parameter_cut(spec: SweepSpec, jobs: int = 1, progress: bool = False, run_id: Optional[str] = None) -> pd.DataFrame:
    """(Ω, ρ₊, ρ₋) along the Ω axis, both Kerr signs at the same |K|."""
    return GridEngine(spec, jobs, progress, run_id).run(order_parameter_point, ORDER_COLUMNS, label="order parameter")


def fluctuation_cut(spec: SweepSpec, jobs: int = 1, progress: bool = False, run_id: Optional[str] = None) -> pd.DataFrame:
    """(Ω, lg(⟨δm†δm⟩+1) for each sign), with the Zero-branch alternative."""
    return GridEngine(spec, jobs, progress, run_id).run(fluctuation_point, FLUCTUATION_COLUMNS, label="fluctuations")


def contrast_map(spec: SweepSpec, jobs: int = 1, progress: bool = False, run_id: Optional[str] = None) -> pd.DataFrame:
    """Bidirectional contrast ratio per grid point; unstable points carry contrast = NaN."""
    return GridEngine(spec, jobs, progress, run_id).run(contrast_point, CONTRAST_COLUMNS, label="contrast")


def phase_boundary(diagram: pd.DataFrame) -> pd.DataFrame:
    """Smallest Ω per ratio at which the phase is no longer Normal (NaN when it never leaves Normal)."""
    rows = []
    for ratio, group in diagram.groupby("ratio", sort=True):
        g = group.sort_values("omega")
        left = g[(g["status"] == "ok") & (g["phase"] != PhaseLabel.NORMAL.value)]
        rows.append({"ratio": ratio, "omega_boundary": float(left["omega"].min()) if not left.empty else math.nan})
    return pd.DataFrame(rows, columns=["ratio", "omega_boundary"])


def jump_at(cut: pd.DataFrame, column: str) -> Dict[str, float]:
    """Onset Ω of a cut column and the size of the first step from zero."""
    g = cut.sort_values("omega").reset_index(drop=True)
    positive = g.index[g[column] > 0]
    if len(positive) == 0:
        return {"onset": math.nan, "jump": 0.0}
    k = int(positive[0])
    before = float(g.loc[k - 1, column]) if k > 0 else 0.0
    return {"onset": float(g.loc[k, "omega"]), "jump": float(g.loc[k, column]) - before}
