"""Oracle-equivalence run over a grid of operating points.

For every (Ω, Δm/Δa, sign) the analytic pipeline is compared with brute-force
time integration: branch values against mean-field relaxation, eigenvalue
verdicts against perturbation growth, and Lyapunov covariances against the
covariance ODE. All trajectories of the grid are integrated as one batch.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
import pandas as pd

from ..errors import MagnonicsError
from ..eval.contrast import order_parameter_from_report
from ..fluctuations import diffusion_matrix, solve_lyapunov
from ..model import DEFAULT_TOLERANCES, KerrSign, SystemParams, Tolerances, scaled_occupation
from ..stability import PhaseLabel, build_drift_matrix, phase_report, routh_hurwitz_stable
from ..utils.logging import get_logger
from .relaxation import DEFAULT_ORACLE, OracleSettings, probe_batch, random_kicks, relax_covariance_batch, relax_mean_field_batch

logger = logging.getLogger(__name__)

VALIDATION_COLUMNS = [
    "omega",
    "ratio",
    "kerr_sign",
    "phase",
    "rho_formula",
    "rho_oracle",
    "rho_error",
    "relax_converged",
    "zero_max_real",
    "zero_probe_growth",
    "zero_probe_rate",
    "nonzero_max_real",
    "nonzero_probe_growth",
    "nonzero_probe_rate",
    "stability_agree",
    "hurwitz_agree",
    "covariance_error",
    "status",
]


@dataclass
class ValidationRun:
    """Brute-force cross-check of the analytic pipeline on an Ω × Δm/Δa grid, both Kerr signs."""

    base: SystemParams
    omegas: List[float]
    ratios: List[float]
    settings: OracleSettings = DEFAULT_ORACLE
    tol: Tolerances = DEFAULT_TOLERANCES
    # |max Re λ| below this is too slow to resolve by finite-time probing
    indeterminate_band: float = 0.05
    branch_kick: float = 1e-3
    run_id: Optional[str] = None
    _rows: List[Dict[str, Any]] = field(default_factory=list, init=False, repr=False)

    def _points(self):
        for s, sign in enumerate((KerrSign.POSITIVE, KerrSign.NEGATIVE)):
            for j, ratio in enumerate(self.ratios):
                for i, omega in enumerate(self.omegas):
                    yield (s, j, i), self.base.with_ratio(ratio).with_drive(omega).with_sign(sign)

    def run(self) -> pd.DataFrame:
        log = get_logger("oracle", self.run_id) if self.run_id else logger
        self._rows = []
        relax_jobs: List[Tuple[int, SystemParams, complex, complex, Tuple[int, ...]]] = []
        probe_jobs: List[Tuple[int, str, SystemParams, complex, complex, Tuple[int, ...]]] = []
        cov_jobs: List[Tuple[int, Any, Any, np.ndarray]] = []

        for key, params in self._points():
            row: Dict[str, Any] = {
                "omega": params.omega_drive,
                "ratio": params.detuning_ratio,
                "kerr_sign": params.kerr_sign.value,
                "status": "ok",
            }
            idx = len(self._rows)
            self._rows.append(row)
            try:
                report = phase_report(params, self.tol)
            except MagnonicsError as e:
                row["status"] = type(e).__name__
                continue
            op = order_parameter_from_report(params, report)
            row["phase"] = report.label.value
            row["rho_formula"] = op.rho

            hurwitz_ok = True
            for tag, verdict in (("zero", report.zero), ("nonzero", report.nonzero)):
                if verdict.state is None:
                    continue
                row[f"{tag}_max_real"] = verdict.max_real
                if abs(verdict.max_real) < self.indeterminate_band:
                    continue
                b = verdict.branch
                probe_jobs.append((idx, tag, params, b.a_amplitude, b.m_amplitude, key + (1 if tag == "zero" else 2,)))
                rh = routh_hurwitz_stable(build_drift_matrix(params, b.m_amplitude))
                hurwitz_ok &= rh == (verdict.max_real < 0)
            row["hurwitz_agree"] = hurwitz_ok

            if report.label is PhaseLabel.UNSTABLE:
                continue
            reported = report.zero if report.label is PhaseLabel.NORMAL else report.nonzero
            relax_jobs.append((idx, params, reported.branch.a_amplitude, reported.branch.m_amplitude, key + (0,)))
            if reported.max_real < -self.indeterminate_band:
                drift = build_drift_matrix(params, reported.branch.m_amplitude)
                diff = diffusion_matrix(params)
                lyap = solve_lyapunov(drift, diff, self.tol.tol_stab, self.tol.marginal_band)
                cov_jobs.append((idx, drift, diff, lyap.entries))

        log.info(
            "oracle grid: %d points, %d relaxations, %d probes, %d covariances",
            len(self._rows), len(relax_jobs), len(probe_jobs), len(cov_jobs),
        )
        self._run_relaxations(relax_jobs)
        self._run_probes(probe_jobs)
        self._run_covariances(cov_jobs)

        for row in self._rows:
            if "rho_formula" in row and "rho_oracle" in row and row.get("relax_converged"):
                row["rho_error"] = abs(row["rho_oracle"] - row["rho_formula"])
        return pd.DataFrame(self._rows, columns=VALIDATION_COLUMNS)

    def _run_relaxations(self, jobs) -> None:
        if not jobs:
            return
        kicks = random_kicks(self.settings.seed, [j[4] for j in jobs], self.branch_kick)
        A0 = np.array([j[2] for j in jobs], dtype=complex) + kicks[0]
        M0 = np.array([j[3] for j in jobs], dtype=complex) + kicks[1]
        res = relax_mean_field_batch([j[1] for j in jobs], A0, M0, self.settings)
        for n, (idx, params, *_rest) in enumerate(jobs):
            row = self._rows[idx]
            row["relax_converged"] = bool(res.converged[n])
            if res.diverged[n]:
                row["status"] = "Diverged"
                continue
            row["rho_oracle"] = scaled_occupation(params, float(abs(res.state[1, n]) ** 2))
            if not res.converged[n]:
                row["status"] = "NotSettled"

    def _run_probes(self, jobs) -> None:
        results = probe_batch(
            [j[2] for j in jobs],
            np.array([j[3] for j in jobs], dtype=complex),
            np.array([j[4] for j in jobs], dtype=complex),
            [j[5] for j in jobs],
            self.settings,
        ) if jobs else []
        for (idx, tag, *_rest), probe in zip(jobs, results):
            row = self._rows[idx]
            row[f"{tag}_probe_growth"] = probe.growth
            row[f"{tag}_probe_rate"] = probe.rate
            agree = probe.grew == (row[f"{tag}_max_real"] > 0)
            row["stability_agree"] = row.get("stability_agree", True) and agree
        for row in self._rows:
            if "phase" in row:
                row.setdefault("stability_agree", True)

    def _run_covariances(self, jobs) -> None:
        if not jobs:
            return
        res = relax_covariance_batch([j[1] for j in jobs], [j[2] for j in jobs], self.settings)
        for n, (idx, _drift, _diff, exact) in enumerate(jobs):
            V = res.state[n]
            V = 0.5 * (V + V.T)
            self._rows[idx]["covariance_error"] = float(np.max(np.abs(V - exact)))


def validation_grid(
    base: SystemParams,
    omegas: List[float],
    ratios: List[float],
    settings: OracleSettings = DEFAULT_ORACLE,
    tol: Tolerances = DEFAULT_TOLERANCES,
    run_id: Optional[str] = None,
) -> pd.DataFrame:
    return ValidationRun(base, list(omegas), list(ratios), settings, tol, run_id=run_id).run()


def summarize_validation(df: pd.DataFrame, rho_tol: float = 1e-5, cov_tol: float = 1e-6) -> pd.DataFrame:
    """Aggregate per-point agreement by Kerr sign."""
    work = df.copy()
    for col in ("stability_agree", "hurwitz_agree"):
        work[col] = work[col].astype(float)
    work["rho_agree"] = work["rho_error"].le(rho_tol) | work["rho_error"].isna()
    work["covariance_agree"] = work["covariance_error"].le(cov_tol) | work["covariance_error"].isna()
    agg = work.groupby("kerr_sign", dropna=False).agg(
        points=("omega", "size"),
        max_rho_error=("rho_error", "max"),
        rho_agree_rate=("rho_agree", "mean"),
        stability_agree_rate=("stability_agree", "mean"),
        hurwitz_agree_rate=("hurwitz_agree", "mean"),
        unsettled=("status", lambda s: int((s == "NotSettled").sum())),
        max_covariance_error=("covariance_error", "max"),
        covariance_agree_rate=("covariance_agree", "mean"),
    ).reset_index()
    return agg
