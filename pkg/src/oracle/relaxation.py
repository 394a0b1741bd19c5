"""Time-domain relaxation of the mean-field equations and of the covariance ODE.

Both are integrated with fixed-step RK4 and share no code with the closed-form
branch formulas or the Lyapunov solver, which is what makes them an oracle.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from ..errors import Diverged, InadmissibleBranch
from ..fluctuations import CovarianceMatrix, DiffusionMatrix, lyapunov_residual
from ..model import DEFAULT_TOLERANCES, SystemParams, Tolerances, scaled_occupation
from ..stability import DriftMatrix, max_real_part
from ..steadystate import BranchLabel, branch_by_label, magnon_branches, sanctioned_branch
from ..utils.random_seed import make_rng
from .integrators import IntegrationResult, integrate_until_settled, trace_displacement

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OracleSettings:
    dt: float = 1e-3
    t_end: float = 200.0
    # unsettled trajectories are extended by doubling up to this horizon
    max_t_end: float = 1600.0
    window: float = 1.0
    settle_tol: float = 1e-9
    divergence_bound: float = 1e6
    seed: int = 42


DEFAULT_ORACLE = OracleSettings()


class MeanFieldField:
    """Vector field of the mean-field equations over a batch of parameter points.

    The state has shape (2, N): row 0 holds the cavity amplitudes, row 1 the magnon ones.
    """

    def __init__(self, params: Sequence[SystemParams]):
        self.delta_a = np.array([p.delta_a for p in params])
        self.kappa_a = np.array([p.kappa_a for p in params])
        self.delta_m = np.array([p.delta_m for p in params])
        self.gamma_m = np.array([p.gamma_m for p in params])
        self.g_m = np.array([p.g_m for p in params])
        self.kerr = np.array([p.kerr for p in params])
        self.omega = np.array([p.omega_drive for p in params])

    def __call__(self, y: np.ndarray) -> np.ndarray:
        A, M = y[0], y[1]
        occ = M.real * M.real + M.imag * M.imag
        dA = -1j * (self.delta_a - 1j * self.kappa_a) * A - 1j * self.g_m * M - 1j * self.omega * np.conj(A)
        dM = -1j * (self.delta_m + self.kerr * occ - 1j * self.gamma_m) * M - 1j * self.g_m * A
        return np.stack([dA, dM])


class CovarianceField:
    """V̇ = ΛV + VΛᵀ + D over a batch of shape (N, 4, 4)."""

    def __init__(self, drifts: np.ndarray, diffusions: np.ndarray):
        self.L = drifts
        self.LT = np.swapaxes(drifts, -1, -2)
        self.D = diffusions

    def __call__(self, V: np.ndarray) -> np.ndarray:
        return self.L @ V + V @ self.LT + self.D


def relax_mean_field_batch(
    params: Sequence[SystemParams],
    A0: np.ndarray,
    M0: np.ndarray,
    settings: OracleSettings = DEFAULT_ORACLE,
) -> IntegrationResult:
    """Relax many trajectories at once; divergence is reported per trajectory, never raised.

    Trajectories still moving at ``t_end`` keep going until they settle or
    ``max_t_end`` is reached.
    """
    y0 = np.stack([np.asarray(A0, dtype=complex), np.asarray(M0, dtype=complex)])
    params = list(params)
    with np.errstate(over="ignore", invalid="ignore"):
        return integrate_until_settled(
            lambda index: MeanFieldField([params[i] for i in index]),
            y0,
            dt=settings.dt,
            t_end=settings.t_end,
            max_t_end=max(settings.t_end, settings.max_t_end),
            window=settings.window,
            settle_tol=settings.settle_tol,
            bound=settings.divergence_bound,
        )


@dataclass(frozen=True)
class MeanFieldRelaxation:
    A: complex
    M: complex
    converged: bool
    t_final: float


def relax_mean_field(
    params: SystemParams,
    A0: complex,
    M0: complex,
    settings: OracleSettings = DEFAULT_ORACLE,
) -> MeanFieldRelaxation:
    """Integrate the mean-field equations from (A0, M0) until they settle or max_t_end is reached."""
    res = relax_mean_field_batch([params], np.array([A0]), np.array([M0]), settings)
    if res.diverged[0]:
        raise Diverged(f"|state| exceeded {settings.divergence_bound:.3g} at Ω={params.omega_drive:.6g}")
    return MeanFieldRelaxation(complex(res.state[0, 0]), complex(res.state[1, 0]), bool(res.converged[0]), res.t_final)


def relax_covariance_batch(
    drifts: Sequence[DriftMatrix],
    diffusions: Sequence[DiffusionMatrix],
    settings: OracleSettings = DEFAULT_ORACLE,
    V0: Optional[np.ndarray] = None,
) -> IntegrationResult:
    L = np.stack([d.entries for d in drifts])
    D = np.stack([d.entries for d in diffusions])
    start = np.zeros_like(L) if V0 is None else np.broadcast_to(np.asarray(V0, dtype=float), L.shape).copy()
    with np.errstate(over="ignore", invalid="ignore"):
        return integrate_until_settled(
            lambda index: CovarianceField(L[index], D[index]),
            start,
            dt=settings.dt,
            t_end=settings.t_end,
            max_t_end=max(settings.t_end, settings.max_t_end),
            window=settings.window,
            settle_tol=settings.settle_tol,
            bound=settings.divergence_bound,
            batch_axis=0,
        )


def relax_covariance(
    drift: DriftMatrix,
    diff: DiffusionMatrix,
    settings: OracleSettings = DEFAULT_ORACLE,
    V0: Optional[np.ndarray] = None,
) -> CovarianceMatrix:
    """Integrate the covariance ODE from V0 (default 0) towards its stationary value."""
    res = relax_covariance_batch([drift], [diff], settings, V0)
    if res.diverged[0]:
        raise Diverged(f"covariance exceeded {settings.divergence_bound:.3g}")
    top = max_real_part(drift)
    if not res.converged[0] and top >= 0:
        raise Diverged(f"covariance grows without settling (max Re(λ) = {top:.3g})")
    V = res.state[0]
    V = 0.5 * (V + V.T)
    return CovarianceMatrix(V, residual=lyapunov_residual(drift, diff, V), near_marginal=not bool(res.converged[0]))


def random_kicks(seed: int, streams: Sequence[Sequence[int]], scale: float) -> np.ndarray:
    """One complex kick pair (δA, δM) of max-norm ``scale`` per stream; shape (2, N)."""
    out = np.empty((2, len(streams)), dtype=complex)
    for i, stream in enumerate(streams):
        rng = make_rng(seed, *stream)
        z = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        out[:, i] = scale * z / np.max(np.abs(z))
    return out


@dataclass(frozen=True)
class ProbeResult:
    growth: float
    grew: bool
    diverged: bool
    # slope of log displacement over the second half of the window
    rate: float = float("nan")


def _log_slope(times: np.ndarray, dist: np.ndarray) -> float:
    ok = np.isfinite(dist) & (dist > 0)
    if ok.sum() < 2:
        return float("nan")
    return float(np.polyfit(times[ok], np.log(dist[ok]), 1)[0])


def probe_batch(
    params: Sequence[SystemParams],
    A_star: np.ndarray,
    M_star: np.ndarray,
    streams: Sequence[Sequence[int]],
    settings: OracleSettings = DEFAULT_ORACLE,
    kick: float = 1e-6,
    t_probe: float = 200.0,
    n_kicks: int = 3,
) -> List[ProbeResult]:
    """Kick each fixed point ``n_kicks`` times by ``kick`` and report whether the displacement grew.

    Growth is the largest displacement over the second half of ``t_probe``
    in units of the kick, maximized over the kicks.
    """
    params = list(params)
    n = len(params)
    if n == 0:
        return []
    if n_kicks < 1:
        raise ValueError("n_kicks must be >= 1")
    ref = np.tile(np.stack([np.asarray(A_star, dtype=complex), np.asarray(M_star, dtype=complex)]), (1, n_kicks))
    dy = random_kicks(settings.seed, [tuple(s) + (k,) for k in range(n_kicks) for s in streams], kick)
    with np.errstate(over="ignore", invalid="ignore"):
        trace = trace_displacement(
            MeanFieldField(params * n_kicks), ref + dy, ref, settings.dt, t_probe, settings.window, settings.divergence_bound
        )
    late = trace.times >= 0.5 * t_probe
    peak = trace.distance[late].max(axis=0).reshape(n_kicks, n) / kick
    diverged = trace.diverged.reshape(n_kicks, n).any(axis=0)
    out = []
    for i in range(n):
        if diverged[i]:
            out.append(ProbeResult(growth=float("inf"), grew=True, diverged=True, rate=float("inf")))
            continue
        k = int(np.argmax(peak[:, i]))
        growth = float(peak[k, i])
        rate = _log_slope(trace.times[late], trace.distance[late, k * n + i])
        out.append(ProbeResult(growth=growth, grew=growth > 1.0, diverged=False, rate=rate))
    return out


def probe_stability(
    params: SystemParams,
    label: BranchLabel,
    settings: OracleSettings = DEFAULT_ORACLE,
    tol: Tolerances = DEFAULT_TOLERANCES,
    kick: float = 1e-6,
    t_probe: float = 200.0,
) -> ProbeResult:
    """Perturbation growth/decay verdict for one branch, independent of the eigenvalues."""
    branch = branch_by_label(magnon_branches(params, eps_den=tol.eps_den, tol_phase=tol.tol_phase, tol_fp=tol.tol_fp), label)
    if not branch.admissible:
        raise InadmissibleBranch(f"{label.value} branch is not admissible")
    return probe_batch([params], [branch.a_amplitude], [branch.m_amplitude], [(0,)], settings, kick, t_probe)[0]


@dataclass(frozen=True)
class BasinResult:
    rho_from_origin: float
    rho_from_branch: float
    converged_origin: bool
    converged_branch: bool

    @property
    def bistable(self) -> bool:
        """Both attractors reached from the two starts and they differ."""
        return (
            self.converged_origin
            and self.converged_branch
            and abs(self.rho_from_origin - self.rho_from_branch) > 1e-6 * (1.0 + self.rho_from_branch)
        )


def basin_probe(
    params: SystemParams,
    settings: OracleSettings = DEFAULT_ORACLE,
    tol: Tolerances = DEFAULT_TOLERANCES,
    origin_kick: float = 1e-6,
    branch_kick: float = 1e-3,
) -> BasinResult:
    """Relax from the origin and from the vicinity of the nonzero branch of the given Kerr sign."""
    branches = magnon_branches(params, eps_den=tol.eps_den, tol_phase=tol.tol_phase, tol_fp=tol.tol_fp)
    nonzero = branch_by_label(branches, sanctioned_branch(params.kerr_sign))
    if not nonzero.admissible:
        raise InadmissibleBranch(f"{nonzero.label.value} branch is not admissible; no second basin to probe")
    kicks = random_kicks(settings.seed, [(0,), (1,)], 1.0)
    A0 = np.array([origin_kick * kicks[0, 0], nonzero.a_amplitude + branch_kick * kicks[0, 1]])
    M0 = np.array([origin_kick * kicks[1, 0], nonzero.m_amplitude + branch_kick * kicks[1, 1]])
    res = relax_mean_field_batch([params, params], A0, M0, settings)
    if res.diverged.any():
        raise Diverged(f"basin probe diverged at Ω={params.omega_drive:.6g}")
    occ = np.abs(res.state[1]) ** 2
    return BasinResult(
        rho_from_origin=scaled_occupation(params, float(occ[0])),
        rho_from_branch=scaled_occupation(params, float(occ[1])),
        converged_origin=bool(res.converged[0]),
        converged_branch=bool(res.converged[1]),
    )
