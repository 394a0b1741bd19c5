"""Fixed-step classical Runge–Kutta integration of batched autonomous systems.

States are numpy arrays whose trailing axis indexes independent trajectories
(or any shape the vector field broadcasts over); a whole validation grid is
advanced in one call.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

VectorField = Callable[[np.ndarray], np.ndarray]


def rk4_step(f: VectorField, y: np.ndarray, h: float) -> np.ndarray:
    k1 = f(y)
    k2 = f(y + 0.5 * h * k1)
    k3 = f(y + 0.5 * h * k2)
    k4 = f(y + h * k3)
    return y + (h / 6.0) * (k1 + 2.0 * (k2 + k3) + k4)


@dataclass
class IntegrationResult:
    state: np.ndarray
    converged: np.ndarray
    diverged: np.ndarray
    t_final: float
    # largest checkpoint-to-checkpoint change per trajectory at the last check
    last_change: np.ndarray


def integrate_to_rest(
    f: VectorField,
    y0: np.ndarray,
    dt: float,
    t_end: float,
    window: float,
    settle_tol: float,
    bound: float,
    batch_axis: int = -1,
) -> IntegrationResult:
    """Integrate until every trajectory has settled or diverged, or t_end is reached.

    A trajectory has settled when its state moved less than ``settle_tol``
    (max-norm) over the trailing ``window``. A trajectory whose max-norm exceeds
    ``bound`` is marked diverged and frozen at zero.
    """
    if dt <= 0 or t_end <= dt:
        raise ValueError("need dt > 0 and t_end > dt")
    y = np.array(y0, copy=True)
    axis = batch_axis % y.ndim
    reduce_axes = tuple(i for i in range(y.ndim) if i != axis)

    def _norm(arr: np.ndarray) -> np.ndarray:
        return np.max(np.abs(arr), axis=reduce_axes) if reduce_axes else np.abs(arr)

    n_batch = y.shape[axis]
    converged = np.zeros(n_batch, dtype=bool)
    diverged = np.zeros(n_batch, dtype=bool)
    last_change = np.full(n_batch, np.inf)

    steps_per_window = max(1, int(round(window / dt)))
    n_steps = int(np.ceil(t_end / dt))
    checkpoint = y.copy()
    t = 0.0
    for step in range(1, n_steps + 1):
        y = rk4_step(f, y, dt)
        t = step * dt
        if step % steps_per_window:
            continue
        blown = ~np.isfinite(_norm(y)) | (_norm(y) > bound)
        if blown.any():
            diverged |= blown
            idx = [slice(None)] * y.ndim
            idx[axis] = blown
            y[tuple(idx)] = 0.0
        last_change = _norm(y - checkpoint)
        converged = (last_change < settle_tol) & ~diverged
        checkpoint = y.copy()
        if np.all(converged | diverged):
            break
    return IntegrationResult(y, converged, diverged, t, last_change)


def integrate_until_settled(
    make_field: Callable[[np.ndarray], VectorField],
    y0: np.ndarray,
    dt: float,
    t_end: float,
    max_t_end: float,
    window: float,
    settle_tol: float,
    bound: float,
    batch_axis: int = -1,
) -> IntegrationResult:
    """`integrate_to_rest`, then keep integrating the unsettled trajectories.

    ``make_field(index)`` returns the vector field restricted to the batch
    members in ``index``. Each extension doubles the elapsed time, so a
    trajectory gets at most ``max_t_end`` in total.
    """
    y = np.array(y0, copy=True)
    axis = batch_axis % y.ndim
    everyone = np.arange(y.shape[axis])
    res = integrate_to_rest(make_field(everyone), y, dt, t_end, window, settle_tol, bound, batch_axis)
    state, converged, diverged, last_change = res.state, res.converged, res.diverged, res.last_change
    elapsed = t_end
    t_final = res.t_final
    while elapsed < max_t_end:
        pending = np.flatnonzero(~(converged | diverged))
        if pending.size == 0:
            break
        span = min(elapsed, max_t_end - elapsed)
        if span <= dt:
            break
        sub = integrate_to_rest(
            make_field(pending), np.take(state, pending, axis=axis), dt, span, window, settle_tol, bound, batch_axis
        )
        idx = [slice(None)] * state.ndim
        idx[axis] = pending
        state[tuple(idx)] = sub.state
        converged[pending] = sub.converged
        diverged[pending] = sub.diverged
        last_change[pending] = sub.last_change
        t_final = elapsed + sub.t_final
        elapsed += span
    return IntegrationResult(state, converged, diverged, t_final, last_change)


@dataclass
class DisplacementTrace:
    times: np.ndarray
    # max-norm distance from the reference per checkpoint and trajectory, shape (n_checks, N)
    distance: np.ndarray
    diverged: np.ndarray


def trace_displacement(
    f: VectorField,
    y0: np.ndarray,
    y_ref: np.ndarray,
    dt: float,
    t_end: float,
    window: float,
    bound: float,
) -> DisplacementTrace:
    """Integrate a batch (trailing axis) and record its distance from ``y_ref`` once per ``window``."""
    if dt <= 0 or t_end <= dt:
        raise ValueError("need dt > 0 and t_end > dt")
    y = np.array(y0, copy=True)
    steps_per_window = max(1, int(round(window / dt)))
    n_steps = int(np.ceil(t_end / dt))
    diverged = np.zeros(y.shape[-1], dtype=bool)
    times, rows = [], []
    for step in range(1, n_steps + 1):
        y = rk4_step(f, y, dt)
        if step % steps_per_window:
            continue
        size = np.max(np.abs(y), axis=tuple(range(y.ndim - 1)))
        blown = ~np.isfinite(size) | (size > bound)
        if blown.any():
            diverged |= blown
            y[..., blown] = y_ref[..., blown]
        dist = np.max(np.abs(y - y_ref), axis=tuple(range(y.ndim - 1)))
        dist[diverged] = np.inf
        times.append(step * dt)
        rows.append(dist)
    return DisplacementTrace(np.array(times), np.array(rows), diverged)
