import math

import numpy as np
import pytest
from scipy import linalg

from src.errors import InadmissibleBranch, SingularSystem, UnstableDrift
from src.fluctuations import (
    CovarianceMatrix,
    DiffusionMatrix,
    branch_fluctuations,
    diffusion_matrix,
    log_fluctuations,
    lyapunov_residual,
    magnon_fluctuations,
    photon_fluctuations,
    solve_lyapunov,
)
from src.stability import DriftMatrix, build_drift_matrix
from src.steadystate import BranchLabel, branch_by_label, magnon_branches, omega_2

from .conftest import point


def test_pure_damping_gives_vacuum():
    cov = solve_lyapunov(DriftMatrix(-np.eye(4)), DiffusionMatrix(np.eye(4)))
    np.testing.assert_allclose(cov.entries, 0.5 * np.eye(4), atol=1e-14)
    assert magnon_fluctuations(cov) == pytest.approx(0.0, abs=1e-14)
    assert photon_fluctuations(cov) == pytest.approx(0.0, abs=1e-14)


def test_diagonal_drift_closed_form():
    lam = np.array([-1.0, -2.0, -0.5, -4.0])
    d = np.array([1.0, 3.0, 2.0, 0.5])
    cov = solve_lyapunov(DriftMatrix(np.diag(lam)), DiffusionMatrix(np.diag(d)))
    np.testing.assert_allclose(np.diag(cov.entries), -d / (2 * lam), rtol=1e-12)


def test_occupation_readout():
    V = np.diag([0.5, 0.5, 1.5, 1.5])
    assert magnon_fluctuations(CovarianceMatrix(V)) == pytest.approx(1.0)
    assert photon_fluctuations(CovarianceMatrix(V)) == pytest.approx(0.0)


@pytest.mark.parametrize("omega,ratio,sign", [(1.5, 1.3, "+"), (2.0, 0.8, "-"), (2.2, 1.3, "+"), (2.3, 1.3, "-")])
def test_matches_scipy_bartels_stewart(omega, ratio, sign):
    p = point(omega, ratio, sign)
    label = BranchLabel.ZERO if omega < 2.0 + 1e-9 else (BranchLabel.PLUS if sign == "+" else BranchLabel.MINUS)
    branch = branch_by_label(magnon_branches(p), label)
    drift = build_drift_matrix(p, branch.m_amplitude)
    diff = diffusion_matrix(p)
    cov = solve_lyapunov(drift, diff)
    ref = linalg.solve_continuous_lyapunov(drift.entries, -diff.entries)
    np.testing.assert_allclose(cov.entries, ref, rtol=1e-9, atol=1e-12)
    assert cov.residual < 1e-10
    np.testing.assert_array_equal(cov.entries, cov.entries.T)
    assert np.all(np.linalg.eigvalsh(cov.entries) > 0)


def test_unstable_drift_has_no_covariance():
    with pytest.raises(UnstableDrift):
        solve_lyapunov(DriftMatrix(np.eye(4)), DiffusionMatrix(np.eye(4)))


@pytest.mark.parametrize("top", [0.0, 5e-10, -5e-10])
def test_marginal_drift_is_singular(top):
    drift = DriftMatrix(np.diag([-1.0, -1.0, -2.0, top]))
    with pytest.raises(SingularSystem):
        solve_lyapunov(drift, DiffusionMatrix(np.eye(4)), tol_stab=1e-9)


def test_just_outside_marginal_band_is_unstable():
    with pytest.raises(UnstableDrift):
        solve_lyapunov(DriftMatrix(np.diag([-1.0, -1.0, -2.0, 2e-9])), DiffusionMatrix(np.eye(4)), tol_stab=1e-9)


def test_zero_branch_above_omega_2_is_unstable():
    p = point(2.2, 1.3)
    with pytest.raises(UnstableDrift):
        branch_fluctuations(p, BranchLabel.ZERO)


def test_inadmissible_branch_raises():
    with pytest.raises(InadmissibleBranch):
        branch_fluctuations(point(2.2, 1.3, "+"), BranchLabel.MINUS)


def test_undriven_vacuum_has_no_fluctuations():
    res = branch_fluctuations(point(0.0, 1.3), BranchLabel.ZERO)
    assert res.magnon == pytest.approx(0.0, abs=1e-12)
    assert res.photon == pytest.approx(0.0, abs=1e-12)
    assert res.residual < 1e-12


def test_weak_drive_stays_near_vacuum():
    res = branch_fluctuations(point(0.1, 1.3), BranchLabel.ZERO)
    assert 0.0 < res.magnon
    assert log_fluctuations(res.magnon) < 0.01


@pytest.mark.parametrize("nbar", [0.25, 1.0, 3.0])
def test_equal_thermal_baths_give_bath_occupation(nbar):
    res = branch_fluctuations(point(0.0, 1.3, nbar_a=nbar, nbar_m=nbar), BranchLabel.ZERO)
    assert res.magnon == pytest.approx(nbar, rel=1e-12)
    assert res.photon == pytest.approx(nbar, rel=1e-12)


def test_thermal_occupation_raises_fluctuations():
    values = [branch_fluctuations(point(2.2, 1.3, "+", nbar_m=n), BranchLabel.PLUS).magnon for n in (0.0, 0.5, 2.0)]
    assert values[0] < values[1] < values[2]


def test_diffusion_matrix_entries():
    d = diffusion_matrix(point(0.0, 1.3, nbar_a=1.0, nbar_m=0.5))
    np.testing.assert_allclose(np.diag(d.entries), [3.0, 3.0, 2.0, 2.0])


def test_fluctuations_diverge_approaching_omega_2():
    w2 = omega_2(point(0.0, 1.3))
    close = branch_fluctuations(point(w2 - 1e-6, 1.3), BranchLabel.ZERO)
    far = branch_fluctuations(point(w2 - 1e-2, 1.3), BranchLabel.ZERO)
    assert close.magnon > 100.0
    assert close.magnon > far.magnon


def test_residual_helper():
    drift = DriftMatrix(-np.eye(4))
    diff = DiffusionMatrix(np.eye(4))
    assert lyapunov_residual(drift, diff, 0.5 * np.eye(4)) == 0.0
    assert lyapunov_residual(drift, diff, np.eye(4)) == pytest.approx(1.0)


def test_log_fluctuations():
    assert log_fluctuations(0.0) == 0.0
    assert log_fluctuations(9.0) == pytest.approx(1.0)
    assert math.isnan(log_fluctuations(math.nan))
