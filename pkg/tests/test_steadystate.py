import math

import numpy as np
import pytest
import sympy as sp

from src.errors import InadmissibleBranch, ZeroCoupling
from src.model import derived, residual_norm, scaled_occupation
from src.steadystate import (
    Admissibility,
    BranchLabel,
    admissibility,
    all_branches_with_amplitudes,
    branch_by_label,
    critical_xi,
    magnon_branches,
    mean_field_amplitudes,
    omega_1,
    omega_2,
    onset_drive,
    parity_partner,
    photon_occupation,
    sanctioned_branch,
    zero_branch_threshold,
)

from .conftest import point


# thresholds -----------------------------------------------------------------


def test_critical_values_three_digits(ref):
    assert critical_xi(ref) == pytest.approx(0.976, abs=1e-3)
    assert omega_1(ref) == pytest.approx(2.025, abs=1e-3)
    assert omega_2(ref.with_ratio(1.3)) == pytest.approx(2.108, abs=1e-3)
    assert omega_2(ref.with_ratio(0.8)) == pytest.approx(2.084, abs=1e-3)


def test_critical_values_to_six_digits(ref):
    assert critical_xi(ref) == pytest.approx(0.976065, abs=2e-6)
    assert omega_1(ref) == pytest.approx(2.024528, abs=2e-6)
    assert omega_2(ref.with_ratio(1.3)) == pytest.approx(2.107734, abs=2e-6)
    assert omega_2(ref.with_ratio(0.8)) == pytest.approx(2.083806, abs=2e-6)


def test_omega_1_does_not_depend_on_magnon_detuning(ref):
    assert omega_1(ref.with_ratio(0.7)) == omega_1(ref.with_ratio(1.4))


def test_eta_at_omega_1_equals_critical_ratio(ref):
    p = ref.with_drive(omega_1(ref))
    assert derived(p).eta == pytest.approx(critical_xi(ref), rel=1e-10)


def test_omega_2_touches_omega_1_only_at_xi(ref):
    xi = critical_xi(ref)
    w1 = omega_1(ref)
    assert omega_2(ref.with_ratio(xi)) == pytest.approx(w1, abs=1e-9)
    for r in np.linspace(0.6, 1.4, 81):
        if abs(r - xi) > 1e-6:
            assert omega_2(ref.with_ratio(r)) > w1


def test_zero_branch_threshold_is_omega_2(ref):
    p = ref.with_ratio(1.1)
    assert zero_branch_threshold(p) == omega_2(p)


def test_critical_xi_needs_coupling(ref):
    with pytest.raises(ZeroCoupling):
        critical_xi(ref.model_copy(update={"g_m": 0.0}))


def test_critical_xi_weak_coupling_limit(ref):
    g, da, ka, gm = sp.symbols("g Delta_a kappa_a gamma_m", positive=True)
    xi = 2 * gm ** 2 / (sp.sqrt(4 * (da ** 2 + ka ** 2) * gm ** 2 + (4 * ka * gm + g ** 2) * g ** 2) - (2 * ka * gm + g ** 2))
    limit = sp.limit(xi.subs({da: 3, ka: 1, gm: 1}), g, 0)
    assert sp.simplify(limit - 1 / (sp.sqrt(10) - 1)) == 0
    weak = critical_xi(ref.model_copy(update={"g_m": 1e-4}))
    assert weak == pytest.approx(float(limit), rel=1e-6)


def test_omega_2_is_real_for_positive_rates(rng):
    for _ in range(500):
        p = point(0.0, rng.uniform(0.05, 5.0), g_m=rng.uniform(0.0, 8.0), gamma_m=rng.uniform(0.05, 4.0))
        assert omega_2(p) >= 0.0


@pytest.mark.parametrize(
    "ratio,sign,expected",
    [(1.3, "+", 2.107734), (1.3, "-", 2.024528), (0.8, "+", 2.024528), (0.8, "-", 2.083806)],
)
def test_onset_drive_follows_table(ratio, sign, expected):
    assert onset_drive(point(0.0, ratio, sign)) == pytest.approx(expected, abs=2e-6)


def test_onset_without_coupling_is_parametric_resonance():
    assert onset_drive(point(0.0, 1.3, g_m=0.0)) == pytest.approx(math.sqrt(10.0))


def test_admissibility_table():
    adm = admissibility(point(2.05, 1.3, "-"))
    assert adm[BranchLabel.ZERO] is Admissibility.ADMISSIBLE
    assert adm[BranchLabel.MINUS] is Admissibility.ADMISSIBLE
    assert adm[BranchLabel.PLUS] is Admissibility.NOT_CONSIDERED

    adm = admissibility(point(2.05, 1.3, "+"))
    assert adm[BranchLabel.PLUS] is Admissibility.INADMISSIBLE
    assert adm[BranchLabel.MINUS] is Admissibility.NOT_CONSIDERED

    assert admissibility(point(2.05, 0.8, "+"))[BranchLabel.PLUS] is Admissibility.ADMISSIBLE
    assert admissibility(point(2.05, 0.8, "-"))[BranchLabel.MINUS] is Admissibility.INADMISSIBLE


@pytest.mark.parametrize("sign", ["+", "-"])
def test_admissibility_matches_branch_signs_everywhere(sign):
    mismatches = []
    for ratio in np.linspace(0.6, 1.4, 45):
        for omega in np.linspace(1.8, 2.4, 49):
            p = point(float(omega), float(ratio), sign)
            adm = admissibility(p)
            label = sanctioned_branch(p.kerr_sign)
            direct = branch_by_label(magnon_branches(p), label).admissible
            if (adm[label] is Admissibility.ADMISSIBLE) != direct:
                mismatches.append((omega, ratio))
            assert adm[BranchLabel.ZERO] is Admissibility.ADMISSIBLE
    assert mismatches == []


# branches --------------------------------------------------------------------


def test_branches_at_superradiant_point_kerr_positive():
    p = point(2.2, 1.3, "+")
    branches = magnon_branches(p)
    assert [b.label for b in branches] == [BranchLabel.ZERO, BranchLabel.PLUS, BranchLabel.MINUS]
    plus = branch_by_label(branches, BranchLabel.PLUS)
    minus = branch_by_label(branches, BranchLabel.MINUS)
    assert plus.admissible and plus.magnon_occ == pytest.approx(0.694784, abs=1e-6)
    assert not minus.admissible and minus.magnon_occ == pytest.approx(-1.797110, abs=1e-6)
    assert plus.discriminant == pytest.approx(1.245947 ** 2, rel=1e-5)


def test_branches_at_superradiant_point_kerr_negative():
    branches = magnon_branches(point(2.2, 1.3, "-"))
    assert branch_by_label(branches, BranchLabel.MINUS).magnon_occ == pytest.approx(1.797110, abs=1e-6)
    assert not branch_by_label(branches, BranchLabel.PLUS).admissible


def test_bistable_point_occupation():
    minus = branch_by_label(magnon_branches(point(2.05, 1.3, "-")), BranchLabel.MINUS)
    assert minus.admissible
    assert minus.magnon_occ == pytest.approx(1.336706, abs=1e-6)


def test_below_omega_1_only_zero_branch():
    branches = magnon_branches(point(1.5, 1.3, "-"))
    assert [b.label for b in branches if b.admissible] == [BranchLabel.ZERO]
    assert all(math.isnan(b.magnon_occ) for b in branches if b.label is not BranchLabel.ZERO)


def test_kerr_magnitude_scales_occupation_not_rho():
    small = branch_by_label(magnon_branches(point(2.2, 1.3, "+", kerr_magnitude=0.01)), BranchLabel.PLUS)
    ref = branch_by_label(magnon_branches(point(2.2, 1.3, "+")), BranchLabel.PLUS)
    assert small.magnon_occ == pytest.approx(100 * ref.magnon_occ, rel=1e-12)
    assert scaled_occupation(point(2.2, 1.3, "+", kerr_magnitude=0.01), small.magnon_occ) == pytest.approx(ref.magnon_occ, rel=1e-12)


@pytest.mark.parametrize("omega,ratio,sign", [(2.2, 1.3, "+"), (2.2, 1.3, "-"), (2.05, 1.3, "-"), (2.05, 0.8, "+"), (2.3, 0.8, "-")])
def test_amplitudes_are_fixed_points(omega, ratio, sign):
    p = point(omega, ratio, sign)
    for label, b in all_branches_with_amplitudes(p).items():
        M, A = b.m_amplitude, b.a_amplitude
        assert abs(M) ** 2 == pytest.approx(b.magnon_occ, rel=1e-10, abs=1e-14)
        assert abs(A) ** 2 == pytest.approx(b.photon_occ, rel=1e-10, abs=1e-14)
        assert residual_norm(p, A, M) < 1e-8 * (1 + abs(A) + abs(M))
        if label is not BranchLabel.ZERO:
            assert 0.0 <= np.angle(M) % (2 * np.pi) < np.pi + 1e-12


def test_parity_degeneracy_over_random_superradiant_points(rng):
    checked = 0
    while checked < 1000:
        omega = rng.uniform(2.0, 2.6)
        ratio = rng.uniform(0.6, 1.4)
        sign = "+" if rng.random() < 0.5 else "-"
        p = point(omega, ratio, sign)
        b = branch_by_label(magnon_branches(p), sanctioned_branch(p.kerr_sign))
        if not b.admissible:
            continue
        M2, A2 = parity_partner(b.m_amplitude, b.a_amplitude)
        bound = 1e-8 * (1 + abs(M2) + abs(A2))
        assert residual_norm(p, A2, M2) < bound
        assert residual_norm(p, b.a_amplitude, b.m_amplitude) < bound
        checked += 1


def test_inadmissible_branch_has_no_amplitude():
    minus = branch_by_label(magnon_branches(point(2.2, 1.3, "+")), BranchLabel.MINUS)
    with pytest.raises(InadmissibleBranch):
        mean_field_amplitudes(point(2.2, 1.3, "+"), minus)
    with pytest.raises(InadmissibleBranch):
        photon_occupation(point(2.2, 1.3, "+"), minus)


def test_zero_branch_amplitudes():
    zero = branch_by_label(magnon_branches(point(2.2, 1.3)), BranchLabel.ZERO)
    assert zero.admissible
    assert zero.m_amplitude == 0 and zero.a_amplitude == 0 and zero.photon_occ == 0.0
