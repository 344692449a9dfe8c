"""Superpotential construction, shape invariance and the closed-form spectrum."""

import math
import warnings

import numpy as np
import pytest

import huabound as hb
from huabound.errors import (
    LadderDegenerateError,
    NoRealSolutionError,
    SingularityError,
    UnboundLevelError,
    ValidityError,
    ValidityWarning,
)
from huabound.model import EffectiveCoefficients

REF = dict(V0=15.0, b_h=1.61890, r_e=1.0, q=0.5, mass_factor=1.0, D=3)


def ref_params(**overrides):
    kw = dict(REF)
    kw.update(overrides)
    return hb.HuaParameters(**kw)


def ref_state(l=1, **overrides):
    p = ref_params(**overrides)
    pek = hb.pekeris_coefficients(p)
    eff = hb.effective_coefficients(p, l, pek)
    return p, pek, eff, hb.superpotential_params(eff)


def synthetic_eff(v1, v2, alpha=1.61890):
    return EffectiveCoefficients(V1=v1, V2=v2, const_shift=0.0, alpha=alpha, A_l=0.0)


# ---------------------------------------------------------------------------
# superpotential parameters


def test_params_with_zero_coefficients():
    alpha = 1.61890
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ValidityWarning)
        s = hb.superpotential_params(synthetic_eff(0.0, 0.0, alpha))
    assert s.A == pytest.approx(-alpha, rel=1e-15)
    assert s.B == pytest.approx(alpha / 2.0, rel=1e-15)


def test_params_with_quadratic_offset():
    alpha = 1.61890
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ValidityWarning)
        s = hb.superpotential_params(synthetic_eff(0.0, alpha**2, alpha))
    assert s.A == pytest.approx(-alpha, rel=1e-15)
    assert s.B == pytest.approx(alpha, rel=1e-15)


def test_params_reference_case():
    # frozen from the 50-digit run of the q = 0.5, l = 1, D = 3 grouping
    _, _, _, s = ref_state(l=1)
    assert s.A == pytest.approx(-4.7210980453364717, rel=1e-13)
    assert s.B == pytest.approx(6.8830071686879079, rel=1e-13)
    assert s.A < 0 and s.A + s.B > 0 and s.admissible
    assert s.gs_energy_shifted == -s.B**2


def test_params_complex_branch_error():
    alpha = 1.61890
    with pytest.raises(NoRealSolutionError):
        hb.superpotential_params(synthetic_eff(alpha**2, 0.0, alpha))


def test_params_admissibility_warning():
    # V1 = 0 gives A = -alpha; V1+V2 < A^2 then forces A + B <= 0
    alpha = 1.61890
    with pytest.warns(ValidityWarning):
        s = hb.superpotential_params(synthetic_eff(0.0, alpha**2 / 2.0, alpha))
    assert not s.admissible and s.A + s.B < 0


# ---------------------------------------------------------------------------
# superpotential values and the Riccati identity


def test_superpotential_limits():
    p, _, _, s = ref_state()
    assert hb.superpotential_value(80.0, s, p.q) == pytest.approx(s.A + s.B, abs=1e-12)
    # q = 0 removes the pole entirely: phi is constant in x
    s0 = hb.superpotential_params(synthetic_eff(-3.0, 11.0))
    for x in (-5.0, 0.0, 7.0):
        assert hb.superpotential_value(x, s0, 0.0) == pytest.approx(s0.A + s0.B, rel=1e-15)


def test_superpotential_pole_guard():
    p, _, _, s = ref_state()
    x0 = math.log(p.q) / p.alpha
    with pytest.raises(SingularityError):
        hb.superpotential_value(x0 - 0.01, s, p.q)


def test_riccati_identity_analytic_derivative():
    p, _, _, s = ref_state(l=1)
    xs = hb.verification_grid(p.q, p.alpha)
    assert np.max(np.abs(hb.riccati_residual(xs, s, p.q))) <= 1e-9


def test_riccati_identity_finite_difference_derivative():
    p, _, eff, s = ref_state(l=1)
    h = 1e-3
    for x in (0.1, 1.0, 3.0):
        stencil = np.array([x - 2 * h, x - h, x + h, x + 2 * h])
        phi_s = hb.superpotential_value(stencil, s, p.q)
        dphi = (phi_s[0] - 8 * phi_s[1] + 8 * phi_s[2] - phi_s[3]) / (12 * h)
        phi = hb.superpotential_value(x, s, p.q)
        u = hb.u_factor(x, p.q, p.alpha)
        w = -eff.V1 * u**2 - eff.V2 * u
        assert phi**2 - dphi == pytest.approx(w - s.gs_energy_shifted, abs=1e-8)


def test_superpotential_derivative_matches_finite_difference():
    p, _, _, s = ref_state()
    h = 1e-4
    for x in (-0.2, 0.4, 2.5):
        fd = (hb.superpotential_value(x + h, s, p.q)
              - hb.superpotential_value(x - h, s, p.q)) / (2 * h)
        assert hb.superpotential_derivative(x, s, p.q) == pytest.approx(fd, rel=1e-6)


# ---------------------------------------------------------------------------
# ground-state wavefunction


def test_ground_state_boundary_decay():
    p, _, _, s = ref_state(l=0)
    x0 = math.log(p.q) / p.alpha
    near_pole = x0 + 1e-9 * (0.0 - x0)
    assert hb.ground_state_wavefunction(near_pole, s, p.q) < 1e-6
    assert hb.ground_state_wavefunction(40.0, s, p.q) < 1e-12


def test_ground_state_positive_on_domain():
    p, _, _, s = ref_state(l=0)
    xs = hb.verification_grid(p.q, p.alpha)
    assert np.all(hb.ground_state_wavefunction(xs, s, p.q) > 0.0)


def test_ground_state_solves_schroedinger_equation():
    p, _, eff, s = ref_state(l=0)
    xs = np.linspace(-0.25, 4.0, 41)
    h = 1e-3
    resid = []
    scale = []
    for x in xs:
        stencil = x + h * np.array([-2.0, -1.0, 0.0, 1.0, 2.0])
        rr = hb.ground_state_wavefunction(stencil, s, p.q)
        d2 = (-rr[0] + 16 * rr[1] - 30 * rr[2] + 16 * rr[3] - rr[4]) / (12 * h**2)
        u = hb.u_factor(x, p.q, p.alpha)
        w = -eff.V1 * u**2 - eff.V2 * u
        resid.append(-d2 + (w - s.gs_energy_shifted) * rr[2])
        scale.append(abs((w - s.gs_energy_shifted) * rr[2]))
    assert np.max(np.abs(resid)) <= 1e-7 * max(max(scale), 1.0)


def test_ground_state_window_brackets_the_peak():
    p, _, _, s = ref_state(l=0)
    x_lo, x_hi = hb.ground_state_window(s, p.q, drop=1e-8)
    peak = hb.ground_state_wavefunction(
        np.linspace(x_lo, x_hi, 2001), s, p.q
    ).max()
    assert hb.ground_state_wavefunction(x_lo, s, p.q) <= 1.01e-8 * peak
    assert hb.ground_state_wavefunction(x_hi, s, p.q) <= 1.01e-8 * peak


# ---------------------------------------------------------------------------
# shape invariance


def test_remainder_trivial_cases():
    assert hb.shape_invariance_remainder(-3.0, -3.0, 1.0, 2.0) == 0.0
    a0, a1 = -5.0, -3.5
    assert hb.shape_invariance_remainder(a0, a1, 2.0, -2.0) == pytest.approx(
        0.25 * (a0**2 - a1**2), rel=1e-15
    )
    with pytest.raises(LadderDegenerateError):
        hb.shape_invariance_remainder(0.0, -1.0, 1.0, 1.0)


def test_partner_potential_difference_is_constant():
    p, _, eff, s = ref_state(l=1)
    xs = hb.verification_grid(p.q, p.alpha)
    a0 = s.a0
    a1 = a0 - s.alpha
    v_plus, _ = hb.partner_potentials(xs, a0, s.ladder_sum, s.alpha, p.q)
    _, v_minus = hb.partner_potentials(xs, a1, s.ladder_sum, s.alpha, p.q)
    diff = v_plus - v_minus
    r_expected = hb.shape_invariance_remainder(a0, a1, eff.V1, eff.V2)
    assert np.std(diff) <= 1e-10 * max(abs(float(np.mean(diff))), 1.0)
    assert np.max(np.abs(diff - r_expected)) <= 1e-10


# ---------------------------------------------------------------------------
# shifted eigenvalues


def test_shifted_eigenvalue_ground_matches_offset():
    _, _, _, s = ref_state(l=1)
    assert hb.shifted_eigenvalue(0, s) == pytest.approx(s.gs_energy_shifted, abs=1e-12)
    assert hb.shifted_eigenvalue(0, s) == pytest.approx(-s.B**2, abs=1e-12)


def test_shifted_eigenvalue_telescopes():
    _, _, eff, s = ref_state(l=0)
    for n_r in (1, 2):
        acc = 0.0
        for k in range(1, n_r + 1):
            acc += hb.shape_invariance_remainder(
                s.a0 - (k - 1) * s.alpha, s.a0 - k * s.alpha, eff.V1, eff.V2
            )
        lhs = hb.shifted_eigenvalue(n_r, s) - hb.shifted_eigenvalue(0, s)
        assert lhs == pytest.approx(acc, abs=1e-12 * max(abs(acc), 1.0))


def test_shifted_eigenvalue_nonpositive_for_bound_levels():
    p, pek, _, s = ref_state(l=0)
    for n_r in range(hb.count_bound_states(0, p, pek)):
        assert hb.shifted_eigenvalue(n_r, s) <= 0.0


def test_shifted_eigenvalue_degenerate_ladder():
    s = hb.SusyState(alpha=1.0, A=-2.0, B=3.0, a0=-2.0, V1=0.0, V2=0.0,
                     gs_energy_shifted=-9.0, admissible=True)
    with pytest.raises(LadderDegenerateError):
        hb.shifted_eigenvalue(-2, s)  # a0 - (-2)*alpha = 0


# ---------------------------------------------------------------------------
# energy levels


def test_energy_consistent_with_shifted_route():
    p = ref_params()
    pek = hb.pekeris_coefficients(p)
    for l in (0, 1, 2):
        eff = hb.effective_coefficients(p, l, pek)
        s = hb.superpotential_params(eff)
        for n_r in range(hb.count_bound_states(l, p, pek)):
            direct = hb.energy_level(hb.QuantumNumbers(n_r, l), p, pek).energy
            via_shift = (hb.shifted_eigenvalue(n_r, s) + eff.const_shift) / (
                p.mass_factor * p.r_e**2
            )
            assert direct == pytest.approx(via_shift, rel=1e-12)


def test_energy_reference_values():
    # frozen from the 50-digit closed-form evaluation
    cases = {
        (3, 0, 0): 9.5348480808264389,
        (3, 0, 1): 14.890196035817806,
        (3, 1, 0): 10.736523312779500,
        (2, 0, 0): 9.3812780836304335,
    }
    for (D, l, n_r), expected in cases.items():
        p = ref_params(D=D)
        pek = hb.pekeris_coefficients(p)
        level = hb.energy_level(hb.QuantumNumbers(n_r, l), p, pek)
        assert level.energy == pytest.approx(expected, rel=1e-13)


def test_energy_increases_with_radial_number():
    p = ref_params()
    pek = hb.pekeris_coefficients(p)
    e0 = hb.energy_level(hb.QuantumNumbers(0, 0), p, pek).energy
    e1 = hb.energy_level(hb.QuantumNumbers(1, 0), p, pek).energy
    assert e1 > e0


def test_energy_level_bookkeeping_fields():
    p = ref_params()
    pek = hb.pekeris_coefficients(p)
    level = hb.energy_level(hb.QuantumNumbers(1, 1), p, pek)
    assert level.N_r == pytest.approx(1 + level.delta_l + 0.5)
    assert level.N_r > 0 and level.delta_l >= 0.5
    assert level.N_r**2 <= level.lambda_l
    assert level.method == "closed-form"


def test_unbound_level_rejected():
    p = ref_params()
    pek = hb.pekeris_coefficients(p)
    count = hb.count_bound_states(0, p, pek)
    with pytest.raises(UnboundLevelError):
        hb.energy_level(hb.QuantumNumbers(count, 0), p, pek)


def test_validity_gate_and_force():
    p = ref_params(q=0.170066)
    pek = hb.pekeris_coefficients(p)
    with pytest.raises(ValidityError):
        hb.energy_level(hb.QuantumNumbers(0, 0), p, pek)
    with pytest.warns(ValidityWarning):
        level = hb.energy_level(hb.QuantumNumbers(0, 0), p, pek, force=True)
    assert math.isfinite(level.energy)


def test_delta_radicand_error_when_negative():
    # D = 2, l = 0 has an attractive centrifugal factor; at small alpha the
    # replacement coefficient term dominates and pushes the radicand negative
    p = ref_params(D=2, q=0.95, V0=0.01, b_h=0.05, r_e=1.0)
    pek = hb.pekeris_coefficients(p)
    with pytest.raises(NoRealSolutionError):
        hb.delta_lambda(p, 0, pek)


# ---------------------------------------------------------------------------
# bound-state counting


def test_count_reference_cases():
    p = ref_params()
    pek = hb.pekeris_coefficients(p)
    assert hb.count_bound_states(0, p, pek) == 2
    assert hb.count_bound_states(1, p, pek) == 2
    assert hb.count_bound_states(2, p, pek) == 1


def test_no_bound_states_near_step_limit():
    p = ref_params(q=0.999)
    pek = hb.pekeris_coefficients(p)
    assert hb.count_bound_states(0, p, pek) == 0


def test_count_zero_when_lambda_below_quarter():
    p = ref_params(q=0.999)
    pek = hb.pekeris_coefficients(p)
    _, lam = hb.delta_lambda(p, 0, pek)
    assert lam < 0.25
    assert hb.count_bound_states(0, p, pek) == 0


def test_count_matches_admissibility():
    # the ground state exists exactly when A + B > 0
    for q in (0.25, 0.5, 0.8, 0.95, 0.999):
        p = ref_params(q=q)
        pek = hb.pekeris_coefficients(p)
        eff = hb.effective_coefficients(p, 0, pek)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", ValidityWarning)
            s = hb.superpotential_params(eff)
        assert (hb.count_bound_states(0, p, pek) > 0) == s.admissible
