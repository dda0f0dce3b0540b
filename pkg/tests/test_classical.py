import math
from fractions import Fraction

import numpy as np
import pytest

from bateman.classical import (
    BatemanParams,
    PhaseState,
    Trajectory,
    eom_residual,
    hamiltonian_consistency,
    hamiltonian_mixed,
    hamiltonian_rotated,
    integrate_eom,
    rotate,
    trajectory_csv,
)


def default_params():
    return BatemanParams.from_omega(1, Fraction(1, 5), 1)


def damped_analytic(params, x0, v0, t):
    """Closed-form solution of m x'' + gamma x' + k x = 0 (underdamped)."""
    g = float(params.gamma)
    m = float(params.m)
    w = params.omega
    c2 = (v0 + g * x0 / (2 * m)) / w
    return np.exp(-g * t / (2 * m)) * (x0 * np.cos(w * t) + c2 * np.sin(w * t))


def amplified_analytic(params, y0, v0, t):
    g = float(params.gamma)
    m = float(params.m)
    w = params.omega
    c2 = (v0 - g * y0 / (2 * m)) / w
    return np.exp(g * t / (2 * m)) * (y0 * np.cos(w * t) + c2 * np.sin(w * t))


# ---------------------------------------------------------------------------
# parameters
# ---------------------------------------------------------------------------

def test_params_validation():
    with pytest.raises(ValueError):
        BatemanParams(0, 1, 1)
    with pytest.raises(ValueError):
        BatemanParams(1, -1, 1)
    with pytest.raises(ValueError):
        BatemanParams(1, 1, 0)
    with pytest.raises(ValueError):
        BatemanParams(1, 10, 1)  # overdamped


def test_params_omega_derivation():
    p = BatemanParams.from_omega(1, Fraction(1, 5), 1)
    assert p.k_spring == Fraction(101, 100)
    assert p.omega2 == 1
    assert p.rational_omega == 1
    q = BatemanParams(1, 0, 2)
    assert q.rational_omega is None
    assert math.isclose(q.omega, math.sqrt(2))


def test_params_omega2_never_stale():
    p = BatemanParams(2, Fraction(1, 2), 3)
    assert p.omega2 == Fraction(3, 2) - Fraction(1, 64)


# ---------------------------------------------------------------------------
# momenta and rotation bookkeeping
# ---------------------------------------------------------------------------

def test_velocity_round_trip():
    p = default_params()
    state = PhaseState.from_velocities(p, 0.3, -0.7, 1.1, 0.25)
    xdot, ydot = state.velocities(p)
    assert math.isclose(xdot, -0.7) and math.isclose(ydot, 0.25)


def test_momenta_couple_to_the_other_coordinate():
    p = default_params()
    state = PhaseState.from_velocities(p, x=1.0, xdot=0.0, y=0.0, ydot=0.0)
    # p_y = m x' + gamma x / 2 = 0.1; p_x = m y' - gamma y / 2 = 0
    assert math.isclose(state.py, 0.1)
    assert state.px == 0.0


def test_rotation_is_involutive():
    s = PhaseState(0.2, -1.3, 0.7, 0.05)
    twice = rotate(rotate(s))
    for a, b in zip(s.as_array(), twice.as_array()):
        assert math.isclose(a, b, abs_tol=1e-15)


def test_hamiltonian_forms_agree_pointwise():
    p = default_params()
    for vals in ((1.0, 0.5, -0.2, 0.3), (0.0, 2.0, 1.0, -1.0), (-0.4, 0.1, 0.0, 0.9)):
        s = PhaseState(*vals)
        assert abs(hamiltonian_mixed(s, p) - hamiltonian_rotated(rotate(s), p)) < 1e-12


def test_gamma_zero_energy_is_oscillator_difference():
    p = BatemanParams.from_omega(1, 0, 1)
    s = PhaseState(*np.random.default_rng(0).normal(size=4))
    rs = rotate(s)
    e1 = rs.px**2 / 2 + rs.x**2 / 2
    e2 = rs.py**2 / 2 + rs.y**2 / 2
    assert math.isclose(hamiltonian_mixed(s, p), e1 - e2, rel_tol=1e-12, abs_tol=1e-12)


# ---------------------------------------------------------------------------
# integration
# ---------------------------------------------------------------------------

def test_simple_harmonic_limit():
    p = BatemanParams.from_omega(1, 0, 1)
    init = PhaseState.from_velocities(p, x=1.0, xdot=0.0, y=0.0, ydot=0.0)
    traj = integrate_eom(p, init, t_end=10.0, dt=1e-3)
    err = np.max(np.abs(traj.states[:, 0] - np.cos(traj.times)))
    assert err < 1e-6


def test_damped_solution_matches_analytic_envelope():
    p = default_params()
    init = PhaseState.from_velocities(p, x=1.0, xdot=0.0, y=0.5, ydot=0.0)
    traj = integrate_eom(p, init, t_end=10.0, dt=1e-3)
    xa = damped_analytic(p, 1.0, 0.0, traj.times)
    assert np.max(np.abs(traj.states[:, 0] - xa)) < 1e-5


def test_amplified_partner_grows():
    p = default_params()
    init = PhaseState.from_velocities(p, x=1.0, xdot=0.0, y=0.5, ydot=0.0)
    traj = integrate_eom(p, init, t_end=10.0, dt=1e-3)
    ya = amplified_analytic(p, 0.5, 0.0, traj.times)
    assert np.max(np.abs(traj.states[:, 1] - ya)) < 1e-5
    # envelope comparison: growth by e^{gamma t / 2m} over the run
    head = np.max(np.abs(traj.states[:100, 1]))
    tail = np.max(np.abs(traj.states[-100:, 1]))
    assert tail / head > math.exp(0.1 * 10.0) * 0.5


def test_integration_validation():
    p = default_params()
    init = PhaseState(1.0, 0.0, 0.0, 0.0)
    with pytest.raises(ValueError):
        integrate_eom(p, init, t_end=0.0, dt=1e-3)
    with pytest.raises(ValueError):
        integrate_eom(p, init, t_end=1.0, dt=-1e-3)


def test_integration_detects_overflow():
    from bateman.classical import IntegrationError

    # a grossly unstable step makes RK4 blow past the float range; the
    # amplified mode may grow, but non-finite values must raise
    p = BatemanParams.from_omega(1, Fraction(1, 2), 10)
    init = PhaseState(1.0, 1.0, 1.0, 1.0)
    with pytest.raises(IntegrationError):
        integrate_eom(p, init, t_end=1000.0, dt=5.0)


# ---------------------------------------------------------------------------
# residual checks
# ---------------------------------------------------------------------------

def test_eom_residuals_small_on_integrated_trajectory():
    p = default_params()
    init = PhaseState.from_velocities(p, x=1.0, xdot=0.0, y=0.5, ydot=0.0)
    traj = integrate_eom(p, init, t_end=10.0, dt=1e-3)
    res = eom_residual(traj, p)
    assert res.damped < 1e-4
    assert res.amplified < 1e-4


def test_eom_residuals_gamma_zero():
    p = BatemanParams.from_omega(1, 0, 1)
    init = PhaseState.from_velocities(p, x=1.0, xdot=0.0, y=1.0, ydot=0.0)
    traj = integrate_eom(p, init, t_end=10.0, dt=1e-3)
    res = eom_residual(traj, p)
    assert res.damped < 1e-5 and res.amplified < 1e-5


def test_corrupted_trajectory_detected():
    # scale the damped coordinate: the velocity comes from the momenta, so
    # the detector sees the mismatch (amplitude chosen to clear the bar)
    p = default_params()
    init = PhaseState.from_velocities(p, x=10.0, xdot=0.0, y=5.0, ydot=0.0)
    traj = integrate_eom(p, init, t_end=10.0, dt=1e-3)
    bad = traj.states.copy()
    bad[:, 0] *= 1.01
    res = eom_residual(Trajectory(traj.times, bad, p), p)
    assert res.damped > 1e-2


def test_eom_residual_needs_samples():
    p = default_params()
    traj = integrate_eom(p, PhaseState(1, 0, 0, 0), t_end=3e-3, dt=1e-3)
    with pytest.raises(ValueError):
        eom_residual(traj, p)


# ---------------------------------------------------------------------------
# conservation
# ---------------------------------------------------------------------------

def test_energy_forms_agree_along_trajectory():
    p = default_params()
    init = PhaseState.from_velocities(p, x=1.0, xdot=0.0, y=0.5, ydot=0.0)
    traj = integrate_eom(p, init, t_end=10.0, dt=1e-3)
    cons = hamiltonian_consistency(traj, p)
    assert cons.max_form_gap < 1e-10


def test_energy_drift_small_and_fourth_order():
    p = default_params()
    init = PhaseState.from_velocities(p, x=1.0, xdot=0.0, y=0.5, ydot=0.0)
    drift = hamiltonian_consistency(integrate_eom(p, init, 10.0, 1e-3), p).max_drift
    assert drift < 1e-7
    # measure the order in the truncation-dominated regime: at dt = 1e-3 the
    # drift sits at the rounding floor (~1e-15), far below the bound above
    coarse = hamiltonian_consistency(integrate_eom(p, init, 10.0, 4e-3), p).max_drift
    fine = hamiltonian_consistency(integrate_eom(p, init, 10.0, 2e-3), p).max_drift
    ratio = coarse / fine
    assert 8.0 < ratio < 32.0  # 2^4 = 16 up to higher-order contamination


def test_trajectory_csv_columns():
    p = default_params()
    traj = integrate_eom(p, PhaseState(1.0, 0.0, 0.0, 0.1), t_end=0.01, dt=1e-3)
    lines = trajectory_csv(traj).strip().splitlines()
    assert lines[0] == "t,x,y,p_x,p_y,H"
    assert len(lines) == len(traj.times) + 1
    assert len(lines[1].split(",")) == 6
