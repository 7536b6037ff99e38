import math

import numpy as np
import pytest

from epicycle import oracle
from epicycle.errors import InvalidConfig, SingularRadius, WindowMismatch
from epicycle.model import ScaledConfig
from epicycle.orbit import solve
from epicycle.oracle import (
    IntegratorSettings,
    Trajectory,
    compare,
    integrate_full,
    integrate_linearized,
    richardson_ratio,
    sample_analytic,
)
from linear_oracle import exact_linearized_positions

TAU0 = 2 * math.pi
BENCHMARK = (0.5, 1.5, -0.5, 2.5, -1.0, 3.0)


def max_dist(a, b):
    return float(np.max(np.linalg.norm(a - b, axis=-1)))


def test_settings_invariants():
    with pytest.raises(InvalidConfig):
        IntegratorSettings(0.0, 1.0)
    with pytest.raises(InvalidConfig):
        IntegratorSettings(2e-2, 1.0)
    with pytest.raises(InvalidConfig):
        IntegratorSettings(1e-3, -1.0)
    with pytest.raises(InvalidConfig):
        IntegratorSettings(1e-3, 1.0, method="euler")


def test_steps_land_on_t_end():
    s = IntegratorSettings(1e-3, TAU0)
    assert s.step <= 1e-3
    assert s.n_steps * s.step == pytest.approx(TAU0, rel=1e-15)
    traj = integrate_full(ScaledConfig(3.0, 0.0), IntegratorSettings(1e-2, 1.0))
    assert traj.times[-1] == pytest.approx(1.0, rel=1e-15)
    assert len(traj) == 101


def test_trajectory_invariants():
    with pytest.raises(ValueError):
        Trajectory(np.array([0.0, 0.0]), np.zeros((2, 2)), np.zeros((2, 2)))
    with pytest.raises(ValueError):
        Trajectory(np.array([0.0, 1.0]), np.zeros((3, 2)), np.zeros((2, 2)))
    with pytest.raises(ValueError):
        Trajectory(np.array([0.0]), np.array([[np.nan, 0.0]]), np.zeros((1, 2)))


def test_unforced_orbit_closes():
    traj = integrate_full(ScaledConfig(3.0, 0.0, 0.4), IntegratorSettings(1e-3, TAU0))
    assert max_dist(traj.positions[-1], traj.positions[0]) < 1e-10


def test_unforced_drift_is_fourth_order():
    def drift(dt):
        traj = integrate_full(ScaledConfig(3.0, 0.0), IntegratorSettings(dt, TAU0))
        return max_dist(traj.positions[-1], np.array([1.0, 0.0]))

    assert 14 <= drift(1e-2) / drift(5e-3) <= 18


def test_unforced_radius_is_conserved():
    traj = integrate_full(ScaledConfig(3.0, 0.0), IntegratorSettings(1e-3, 20 * math.pi))
    assert np.max(np.abs(np.linalg.norm(traj.positions, axis=1) - 1.0)) < 1e-9


def test_singular_radius_guard(monkeypatch):
    monkeypatch.setattr(oracle, "SINGULAR_RADIUS", 2.0)
    with pytest.raises(SingularRadius, match="near-resonant"):
        integrate_full(ScaledConfig(3.0, 1e-3), IntegratorSettings(1e-2, 1.0))


def test_linearized_without_forcing_is_the_circle():
    traj = integrate_linearized(ScaledConfig(3.0, 0.0, 0.7), IntegratorSettings(1e-2, 5.0))
    t = traj.times + 0.7
    np.testing.assert_array_equal(traj.positions, np.stack([np.cos(t), np.sin(t)], -1))


@pytest.mark.parametrize("alpha", BENCHMARK)
def test_linearized_integrator_matches_exact_linear_solution(alpha):
    cfg = ScaledConfig(alpha, 1e-3, 0.3, 0.7)
    traj = integrate_linearized(cfg, IntegratorSettings(1e-3, 4 * math.pi))
    assert max_dist(traj.positions, exact_linearized_positions(solve(cfg), traj.times)) < 1e-11


def test_full_minus_exact_linear_solution_is_second_order():
    eps = np.array([1e-4, 2e-4, 4e-4])
    devs = []
    for e in eps:
        cfg = ScaledConfig(3.0, e)
        traj = integrate_full(cfg, IntegratorSettings(1e-3, TAU0))
        devs.append(max_dist(traj.positions, exact_linearized_positions(solve(cfg), traj.times)))
    slope = np.polyfit(np.log(eps), np.log(devs), 1)[0]
    assert slope == pytest.approx(2.0, abs=0.05)


@pytest.mark.parametrize("integrate", [integrate_full, integrate_linearized])
def test_richardson_ratio_in_asymptotic_regime(integrate):
    ratio = richardson_ratio(integrate, ScaledConfig(3.0, 1e-3), 4e-3, 4 * math.pi)
    assert 14 <= ratio <= 18


def test_compare_identical_trajectories_is_zero():
    sol = solve(ScaledConfig(-0.5, 1e-3, 0.2, 0.1))
    report = compare(sol, sample_analytic(sol, np.linspace(0, 10, 200)))
    assert report.max_dev == 0.0 and report.rms_dev == 0.0
    assert report.dev_over_eps == 0.0 and report.dev_over_eps2 == 0.0


def test_compare_without_forcing_has_no_normalized_error():
    cfg = ScaledConfig(3.0, 0.0)
    report = compare(solve(cfg), integrate_full(cfg, IntegratorSettings(1e-3, TAU0)))
    assert report.max_dev < 1e-9
    assert report.dev_over_eps is None and report.dev_over_eps2 is None


def test_compare_window():
    sol = solve(ScaledConfig(3.0, 1e-3))
    traj = sample_analytic(sol, np.linspace(0, 10, 101))
    report = compare(sol, traj, window=(2.0, 5.0))
    assert report.n_samples == 31
    with pytest.raises(WindowMismatch):
        compare(sol, traj, window=(5.0, 11.0))
    with pytest.raises(WindowMismatch):
        compare(sol, sample_analytic(sol, np.linspace(-1, 1, 5)))
    with pytest.raises(WindowMismatch):
        compare(sol, sample_analytic(sol, np.array([])))


# The three checks below restate the stated targets for the analytic orbit
# against the integrators. They fail: the five-harmonic orbit omits the
# zero-frequency free mode (see the exact-solution tests above), so its
# distance from either integrator grows linearly in eps and in time.


def test_linearized_integrator_matches_analytic_orbit():
    cfg = ScaledConfig(3.0, 1e-3)
    report = compare(solve(cfg), integrate_linearized(cfg, IntegratorSettings(1e-3, 4 * math.pi)))
    assert report.max_dev < 1e-8


def test_full_integrator_within_second_order_of_analytic_orbit():
    cfg = ScaledConfig(3.0, 1e-4)
    report = compare(solve(cfg), integrate_full(cfg, IntegratorSettings(1e-3, TAU0)))
    assert report.max_dev <= 5 * cfg.eps**2


def test_doubling_eps_quadruples_full_deviation():
    devs = []
    for eps in (1e-4, 2e-4):
        cfg = ScaledConfig(3.0, eps)
        devs.append(compare(solve(cfg), integrate_full(cfg, IntegratorSettings(1e-3, TAU0))).max_dev)
    assert 3 <= devs[1] / devs[0] <= 5
