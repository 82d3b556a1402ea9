import numpy as np
import pytest

import hs2sphere.funcspace as fs
from hs2sphere.errors import StepBlowupError
from hs2sphere.funcspace import PeriodicFunction
from hs2sphere.geodesics import InitialData, blowup_time, exact_solution
from hs2sphere.integrator import (
    IntegratorConfig,
    compare_states,
    integrate,
    rhs,
    rhs_restricted,
)

TWO_PI = 2.0 * np.pi


def stationary(grid):
    return InitialData(
        PeriodicFunction.zeros(grid), PeriodicFunction.constant(grid, 2.0)
    )


def smooth_global(grid):
    return InitialData.from_u0x(
        grid, lambda x: np.sin(TWO_PI * x), lambda x: 1.5 + np.cos(TWO_PI * x)
    )


def test_rhs_stationary_point(grid):
    d = stationary(grid)
    ut, rhot = rhs(d.u0, d.rho0)
    assert ut.max_abs() < 1e-14
    assert rhot.max_abs() < 1e-14


def test_rhs_symbolic_case(grid):
    # u = 0, rho = cos -> u_t = sin(4 pi x)/(16 pi), rho_t = 0
    u = PeriodicFunction.zeros(grid)
    rho = PeriodicFunction.from_callable(grid, lambda x: np.cos(TWO_PI * x))
    ut, rhot = rhs(u, rho)
    expected = np.sin(2.0 * TWO_PI * grid.x) / (16.0 * np.pi)
    assert np.max(np.abs(ut.values - expected)) < 1e-14
    assert rhot.max_abs() < 1e-14


def test_rhs_matches_exact_time_derivative(grid):
    d = smooth_global(grid)
    t, h = 0.3, 1e-5
    up, rp = exact_solution(d, t + h)
    um, rm = exact_solution(d, t - h)
    u, rho = exact_solution(d, t)
    ut, rhot = rhs(u, rho, dealias=False)
    ut_fd = (up.values - um.values) / (2.0 * h)
    rhot_fd = (rp.values - rm.values) / (2.0 * h)
    assert np.max(np.abs(ut.values - ut_fd)) < 1e-7
    assert np.max(np.abs(rhot.values - rhot_fd)) < 1e-7


def test_rhs_preserves_u0_pin(grid, rng):
    w = PeriodicFunction(grid, np.sin(TWO_PI * grid.x) * 0.3)
    u = fs.antiderivative_from_zero(fs.mean_projection(w))
    rho = PeriodicFunction.from_callable(grid, lambda x: 1.0 + 0.2 * np.cos(TWO_PI * x))
    ut, _ = rhs(u, rho)
    assert abs(ut.values[0]) < 1e-15


def test_rhs_restricted_properties(grid, rng):
    u = fs.antiderivative_from_zero(
        PeriodicFunction(grid, 0.4 * np.sin(TWO_PI * grid.x))
    )
    # constant rho: projection kills it, pure transport side remains
    rho_const = PeriodicFunction.constant(grid, 3.0)
    ut_c, rhot_c = rhs_restricted(u, rho_const)
    ux = fs.derivative(u)
    hs_ut = (
        -u.values * ux.values
        - 0.5 * fs.inverse_A(fs.derivative(ux * ux)).values
    )
    assert np.max(np.abs(ut_c.values - hs_ut)) < 1e-12
    assert rhot_c.max_abs() < 1e-14

    rho = PeriodicFunction.from_callable(grid, lambda x: np.cos(TWO_PI * x))
    _, rhot = rhs_restricted(u, rho)
    assert abs(fs.integrate(rhot)) < 1e-15
    # zero-mean rho: restricted and plain right sides agree
    ut_a, rhot_a = rhs(u, rho)
    ut_b, rhot_b = rhs_restricted(u, rho)
    assert np.max(np.abs(ut_a.values - ut_b.values)) < 1e-13
    assert np.max(np.abs(rhot_a.values - rhot_b.values)) < 1e-13


def test_stationary_state_constant(grid):
    cfg = IntegratorConfig(dt=1e-3, t_end=1.0, record_every=200)
    traj = integrate(stationary(grid), cfg)
    u, rho = traj.state(-1)
    assert u.max_abs() < 1e-12
    assert np.max(np.abs(rho.values - 2.0)) < 1e-12


def test_matches_exact_solution(grid):
    d = smooth_global(grid)
    cfg = IntegratorConfig(dt=5e-4, t_end=1.0, dealias=False, record_every=500)
    traj = integrate(d, cfg)
    ue, rhoe = exact_solution(d, 1.0)
    un, rhon = traj.state(-1)
    eu, er = compare_states(un, rhon, ue, rhoe)
    assert eu < 1e-6
    assert er < 1e-6


def test_energy_and_mean_conservation(grid):
    d = smooth_global(grid)
    cfg = IntegratorConfig(dt=5e-4, t_end=1.0, record_every=2000)
    traj = integrate(d, cfg)
    drift = np.max(np.abs(traj.energy - traj.energy[0])) / traj.energy[0]
    assert drift < 1e-8
    assert np.max(np.abs(traj.rho_mean - traj.rho_mean[0])) < 1e-10


def test_fourth_order_convergence(grid):
    d = smooth_global(grid)
    ue, rhoe = exact_solution(d, 0.25)

    def err(dt):
        cfg = IntegratorConfig(dt=dt, t_end=0.25, record_every=10**9)
        traj = integrate(d, cfg)
        u, rho = traj.state(-1)
        eu, er = compare_states(u, rho, ue, rhoe)
        return max(eu, er)

    ratio = err(1e-2) / err(5e-3)
    assert 12.0 < ratio < 20.0


def test_restricted_flow_zero_mean_and_accuracy(grid):
    d = InitialData.from_u0x(
        grid, lambda x: np.sin(TWO_PI * x), lambda x: np.cos(TWO_PI * x)
    )
    cfg = IntegratorConfig(dt=1e-3, t_end=0.3, dealias=False, record_every=300)
    traj = integrate(d, cfg, restricted=True)
    assert np.max(np.abs(traj.rho_mean)) < 1e-14
    u, rho = traj.state(-1)
    ue, rhoe = exact_solution(d, 0.3)
    eu, er = compare_states(u, rho, ue, rhoe)
    assert max(eu, er) < 1e-9


def test_halt_on_gradient_limit(grid):
    # low threshold exercises the halt machinery on a blow-up run
    d = InitialData.from_u0x(
        grid, lambda x: np.cos(TWO_PI * x), lambda x: np.zeros_like(x)
    )
    T = blowup_time(d).T
    cfg = IntegratorConfig(dt=5e-4, t_end=2.0, record_every=100)
    with pytest.raises(StepBlowupError) as exc_info:
        integrate(d, cfg, ux_limit=5.0)
    err = exc_info.value
    assert err.halt_time is not None and 0.0 < err.halt_time < T
    assert err.trajectory is not None
    assert err.trajectory.times[-1] <= err.halt_time + 1e-12


def test_trajectory_csv(grid, tmp_path):
    cfg = IntegratorConfig(dt=1e-2, t_end=0.1, record_every=5)
    traj = integrate(stationary(grid), cfg)
    path = tmp_path / "traj.csv"
    traj.to_csv(path)
    lines = path.read_text().strip().splitlines()
    assert lines[0] == "t,x,u,rho"
    assert len(lines) == 1 + len(traj.times) * grid.n
