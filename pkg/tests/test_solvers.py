"""Tests for the pseudo-spectral time-domain solvers.

Eigenmode oracles: exp(-t) for the heat case, cos(t) for the wave case,
and the one-parameter Mittag-Leffler function (high-precision series via
mpmath) for fractional temporal order.  Damped-wave modal decay rates
come from the exact quadratic r**2/c0**2 + gamma*r + k**2 = 0.
"""

import math

import mpmath
import numpy as np
import pytest

from fracwave import (
    FdweParams,
    Field,
    Grid1D,
    Medium,
    PointSource,
    SolverConfig,
    solve_fdwe,
    solve_fractional_burgers,
    solve_lossy_wave,
    solve_telegrapher,
    solve_thermoviscous,
)
from fracwave.errors import ConfigurationError, DomainError, InstabilityError

TWO_PI = 2.0 * math.pi


def mode_amp(field, mode):
    return 2.0 * abs(np.fft.rfft(field.values)[mode]) / field.grid.n


def mittag_leffler(z, beta):
    with mpmath.workdps(50):
        return float(mpmath.fsum(
            mpmath.mpf(z) ** n / mpmath.gamma(beta * n + 1) for n in range(200)
        ))


def traveling_mode(grid, k, decay_rate, freq):
    """Initial (p0, v0) putting mode k on a single complex root r = -decay + i*freq."""
    p0 = Field(grid, np.sin(k * grid.x))
    v0 = Field(grid, -decay_rate * np.sin(k * grid.x) + freq * np.cos(k * grid.x))
    return p0, v0


class TestSolverConfig:
    def test_rejects_bad_dt(self):
        with pytest.raises(DomainError):
            SolverConfig(dt=0.0, steps=10)

    def test_rejects_bad_steps(self):
        with pytest.raises(DomainError):
            SolverConfig(dt=0.1, steps=0)

    def test_rejects_bad_cadence(self):
        with pytest.raises(DomainError):
            SolverConfig(dt=0.1, steps=10, snapshot_every=11)


class TestPointSource:
    def test_ramp_starts_at_zero(self):
        src = PointSource(position=0.0, omega=2.0)
        assert src.time_signal(0.0) == 0.0

    def test_full_amplitude_after_ramp(self):
        src = PointSource(position=0.0, omega=2.0, ramp_cycles=3.0)
        t = 3.5 * TWO_PI / 2.0  # past the ramp
        assert src.time_signal(t) == pytest.approx(math.sin(2.0 * t))

    def test_profile_peaks_at_position(self):
        g = Grid1D(64, 10.0)
        src = PointSource(position=2.5, omega=1.0)
        profile = src.spatial_profile(g)
        assert g.x[np.argmax(profile)] == pytest.approx(2.5)

    def test_rejects_nonpositive_omega(self):
        with pytest.raises(DomainError):
            PointSource(position=0.0, omega=0.0)


class TestFdweSolver:
    def test_heat_eigenmode(self):
        g = Grid1D(16, TWO_PI)
        cfg = SolverConfig(dt=1e-3, steps=1000, snapshot_every=1000)
        traj = solve_fdwe(Field.from_function(g, np.sin), None, FdweParams(2.0, 1.0, 1.0), cfg)
        assert mode_amp(traj.snapshots[-1][1], 1) == pytest.approx(math.exp(-1.0), abs=1e-3)

    def test_heat_first_order_in_dt(self):
        g = Grid1D(16, TWO_PI)
        errs = []
        for dt in (2e-3, 1e-3):
            cfg = SolverConfig(dt=dt, steps=round(1.0 / dt), snapshot_every=round(1.0 / dt))
            traj = solve_fdwe(Field.from_function(g, np.sin), None, FdweParams(2.0, 1.0, 1.0), cfg)
            errs.append(abs(mode_amp(traj.snapshots[-1][1], 1) - math.exp(-1.0)))
        assert errs[0] / errs[1] == pytest.approx(2.0, rel=0.2)

    def test_wave_eigenmode(self):
        g = Grid1D(16, TWO_PI)
        dt = 1e-3
        steps = round(TWO_PI / dt)
        cfg = SolverConfig(dt=dt, steps=steps, snapshot_every=steps)
        u0 = Field.from_function(g, np.sin)
        traj = solve_fdwe(u0, Field.zeros(g), FdweParams(2.0, 2.0, 1.0), cfg)
        t_end, final = traj.snapshots[-1]
        c1 = np.fft.rfft(final.values)[1] / np.fft.rfft(u0.values)[1]
        assert abs(c1.real - math.cos(t_end)) < 5e-3

    @pytest.mark.parametrize("t_check", [0.25, 0.5, 1.0])
    def test_fractional_order_mittag_leffler(self, t_check):
        g = Grid1D(16, TWO_PI)
        dt = 1e-3
        cfg = SolverConfig(dt=dt, steps=round(t_check / dt), snapshot_every=round(t_check / dt))
        traj = solve_fdwe(Field.from_function(g, np.sin), None, FdweParams(2.0, 0.5, 1.0), cfg)
        exact = mittag_leffler(-math.sqrt(t_check), 0.5)
        assert mode_amp(traj.snapshots[-1][1], 1) == pytest.approx(exact, abs=1e-2)

    def test_subdiffusive_amplitude_monotone(self):
        # for beta <= 1 the modal relaxation is completely monotone
        g = Grid1D(16, TWO_PI)
        cfg = SolverConfig(dt=5e-3, steps=400, snapshot_every=20)
        traj = solve_fdwe(Field.from_function(g, np.sin), None, FdweParams(2.0, 0.7, 1.0), cfg)
        amps = [mode_amp(f, 1) for _, f in traj.snapshots]
        assert all(b < a for a, b in zip(amps, amps[1:]))

    def test_snapshot_cadence(self):
        g = Grid1D(16, TWO_PI)
        cfg = SolverConfig(dt=0.01, steps=25, snapshot_every=10)
        traj = solve_fdwe(Field.from_function(g, np.sin), None, FdweParams(2.0, 1.0, 1.0), cfg)
        np.testing.assert_allclose(traj.times, [0.0, 0.1, 0.2])

    def test_requires_velocity_above_order_one(self):
        g = Grid1D(16, TWO_PI)
        cfg = SolverConfig(dt=0.01, steps=10)
        with pytest.raises(DomainError):
            solve_fdwe(Field.from_function(g, np.sin), None, FdweParams(2.0, 1.5, 1.0), cfg)

    def test_rejects_velocity_at_or_below_order_one(self):
        g = Grid1D(16, TWO_PI)
        cfg = SolverConfig(dt=0.01, steps=10)
        with pytest.raises(DomainError):
            solve_fdwe(Field.from_function(g, np.sin), Field.zeros(g), FdweParams(2.0, 1.0, 1.0), cfg)


class TestLossyWaveSolver:
    def test_cfl_guard(self):
        g = Grid1D(64, TWO_PI)
        medium = Medium("tv", 1.0, 0.01, 1.0, 2.0)
        cfg = SolverConfig(dt=g.dx, steps=10)  # dt > 0.5*dx/c0
        with pytest.raises(ConfigurationError):
            solve_lossy_wave(Field.zeros(g), Field.zeros(g), medium, cfg)

    def test_rejects_reaction_regime(self):
        g = Grid1D(64, TWO_PI)
        medium = Medium("hi", 1.0, 0.01, 2.5, 0.3)
        cfg = SolverConfig(dt=0.01, steps=10)
        with pytest.raises(DomainError):
            solve_lossy_wave(Field.zeros(g), Field.zeros(g), medium, cfg)

    def test_lossless_traveling_amplitude_preserved(self):
        g = Grid1D(64, TWO_PI)
        medium = Medium("ref", 1.0, 0.0, 1.0, 2.0)
        p0, v0 = traveling_mode(g, 1, 0.0, 1.0)
        steps = round(10 * TWO_PI / 0.01)
        cfg = SolverConfig(dt=0.01, steps=steps, snapshot_every=steps // 10)
        traj = solve_lossy_wave(p0, v0, medium, cfg)
        amps = [mode_amp(f, 1) for _, f in traj.snapshots]
        assert max(abs(a - amps[0]) for a in amps) < 1e-3 * amps[0]

    def test_telegrapher_decay_is_k_independent(self):
        # damped wave: modal decay rate gamma*c0**2/2 for every mode
        g = Grid1D(64, TWO_PI)
        gamma = 0.2
        rates = []
        for k in (4, 8):
            freq = math.sqrt(k**2 - gamma**2 / 4.0)
            p0, v0 = traveling_mode(g, k, gamma / 2.0, freq)
            cfg = SolverConfig(dt=0.01, steps=200, snapshot_every=200)
            traj = solve_telegrapher(p0, v0, 1.0, gamma, cfg)
            t_end = traj.snapshots[-1][0]
            rates.append(-math.log(mode_amp(traj.snapshots[-1][1], k) / mode_amp(p0, k)) / t_end)
        assert rates[0] == pytest.approx(rates[1], rel=0.02)
        assert rates[0] == pytest.approx(gamma / 2.0, rel=0.02)

    def test_thermoviscous_decay_scales_with_k_squared(self):
        g = Grid1D(64, TWO_PI)
        gamma = 0.05
        rates = []
        for k in (1, 2):
            rate = gamma * k**2 / 2.0
            freq = k * math.sqrt(max(1.0 - (gamma * k / 2.0) ** 2, 0.0))
            p0, v0 = traveling_mode(g, k, rate, freq)
            cfg = SolverConfig(dt=0.01, steps=400, snapshot_every=400)
            traj = solve_thermoviscous(p0, v0, 1.0, gamma, cfg)
            t_end = traj.snapshots[-1][0]
            rates.append(-math.log(mode_amp(traj.snapshots[-1][1], k) / mode_amp(p0, k)) / t_end)
        assert rates[1] / rates[0] == pytest.approx(4.0, rel=0.05)

    def test_fractional_loss_decays_overall(self):
        g = Grid1D(64, TWO_PI)
        medium = Medium("frac", 1.0, 0.05, 1.5, 1.2)
        p0, v0 = traveling_mode(g, 3, 0.0, 3.0)
        cfg = SolverConfig(dt=0.01, steps=600, snapshot_every=60)
        traj = solve_lossy_wave(p0, v0, medium, cfg)
        norms = [f.l2_norm() for _, f in traj.snapshots]
        assert norms[-1] < 0.9 * norms[0]
        assert max(norms) <= 1.01 * norms[0]

    def test_wrappers_match_generic_solver_exactly(self):
        g = Grid1D(64, TWO_PI)
        p0, v0 = traveling_mode(g, 2, 0.0, 2.0)
        cfg = SolverConfig(dt=0.01, steps=50, snapshot_every=50)
        direct = solve_lossy_wave(p0, v0, Medium("x", 1.0, 0.1, 1.0, 0.0), cfg)
        wrapped = solve_telegrapher(p0, v0, 1.0, 0.1, cfg)
        np.testing.assert_array_equal(direct.value_matrix(), wrapped.value_matrix())
        direct = solve_lossy_wave(p0, v0, Medium("x", 1.0, 0.1, 1.0, 2.0), cfg)
        wrapped = solve_thermoviscous(p0, v0, 1.0, 0.1, cfg)
        np.testing.assert_array_equal(direct.value_matrix(), wrapped.value_matrix())

    def test_overdamped_telegrapher_diffusion_limit(self):
        # strong damping: the slow branch decays like exp(-t/gamma)
        g = Grid1D(16, TWO_PI)
        gamma = 20.0
        k = 1
        r_slow = 0.5 * (-gamma + math.sqrt(gamma**2 - 4.0 * k**2))
        p0 = Field.from_function(g, np.sin)
        v0 = Field(g, r_slow * p0.values)
        cfg = SolverConfig(dt=1e-3, steps=5000, snapshot_every=5000)
        traj = solve_telegrapher(p0, v0, 1.0, gamma, cfg)
        t_end = traj.snapshots[-1][0]
        expected = math.exp(r_slow * t_end)
        assert mode_amp(traj.snapshots[-1][1], 1) == pytest.approx(expected, rel=5e-3)

    def test_source_injects_wave_at_drive_frequency(self):
        g = Grid1D(256, 100.0)
        medium = Medium("ref", 1.0, 0.0, 1.0, 2.0)
        cfg = SolverConfig(dt=0.05, steps=800, snapshot_every=800)
        src = PointSource(position=0.0, omega=2.0)
        traj = solve_lossy_wave(Field.zeros(g), Field.zeros(g), medium, cfg, source=src)
        final = traj.snapshots[-1][1]
        assert np.max(np.abs(final.values)) > 0.1


class TestBurgersSolver:
    def params(self, beta=1.0, lam=2.0, kappa=0.1):
        return FdweParams(lam=lam, beta=beta, kappa=kappa)

    def test_zero_initial_condition_stays_zero(self):
        g = Grid1D(64, TWO_PI)
        cfg = SolverConfig(dt=0.01, steps=50, snapshot_every=50)
        traj = solve_fractional_burgers(Field.zeros(g), self.params(), cfg)
        assert np.all(traj.snapshots[-1][1].values == 0.0)

    def test_small_amplitude_matches_linear_heat(self):
        # nonlinear correction enters at O(amplitude**2)
        g = Grid1D(64, TWO_PI)
        amp = 0.1
        u0 = Field(g, amp * np.sin(g.x))
        cfg = SolverConfig(dt=1e-3, steps=1000, snapshot_every=1000)
        traj = solve_fractional_burgers(u0, self.params(kappa=0.1), cfg)
        linear = amp * math.exp(-0.1) * np.sin(g.x)
        assert np.max(np.abs(traj.snapshots[-1][1].values - linear)) < amp**2

    def test_second_harmonic_generated(self):
        g = Grid1D(64, TWO_PI)
        u0 = Field(g, 0.1 * np.sin(g.x))
        cfg = SolverConfig(dt=1e-2, steps=300, snapshot_every=30)
        traj = solve_fractional_burgers(u0, self.params(kappa=0.1), cfg)
        h2 = [mode_amp(f, 2) for _, f in traj.snapshots]
        assert h2[0] == pytest.approx(0.0, abs=1e-14)
        assert max(h2) > 10.0 * max(h2[0], 1e-14)

    def test_self_convergence_in_dt(self):
        g = Grid1D(64, TWO_PI)
        u0 = Field(g, 0.5 * np.sin(g.x))
        finals = []
        for dt in (1e-2, 1e-3):
            cfg = SolverConfig(dt=dt, steps=round(1.0 / dt), snapshot_every=round(1.0 / dt))
            traj = solve_fractional_burgers(u0, self.params(kappa=0.2), cfg)
            finals.append(traj.snapshots[-1][1].values)
        gap = np.max(np.abs(finals[0] - finals[1])) / np.max(np.abs(finals[1]))
        assert gap < 1e-2

    def test_fractional_temporal_order_runs_stably(self):
        g = Grid1D(64, TWO_PI)
        u0 = Field(g, 0.3 * np.sin(g.x))
        cfg = SolverConfig(dt=5e-3, steps=200, snapshot_every=200)
        traj = solve_fractional_burgers(u0, FdweParams(1.4, 0.5, 0.2), cfg)
        assert np.all(np.isfinite(traj.snapshots[-1][1].values))

    def test_rejects_order_above_one(self):
        g = Grid1D(64, TWO_PI)
        cfg = SolverConfig(dt=0.01, steps=10)
        with pytest.raises(DomainError):
            solve_fractional_burgers(Field.zeros(g), FdweParams(2.0, 1.5, 0.1), cfg)

    def test_rejects_order_bound_violation(self):
        g = Grid1D(64, TWO_PI)
        cfg = SolverConfig(dt=0.01, steps=10)
        with pytest.raises(DomainError):
            solve_fractional_burgers(Field.zeros(g), FdweParams(2.0, 0.5, 0.1), cfg)

    def test_blowup_raises_instability_error(self):
        g = Grid1D(64, TWO_PI)
        u0 = Field(g, 50.0 * np.sin(g.x))
        cfg = SolverConfig(dt=0.5, steps=400, snapshot_every=1)
        with pytest.raises(InstabilityError) as exc_info, np.errstate(all="ignore"):
            solve_fractional_burgers(u0, FdweParams(1.0, 1.0, 1e-4), cfg)
        assert exc_info.value.step >= 1
