"""End-to-end verification suite.

Each criterion is a self-contained check with a pinned tolerance; the
CLI ``verify`` command and the acceptance tests both run these.  Quick
mode shrinks grids and step counts and documents the loosened tolerance
in the criterion details.
"""

from __future__ import annotations

import math
import tempfile
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .analysis import fit_power_law, measure_spatial_attenuation
from .core import Field, FdweParams, Grid1D, Medium, check_order_bound, map_lossy_to_fdwe
from .dispersion import dispersion_sweep, solve_wavenumber
from .fracops import apply_fractional_laplacian, fractional_laplacian_symbol, gl_weights
from .media import ClinicalAttenuation, builtin_media, from_si, load_media, to_si
from .solvers import PointSource, SolverConfig, solve_fdwe, solve_lossy_wave

__all__ = ["CriterionResult", "run_all", "CRITERIA"]


@dataclass
class CriterionResult:
    index: int
    name: str
    passed: bool
    details: str
    seconds: float


def _mode_amplitude(field: Field, mode: int) -> float:
    return 2.0 * abs(np.fft.rfft(field.values)[mode]) / field.grid.n


def _mittag_leffler(z: float, beta: float) -> float:
    """Series evaluation of E_beta(z); adequate for moderate |z|."""
    total = 0.0
    for n in range(0, 400):
        try:
            term = z**n / math.gamma(beta * n + 1.0)
        except OverflowError:
            break
        total += term
        if abs(term) < 1e-18 and n > 5:
            break
    return total


def _gamma_weight(order: float, j: int) -> float:
    try:
        return (-1.0) ** j * math.gamma(order + 1.0) / (math.gamma(j + 1.0) * math.gamma(order - j + 1.0))
    except ValueError:
        # pole of Gamma at non-positive integers: binomial vanishes
        return 0.0


def criterion_exponent_identity(quick: bool) -> tuple[bool, str]:
    """Dispersion sweep + log-log fit recovers y = s + eta - 1 to 0.01."""
    pairs = [(0.0, 1.0), (2.0, 1.0), (1.0, 1.0), (1.2, 1.5), (0.5, 1.3)]
    omegas = np.geomspace(1.0, 10.0, 16)
    worst = 0.0
    for s, eta in pairs:
        medium = Medium("sweep", 1.0, 1e-3, eta, s)
        points = dispersion_sweep(medium, omegas)
        fit = fit_power_law([(p.omega, p.alpha) for p in points])
        worst = max(worst, abs(fit.y - (s + eta - 1.0)))
    return worst <= 0.01, f"max |y_fit - (s+eta-1)| = {worst:.2e} (tol 0.01)"


def criterion_telegrapher_plateau(quick: bool) -> tuple[bool, str]:
    """Telegrapher attenuation is frequency-independent over a decade."""
    medium = Medium("telegrapher", 1.0, 0.01, 1.0, 0.0)
    points = dispersion_sweep(medium, np.geomspace(1.0, 10.0, 16))
    alphas = [p.alpha for p in points]
    variation = (max(alphas) - min(alphas)) / min(alphas)
    fit = fit_power_law([(p.omega, p.alpha) for p in points])
    ok = variation < 0.01 and abs(fit.y) <= 0.01
    return ok, f"alpha variation {variation:.2e} (<1%), |y_fit| = {abs(fit.y):.2e} (tol 0.01)"


def criterion_thermoviscous_law(quick: bool) -> tuple[bool, str]:
    """Thermoviscous attenuation follows omega^2; root matches closed form."""
    medium = Medium("thermoviscous", 1.0, 1e-3, 1.0, 2.0)
    points = dispersion_sweep(medium, np.geomspace(1.0, 10.0, 16))
    fit = fit_power_law([(p.omega, p.alpha) for p in points])
    medium2 = Medium("thermoviscous", 1.0, 0.01, 1.0, 2.0)
    worst = 0.0
    for omega in np.geomspace(1.0, 10.0, 16):
        root = solve_wavenumber(omega, medium2).k
        closed = omega / np.sqrt(1.0 + 1j * medium2.gamma * omega)
        worst = max(worst, abs(root - closed) / abs(closed))
    ok = abs(fit.y - 2.0) <= 0.01 and worst <= 1e-10
    return ok, f"|y_fit - 2| = {abs(fit.y - 2.0):.2e} (tol 0.01); closed-form gap {worst:.2e} (tol 1e-10)"


def criterion_bound_classification(quick: bool) -> tuple[bool, str]:
    """Order-bound verdicts reproduce the expected truth table exactly."""
    table = [
        (2.0, 0.1, False, "sub-diffusion"),
        (2.0, 0.5, False, "sub-diffusion"),
        (2.0, 0.9, False, "sub-diffusion"),
        (2.0, 1.5, True, "super-diffusion"),
        (1.5, 1.0, True, "super-diffusion"),
        (0.0, 0.5, True, "other"),
    ]
    failures = []
    for lam, beta, satisfied, regime in table:
        v = check_order_bound(lam, beta)
        if v.satisfied != satisfied or v.regime != regime:
            failures.append(f"({lam},{beta}) -> {v.satisfied},{v.regime}")
    return not failures, "truth table exact" if not failures else "; ".join(failures)


def criterion_fdwe_solver(quick: bool) -> tuple[bool, str]:
    """Heat, wave and Mittag-Leffler eigenmode checks of the FDWE solver."""
    grid = Grid1D(16, 2.0 * math.pi)
    u0 = Field.from_function(grid, np.sin)
    dt = 1e-3 if quick else 1e-4
    tol = 5e-3 if quick else 1e-3

    cfg = SolverConfig(dt=dt, steps=round(1.0 / dt), snapshot_every=round(1.0 / dt))
    traj = solve_fdwe(u0, None, FdweParams(2.0, 1.0, 1.0), cfg)
    heat_err = abs(_mode_amplitude(traj.snapshots[-1][1], 1) - math.exp(-1.0))

    period_steps = round(2.0 * math.pi / dt)
    cfg = SolverConfig(dt=dt, steps=period_steps, snapshot_every=period_steps)
    traj = solve_fdwe(u0, Field.zeros(grid), FdweParams(2.0, 2.0, 1.0), cfg)
    t_end = traj.snapshots[-1][0]
    c1 = np.fft.rfft(traj.snapshots[-1][1].values)[1] / np.fft.rfft(u0.values)[1]
    wave_err = abs(c1.real - math.cos(t_end))

    ml_dt = 2e-3 if quick else 1e-3
    cfg = SolverConfig(dt=ml_dt, steps=round(1.0 / ml_dt), snapshot_every=round(0.25 / ml_dt))
    traj = solve_fdwe(u0, None, FdweParams(2.0, 0.5, 1.0), cfg)
    ml_err = 0.0
    for t, f in traj.snapshots[1:]:
        if any(abs(t - tt) < 1e-9 for tt in (0.25, 0.5, 1.0)):
            exact = _mittag_leffler(-math.sqrt(t), 0.5)
            ml_err = max(ml_err, abs(_mode_amplitude(f, 1) - exact))
    ok = heat_err <= tol and wave_err <= tol and ml_err <= 1e-2
    note = " [quick: dt=1e-3, tol 5e-3]" if quick else ""
    return ok, (
        f"heat err {heat_err:.2e}, wave err {wave_err:.2e} (tol {tol:g}); "
        f"Mittag-Leffler err {ml_err:.2e} (tol 1e-2)" + note
    )


def criterion_simulation_closure(quick: bool) -> tuple[bool, str]:
    """Measured spatial attenuation agrees with the dispersion roots."""
    if quick:
        grid = Grid1D(512, 200.0)
        window = (20.0, 60.0)
        steps, tol = 2500, 0.03
    else:
        grid = Grid1D(1024, 400.0)
        window = (20.0, 120.0)
        steps, tol = 3600, 0.02
    medium = Medium("thermoviscous", 1.0, 0.01, 1.0, 2.0)
    cfg = SolverConfig(dt=0.05, steps=steps, snapshot_every=3)
    traj = solve_lossy_wave(Field.zeros(grid), Field.zeros(grid), medium, cfg,
                            source=PointSource(position=0.0, omega=2.0))
    meas = measure_spatial_attenuation(traj, 2.0, window)
    root = solve_wavenumber(2.0, medium)
    tv_gap = abs(meas.alpha_measured - root.alpha) / root.alpha

    frac = Medium("fractional", 1.0, 1e-3, 1.5, 1.2)
    fgrid = Grid1D(512, 200.0)
    samples = []
    for omega in (3.0, 4.5, 6.0):
        cfg = SolverConfig(dt=0.05, steps=2100, snapshot_every=3)
        traj = solve_lossy_wave(Field.zeros(fgrid), Field.zeros(fgrid), frac, cfg,
                                source=PointSource(position=0.0, omega=omega))
        m = measure_spatial_attenuation(traj, omega, (20.0, 80.0))
        samples.append((omega, m.alpha_measured))
    fit = fit_power_law(samples)
    ok = tv_gap <= tol and abs(fit.y - 1.7) <= 0.05
    note = " [quick: n=512, tol 3%]" if quick else ""
    return ok, (
        f"thermoviscous gap {tv_gap:.2%} (tol {tol:.0%}); "
        f"fractional y_fit = {fit.y:.3f} vs 1.7 (tol 0.05)" + note
    )


def criterion_parabolic_reduction(quick: bool) -> tuple[bool, str]:
    """Reduced diffusion-wave solver matches the full solver's modal decay.

    Uses the overdamped regime (large gamma) with initial data on the
    fast branch; decay rates are fitted over the first decay time, before
    slow-branch contamination matters.
    """
    grid = Grid1D(64, 2.0 * math.pi)
    p0 = Field.from_function(grid, np.sin)
    medium = Medium("overdamped", 1.0, 10.0, 1.0, 2.0)
    params = map_lossy_to_fdwe(medium)
    rate = params.kappa  # mode-1 decay rate of the reduced equation
    v0 = Field(grid, -rate * p0.values)
    dt = 2e-4 if quick else 1e-4
    horizon = 1.0 / rate
    steps = round(horizon / dt)
    cfg = SolverConfig(dt=dt, steps=steps, snapshot_every=steps)
    full = solve_lossy_wave(p0, v0, medium, cfg)
    reduced = solve_fdwe(p0, None, params, cfg)
    t_end = full.snapshots[-1][0]
    rate_full = -math.log(_mode_amplitude(full.snapshots[-1][1], 1) / _mode_amplitude(p0, 1)) / t_end
    rate_red = -math.log(_mode_amplitude(reduced.snapshots[-1][1], 1) / _mode_amplitude(p0, 1)) / t_end
    gap = abs(rate_full - rate_red) / rate_red
    return gap <= 0.05, f"modal decay-rate gap {gap:.2%} (tol 5%)"


def criterion_unit_conversion(quick: bool) -> tuple[bool, str]:
    """Table conversions: hand-computed Water value, exact round trips, CSV load."""
    water = ClinicalAttenuation(0.0022, 2.0)
    si, _ = to_si(water)
    hand = 0.0022 * (math.log(10.0) / 20.0) * 100.0 / (2.0 * math.pi * 1e6) ** 2
    water_gap = abs(si - hand) / hand

    rt_gap = 0.0
    for _, clin in builtin_media():
        if not clin.prefactor_known:
            continue
        a, y = to_si(clin)
        back = from_si(a, y)
        rt_gap = max(rt_gap, abs(back.alpha0_db - clin.alpha0_db) / clin.alpha0_db)

    rows = [(n, c) for n, c in builtin_media() if c.prefactor_known]
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "media.csv"
        lines = ["name,alpha0_db_per_cm_per_MHz_y,y"]
        lines += [f"{n},{c.alpha0_db},{c.y}" for n, c in rows]
        path.write_text("\n".join(lines) + "\n")
        loaded = load_media(path)
    load_ok = loaded == rows
    ok = water_gap <= 1e-12 and rt_gap <= 1e-12 and load_ok
    return ok, (
        f"Water SI gap {water_gap:.2e}, round-trip gap {rt_gap:.2e} (tol 1e-12); "
        f"{len(loaded)} table rows load: {'ok' if load_ok else 'MISMATCH'}"
    )


def criterion_operator_tests(quick: bool) -> tuple[bool, str]:
    """GL weights vs the Gamma-function oracle; Laplacian multiplier laws."""
    worst = 0.0
    for order in (0.3, 0.5, 1.0, 1.5, 2.0):
        w = gl_weights(order, 64).weights
        oracle = np.array([_gamma_weight(order, j) for j in range(65)])
        scale = np.maximum(np.abs(oracle), 1e-30)
        worst = max(worst, float(np.max(np.abs(w - oracle) / scale)))

    grid = Grid1D(64, 2.0 * math.pi)
    f = Field(grid, np.sin(3.0 * grid.x) + 0.5 * np.cos(5.0 * grid.x))
    lap = apply_fractional_laplacian(f, 2.0)
    exact = np.fft.irfft(grid.rfft_wavenumbers() ** 2 * np.fft.rfft(f.values), n=grid.n)
    integer_gap = float(np.max(np.abs(lap.values - exact)))

    g = Field(grid, np.cos(2.0 * grid.x))
    lhs = apply_fractional_laplacian(Field(grid, 2.0 * f.values + 3.0 * g.values), 1.3)
    rhs = 2.0 * apply_fractional_laplacian(f, 1.3).values + 3.0 * apply_fractional_laplacian(g, 1.3).values
    lin_gap = float(np.max(np.abs(lhs.values - rhs)) / np.max(np.abs(rhs)))

    s1 = fractional_laplacian_symbol(0.7, grid)
    s2 = fractional_laplacian_symbol(1.1, grid)
    s12 = fractional_laplacian_symbol(1.8, grid)
    semi_gap = float(np.max(np.abs(s1 * s2 - s12)))

    ok = worst <= 1e-12 and integer_gap <= 1e-10 and lin_gap <= 1e-12 and semi_gap <= 1e-8
    return ok, (
        f"GL oracle gap {worst:.2e} (tol 1e-12); integer-order gap {integer_gap:.2e}; "
        f"linearity gap {lin_gap:.2e}; semigroup gap {semi_gap:.2e}"
    )


CRITERIA = [
    (1, "exponent identity y = s + eta - 1", criterion_exponent_identity),
    (2, "Telegrapher frequency-independent attenuation", criterion_telegrapher_plateau),
    (3, "thermoviscous omega-squared law", criterion_thermoviscous_law),
    (4, "order-bound classification truth table", criterion_bound_classification),
    (5, "diffusion-wave solver eigenmode accuracy", criterion_fdwe_solver),
    (6, "simulation vs dispersion attenuation closure", criterion_simulation_closure),
    (7, "parabolic reduction consistency", criterion_parabolic_reduction),
    (8, "attenuation unit conversion", criterion_unit_conversion),
    (9, "fractional operator unit checks", criterion_operator_tests),
]

# stated runtime budgets (seconds), checked by the acceptance suite
RUNTIME_BUDGETS = {1: 5.0, 5: 30.0, 6: 60.0}


def run_criterion(index: int, quick: bool = False) -> CriterionResult:
    for idx, name, func in CRITERIA:
        if idx == index:
            start = time.perf_counter()
            passed, details = func(quick)
            return CriterionResult(idx, name, passed, details, time.perf_counter() - start)
    raise KeyError(f"no criterion {index}")


def run_all(quick: bool = False) -> list[CriterionResult]:
    return [run_criterion(idx, quick) for idx, _, _ in CRITERIA]
