"""Attenuation extraction and power-law fitting.

The measurement path follows the amplitude decay law E = E0*exp(-alpha*x)
of a steady time-harmonic wave: project each grid point onto the source
frequency over an integer number of trailing periods (Hann-windowed to
kill spectral leakage), then fit ln(amplitude) against x.  Power laws are
fitted by ordinary least squares in log-log space, where the law is
exactly linear.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import Medium, PowerLawFit, Trajectory
from .dispersion import asymptotic_attenuation, dispersion_sweep
from .errors import (
    ConfigurationError,
    DomainError,
    InsufficientDataError,
    TransientError,
)

__all__ = [
    "AttenuationMeasurement",
    "ComparisonRow",
    "ComparisonTable",
    "fit_power_law",
    "measure_spatial_attenuation",
    "compare_dispersion",
]


@dataclass(frozen=True)
class AttenuationMeasurement:
    omega: float
    alpha_measured: float
    fit_window: tuple[float, float]
    r_squared: float

    def __post_init__(self):
        if not math.isfinite(self.alpha_measured):
            raise DomainError("measured attenuation must be finite")
        if not (0.0 <= self.r_squared <= 1.0):
            raise DomainError(f"r_squared must be in [0, 1], got {self.r_squared}")


@dataclass(frozen=True)
class ComparisonRow:
    omega: float
    alpha_root: float
    alpha_asymptotic: float
    rel_gap: float | None


@dataclass(frozen=True)
class ComparisonTable:
    rows: tuple[ComparisonRow, ...]
    fitted_y: float | None
    analytic_y: float


def fit_power_law(points) -> PowerLawFit:
    """OLS fit of alpha = alpha0 * omega**y on log-log axes."""
    pts = [(float(w), float(a)) for w, a in points]
    if len(pts) < 3:
        raise InsufficientDataError(f"need at least 3 points to fit, got {len(pts)}")
    if any(w <= 0.0 or a <= 0.0 for w, a in pts):
        raise DomainError("all (omega, alpha) samples must be positive for a log-log fit")
    lw = np.log([w for w, _ in pts])
    la = np.log([a for _, a in pts])
    slope, intercept = np.polyfit(lw, la, 1)
    resid = la - (slope * lw + intercept)
    return PowerLawFit(
        alpha0=float(np.exp(intercept)),
        y=float(slope),
        residual=float(np.sqrt(np.mean(resid**2))),
    )


def _harmonic_projection(times: np.ndarray, values: np.ndarray, omega: float,
                         windowed: bool = True) -> np.ndarray:
    """Complex projection of each column of ``values`` onto exp(i*omega*t).

    Hann-windowed by default (suppresses leakage over multi-period
    spans); rectangular when ``windowed`` is false.  The returned array
    is normalized so its magnitude is the harmonic amplitude.
    """
    window = np.hanning(len(times)) if windowed else np.ones(len(times))
    phases = np.exp(-1j * omega * times)
    norm = np.sum(window)
    return 2.0 * ((window * phases) @ values) / norm


def _harmonic_amplitudes(times, values, omega, windowed=True) -> np.ndarray:
    return np.abs(_harmonic_projection(times, values, omega, windowed=windowed))


def _wavelength_from_phase(x: np.ndarray, complex_amp: np.ndarray) -> float | None:
    """Wavelength from the phase gradient of a traveling-wave projection."""
    phase = np.unwrap(np.angle(complex_amp))
    k_est = abs(np.polyfit(x, phase, 1)[0])
    if k_est <= 0.0:
        return None
    return 2.0 * math.pi / k_est


def measure_spatial_attenuation(traj: Trajectory, omega: float, window: tuple[float, float],
                                periods: int = 8) -> AttenuationMeasurement:
    """Measure the spatial decay rate of a steady monochromatic wave.

    Uses the trailing ``periods`` full periods of the trajectory.  The
    run must be long enough that the projected amplitudes over that span
    and over the same span shifted one period earlier agree within 1%
    (steady-state gate), and the window must span at least two
    wavelengths of the measured wave.
    """
    if not omega > 0.0:
        raise DomainError(f"omega must be positive, got {omega}")
    x_min, x_max = window
    grid = traj.grid
    if not (0.0 <= x_min < x_max <= grid.length):
        raise ConfigurationError(f"window {window} outside domain [0, {grid.length}]")

    period = 2.0 * math.pi / omega
    times = traj.times
    t_end = times[-1]
    span = periods * period
    if t_end - times[0] < span + 2.0 * period:
        raise ConfigurationError(
            f"trajectory too short: need {periods}+2 periods of data, have {(t_end - times[0]) / period:.2f}"
        )

    mask = (grid.x >= x_min) & (grid.x <= x_max)
    x_fit = grid.x[mask]
    if np.count_nonzero(mask) < 4:
        raise ConfigurationError("window contains fewer than 4 grid points")
    matrix = traj.value_matrix()[:, mask]

    def project(t_lo, t_hi, windowed=True):
        sel = (times >= t_lo) & (times <= t_hi)
        return _harmonic_amplitudes(times[sel], matrix[sel], omega, windowed=windowed)

    sel = (times >= t_end - span) & (times <= t_end)
    camp = _harmonic_projection(times[sel], matrix[sel], omega)
    amp = np.abs(camp)

    wavelength = _wavelength_from_phase(x_fit, camp)
    if wavelength is not None and (x_max - x_min) < 2.0 * wavelength:
        raise ConfigurationError(
            f"window length {x_max - x_min:.4g} shorter than two wavelengths ({2 * wavelength:.4g})"
        )
    # steady-state gate: full-span projections one period apart must agree
    amp_prev = project(t_end - span - period, t_end - period)
    amp_last = amp
    ref = np.max(amp_last)
    if ref <= 0.0:
        raise TransientError("no signal at the measurement frequency inside the window")
    if np.max(np.abs(amp_last - amp_prev)) > 0.01 * ref:
        raise TransientError(
            "signal not steady: period-to-period amplitude variation exceeds 1%"
        )

    log_amp = np.log(np.maximum(amp, 1e-300))
    slope, intercept = np.polyfit(x_fit, log_amp, 1)
    pred = slope * x_fit + intercept
    ss_res = float(np.sum((log_amp - pred) ** 2))
    ss_tot = float(np.sum((log_amp - np.mean(log_amp)) ** 2))
    r2 = 1.0 if ss_tot == 0.0 else max(0.0, 1.0 - ss_res / ss_tot)
    return AttenuationMeasurement(
        omega=float(omega),
        alpha_measured=float(-slope),
        fit_window=(float(x_min), float(x_max)),
        r_squared=r2,
    )


def compare_dispersion(medium: Medium, omegas) -> ComparisonTable:
    """Tabulate root-finder vs asymptotic attenuation across a sweep.

    The relative gap is ``None`` where the root attenuation vanishes
    (lossless media), as is the fitted exponent.
    """
    points = dispersion_sweep(medium, omegas)
    law = asymptotic_attenuation(medium)
    rows = []
    for pt in points:
        alpha_asym = law.alpha0 * pt.omega**law.y
        gap = None
        if pt.alpha > 0.0:
            gap = abs(pt.alpha - alpha_asym) / pt.alpha
        rows.append(ComparisonRow(pt.omega, pt.alpha, alpha_asym, gap))
    fitted_y = None
    if all(pt.alpha > 0.0 for pt in points) and len(points) >= 3:
        fitted_y = fit_power_law([(pt.omega, pt.alpha) for pt in points]).y
    return ComparisonTable(rows=tuple(rows), fitted_y=fitted_y, analytic_y=law.y)
