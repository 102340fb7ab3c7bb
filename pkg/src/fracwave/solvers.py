"""Pseudo-spectral time-domain solvers on a 1D periodic grid.

All solvers advance Fourier modes (real transforms) with the linear
stiff terms treated implicitly at the newest time level, so the spatial
operators never restrict the step size.  Fractional time derivatives use
the Grunwald-Letnikov convolution over the full stored mode history.

Initial-value handling: the diffusion-wave stepper subtracts the initial
state (and, for orders above one, the initial-velocity ramp) from the GL
convolution, which makes the discrete derivative a first-order scheme
for the initial value problem with non-zero start.  The second-order
wave stepper keeps the classic leapfrog structure, with only the loss
convolution evaluated at the newest level.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import FdweParams, Field, Grid1D, Medium, Trajectory
from .errors import ConfigurationError, DomainError, InstabilityError
from .fracops import gl_weights

__all__ = [
    "SolverConfig",
    "PointSource",
    "solve_fdwe",
    "solve_lossy_wave",
    "solve_telegrapher",
    "solve_thermoviscous",
    "solve_fractional_burgers",
]


@dataclass(frozen=True)
class SolverConfig:
    dt: float
    steps: int
    snapshot_every: int = 1

    def __post_init__(self):
        if not self.dt > 0.0:
            raise DomainError(f"dt must be positive, got {self.dt}")
        if not (isinstance(self.steps, (int, np.integer)) and self.steps >= 1):
            raise DomainError(f"steps must be a positive integer, got {self.steps}")
        if not (1 <= self.snapshot_every <= self.steps):
            raise DomainError(
                f"snapshot_every must be in [1, steps], got {self.snapshot_every} (steps={self.steps})"
            )


@dataclass(frozen=True)
class PointSource:
    """Monochromatic source injected into the lossy wave solver.

    A narrow Gaussian of width ``width`` (defaults to the grid spacing)
    centered at ``position``, driven by amplitude*sin(omega*t) with a
    raised-cosine ramp over ``ramp_cycles`` periods to suppress startup
    transients.
    """

    position: float
    omega: float
    amplitude: float = 1.0
    ramp_cycles: float = 3.0
    width: float | None = None

    def __post_init__(self):
        if not self.omega > 0.0:
            raise DomainError(f"source omega must be positive, got {self.omega}")
        if self.ramp_cycles < 0.0:
            raise DomainError("ramp_cycles must be >= 0")

    def time_signal(self, t: float) -> float:
        ramp_end = self.ramp_cycles * 2.0 * math.pi / self.omega
        env = 1.0
        if t < ramp_end:
            env = 0.5 * (1.0 - math.cos(math.pi * t / ramp_end))
        return self.amplitude * env * math.sin(self.omega * t)

    def spatial_profile(self, grid: Grid1D) -> np.ndarray:
        width = self.width if self.width is not None else grid.dx
        # periodic distance to the source position
        d = np.abs(grid.x - self.position)
        d = np.minimum(d, grid.length - d)
        return np.exp(-0.5 * (d / width) ** 2)


def _trimmed_weights(order: float, n: int) -> np.ndarray:
    """GL weights up to index n with exact trailing zeros removed.

    Integer orders have finite stencils; trimming turns the O(N^2)
    convolution into O(N) for them.
    """
    w = gl_weights(order, n).weights
    nz = np.nonzero(w)[0]
    return w[: nz[-1] + 1] if len(nz) else w[:1]


def _check_finite(values: np.ndarray, step: int):
    if not np.all(np.isfinite(values)):
        raise InstabilityError(f"solution blew up (non-finite values) at step {step}", step=step)


def _history_conv(w: np.ndarray, hist: np.ndarray, newest: int, jmax: int):
    """sum_{j=1}^{jmax} w_j * hist[newest + 1 - j] (newest level excluded)."""
    if jmax < 1:
        return 0.0
    stop = newest - jmax
    block = hist[newest : stop : -1] if stop >= 0 else hist[newest::-1]
    return w[1 : jmax + 1] @ block


def solve_fdwe(
    u0: Field,
    v0: Field | None,
    params: FdweParams,
    cfg: SolverConfig,
) -> Trajectory:
    """Evolve the fractional diffusion-wave equation from u0 (and v0 if beta > 1).

    Each mode obeys d^beta u_hat/dt^beta = -kappa*|k|**lam * u_hat; the
    spatial term is implicit at the new level, so the per-mode update is
    an unconditionally stable linear solve.
    """
    grid = u0.grid
    if params.beta > 1.0:
        if v0 is None:
            raise DomainError("beta > 1 requires an initial velocity field v0")
        if v0.grid != grid:
            raise DomainError("u0 and v0 must share one grid")
    elif v0 is not None:
        raise DomainError("beta <= 1 takes no initial velocity field")

    dt, steps = cfg.dt, cfg.steps
    k = grid.rfft_wavenumbers()
    a = params.kappa * np.where(k > 0, k, 1.0) ** params.lam
    a[0] = 0.0 if params.lam > 0 else params.kappa
    w = _trimmed_weights(params.beta, steps)
    w_full = gl_weights(params.beta, steps).weights
    # B_m = sum_{j<=m} w_j and C_m = sum_{j<=m} w_j*(m-j) = sum_{l<m} B_l,
    # used to subtract the initial state (and initial ramp) from the
    # quiescent-past convolution
    b_sums = np.cumsum(w_full)
    c_sums = np.cumsum(b_sums)

    u_hat0 = np.fft.rfft(u0.values)
    v_hat0 = np.fft.rfft(v0.values) if v0 is not None else None

    hist = np.empty((steps + 1, len(k)), dtype=complex)
    hist[0] = u_hat0
    denom = dt ** (-params.beta) + a
    scale = dt ** (-params.beta)

    snapshots = [(0.0, u0)]
    for m in range(1, steps + 1):
        conv = _history_conv(w, hist, m - 1, min(m, len(w) - 1))
        rhs = u_hat0 * b_sums[m] - conv
        if v_hat0 is not None:
            rhs = rhs + dt * v_hat0 * c_sums[m - 1]
        hist[m] = scale * rhs / denom
        if m % cfg.snapshot_every == 0:
            values = np.fft.irfft(hist[m], n=grid.n)
            _check_finite(values, m)
            snapshots.append((m * dt, Field(grid, values)))
    return Trajectory(dt=dt, snapshots=snapshots)


def solve_lossy_wave(
    p0: Field,
    v0: Field,
    medium: Medium,
    cfg: SolverConfig,
    source: PointSource | None = None,
) -> Trajectory:
    """Evolve the time-space fractional lossy wave equation.

    Leapfrog (second-order central difference) for the wave part, GL
    convolution for the fractional loss term with the newest level
    implicit.  Supports 0 < eta < 2 only; for eta in (2, 3] use the
    dispersion module (reaction-equation regime, not time-stepped).
    """
    grid = p0.grid
    if v0.grid != grid:
        raise DomainError("p0 and v0 must share one grid")
    if not (0.0 < medium.eta < 2.0):
        raise DomainError(
            f"time stepping supports 0 < eta < 2 only (got eta={medium.eta}); "
            "use the dispersion analyzer for the reaction-equation regime"
        )
    dt, steps = cfg.dt, cfg.steps
    cfl_limit = 0.5 * grid.dx / medium.c0
    if dt > cfl_limit:
        raise ConfigurationError(
            f"CFL violation: dt={dt} exceeds 0.5*dx/c0={cfl_limit:.6g}"
        )

    k = grid.rfft_wavenumbers()
    k2 = k**2
    ks = np.where(k > 0, k, 1.0) ** medium.s
    ks[0] = 0.0 if medium.s > 0 else 1.0
    loss = medium.gamma * ks * dt ** (-medium.eta)
    w = _trimmed_weights(medium.eta, steps + 1)
    # The GL convolution evaluated at level m+1 carries a first-order
    # phase error exp(i*omega*dt*(1 - eta/2)) relative to the wave part
    # centered at m.  Interpolating the convolution between levels m and
    # m+1 with real weights (1 - eta/2, eta/2) centers it at m + eta/2,
    # cancelling that error for both temporal rotation senses.
    theta = medium.eta / 2.0
    w_pad = np.append(w, 0.0)
    wc = (1.0 - theta) * w_pad[:-1] + theta * w_pad[1:]

    c2dt2 = 1.0 / (medium.c0**2 * dt**2)
    denom = c2dt2 + loss * theta * w[0]

    src_hat = None
    if source is not None:
        src_hat = np.fft.rfft(source.spatial_profile(grid))

    hist = np.empty((steps + 1, len(k)), dtype=complex)
    hist[0] = np.fft.rfft(p0.values)
    v_hat0 = np.fft.rfft(v0.values)
    # second-order start: p1 = p0 + dt*v0 + dt^2/2 * c0^2 * Laplacian p0
    accel0 = medium.c0**2 * (-k2 * hist[0])
    if src_hat is not None:
        accel0 = accel0 + medium.c0**2 * source.time_signal(0.0) * src_hat
    hist[1] = hist[0] + dt * v_hat0 + 0.5 * dt**2 * accel0

    snapshots = [(0.0, p0)]
    if cfg.snapshot_every == 1:
        snapshots.append((dt, Field(grid, np.fft.irfft(hist[1], n=grid.n))))
    for m in range(1, steps):
        depth = min(m, len(wc) - 1)
        stop = m - 1 - depth
        block = hist[m:stop:-1] if stop >= 0 else hist[m::-1]
        conv = wc[: depth + 1] @ block
        rhs = c2dt2 * (2.0 * hist[m] - hist[m - 1]) - k2 * hist[m] - loss * conv
        if src_hat is not None:
            rhs = rhs + source.time_signal(m * dt) * src_hat
        hist[m + 1] = rhs / denom
        if (m + 1) % cfg.snapshot_every == 0:
            values = np.fft.irfft(hist[m + 1], n=grid.n)
            _check_finite(values, m + 1)
            snapshots.append(((m + 1) * dt, Field(grid, values)))
    return Trajectory(dt=dt, snapshots=snapshots)


def solve_telegrapher(p0: Field, v0: Field, c0: float, gamma: float, cfg: SolverConfig,
                      source: PointSource | None = None) -> Trajectory:
    """Damped wave equation: lossy medium with (eta=1, s=0)."""
    medium = Medium(name="telegrapher", c0=c0, gamma=gamma, eta=1.0, s=0.0)
    return solve_lossy_wave(p0, v0, medium, cfg, source=source)


def solve_thermoviscous(p0: Field, v0: Field, c0: float, gamma: float, cfg: SolverConfig,
                        source: PointSource | None = None) -> Trajectory:
    """Thermoviscous wave equation: lossy medium with (eta=1, s=2)."""
    medium = Medium(name="thermoviscous", c0=c0, gamma=gamma, eta=1.0, s=2.0)
    return solve_lossy_wave(p0, v0, medium, cfg, source=source)


def solve_fractional_burgers(u0: Field, params: FdweParams, cfg: SolverConfig) -> Trajectory:
    """Fractional Burgers equation with pseudo-spectral advection.

    d^beta u/dt^beta + u u_x = -kappa*(-Lap)^(lam/2) u.  The nonlinear
    term is formed in physical space, differentiated spectrally and
    dealiased by the 2/3 rule; it is explicit, the linear term implicit.
    Supports 0 < beta <= 1 and the order bound -1 <= lam - beta <= 1.
    """
    if params.beta > 1.0:
        raise DomainError(f"nonlinear stepper supports 0 < beta <= 1, got beta={params.beta}")
    if not (-1.0 <= params.lam - params.beta <= 1.0):
        raise DomainError(
            f"order bound violated: lam - beta = {params.lam - params.beta} outside [-1, 1]"
        )
    grid = u0.grid
    dt, steps = cfg.dt, cfg.steps
    k = grid.rfft_wavenumbers()
    a = params.kappa * np.where(k > 0, k, 1.0) ** params.lam
    a[0] = 0.0 if params.lam > 0 else params.kappa
    dealias = k <= (2.0 / 3.0) * np.max(k)

    w_full = gl_weights(params.beta, steps).weights
    w = _trimmed_weights(params.beta, steps)
    b_sums = np.cumsum(w_full)

    hist = np.empty((steps + 1, len(k)), dtype=complex)
    hist[0] = np.fft.rfft(u0.values)
    denom = dt ** (-params.beta) + a
    scale = dt ** (-params.beta)

    def nonlinear(u_hat: np.ndarray) -> np.ndarray:
        u = np.fft.irfft(u_hat, n=grid.n)
        ux = np.fft.irfft(1j * k * u_hat, n=grid.n)
        n_hat = np.fft.rfft(u * ux)
        return np.where(dealias, n_hat, 0.0)

    snapshots = [(0.0, u0)]
    for m in range(1, steps + 1):
        conv = _history_conv(w, hist, m - 1, min(m, len(w) - 1))
        rhs = scale * (hist[0] * b_sums[m] - conv) - nonlinear(hist[m - 1])
        hist[m] = rhs / denom
        if m % cfg.snapshot_every == 0:
            values = np.fft.irfft(hist[m], n=grid.n)
            _check_finite(values, m)
            snapshots.append((m * dt, Field(grid, values)))
    return Trajectory(dt=dt, snapshots=snapshots)
