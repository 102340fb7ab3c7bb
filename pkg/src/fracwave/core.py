"""Core domain types and order-parameter mappings.

All quantities here are nondimensional; SI units enter only through the
media table machinery.  Every type validates its invariants at
construction and is immutable afterwards, so instances are safe to share
between threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, ShapeError, ValidationError

__all__ = [
    "FdweParams",
    "Medium",
    "PowerLawFit",
    "Grid1D",
    "Field",
    "Trajectory",
    "DispersionPoint",
    "BoundVerdict",
    "map_lossy_to_fdwe",
    "exponent_from_fdwe",
    "check_order_bound",
]


@dataclass(frozen=True)
class FdweParams:
    """Orders and diffusivity of the fractional diffusion-wave equation.

    ``lam`` is the spatial order, ``beta`` the temporal order, ``kappa``
    the generalized diffusivity (units length^lam / time^beta).
    """

    lam: float
    beta: float
    kappa: float

    def __post_init__(self):
        # lam = 0 is admitted so the Telegrapher reduction (s = 0) maps
        # into a constructible parameter set
        if not (0.0 <= self.lam <= 2.0):
            raise DomainError(f"spatial order must satisfy 0 <= lam <= 2, got {self.lam}")
        if not (0.0 < self.beta <= 2.0):
            raise DomainError(f"temporal order must satisfy 0 < beta <= 2, got {self.beta}")
        if not self.kappa > 0.0:
            raise DomainError(f"diffusivity kappa must be positive, got {self.kappa}")


@dataclass(frozen=True)
class Medium:
    """Lossy-wave-equation parameters: sound speed, loss strength and orders.

    ``eta`` is the temporal loss order, ``s`` the spatial loss order.
    ``gamma = 0`` gives a lossless medium and is allowed as a reference
    case.  ``eta = 2`` is rejected: the loss term's dissipative part is
    proportional to sin(pi*eta/2), which vanishes there.
    """

    name: str
    c0: float
    gamma: float
    eta: float
    s: float

    def __post_init__(self):
        if not self.c0 > 0.0:
            raise DomainError(f"sound speed c0 must be positive, got {self.c0}")
        if self.gamma < 0.0:
            raise DomainError(f"viscous constant gamma must be >= 0, got {self.gamma}")
        if not (0.0 <= self.s <= 2.0):
            raise DomainError(f"spatial loss order must satisfy 0 <= s <= 2, got {self.s}")
        if not (0.0 < self.eta <= 3.0):
            raise DomainError(f"temporal loss order must satisfy 0 < eta <= 3, got {self.eta}")
        if self.eta == 2.0:
            raise DomainError("eta = 2 is excluded: sin(pi*eta/2) = 0 makes the loss term non-dissipative")
        y = self.s + self.eta - 1.0
        if not (0.0 <= y <= 2.0):
            raise DomainError(
                f"power-law exponent s + eta - 1 = {y} outside [0, 2] (s={self.s}, eta={self.eta})"
            )

    @property
    def lossless(self) -> bool:
        return self.gamma == 0.0


@dataclass(frozen=True)
class PowerLawFit:
    """Fitted attenuation power law: alpha(omega) = alpha0 * omega**y.

    ``residual`` is the RMS residual of the log-log fit.  Exponents
    outside the physical range [0, 2] are flagged (``in_physical_range``)
    rather than rejected, since fits to pathological data may legitimately
    land there.
    """

    alpha0: float
    y: float
    residual: float

    def __post_init__(self):
        if not self.alpha0 > 0.0:
            raise DomainError(f"prefactor alpha0 must be positive, got {self.alpha0}")
        if self.residual < 0.0:
            raise DomainError(f"residual must be >= 0, got {self.residual}")

    @property
    def in_physical_range(self) -> bool:
        return 0.0 <= self.y <= 2.0


@dataclass(frozen=True)
class Grid1D:
    """Uniform periodic grid on [0, length).

    ``n`` must be a power of two (>= 8) so that transforms are fast and
    the wavenumber bookkeeping k_j = 2*pi*j/length is exact.
    """

    n: int
    length: float

    def __post_init__(self):
        if not (isinstance(self.n, int) and self.n >= 8 and (self.n & (self.n - 1)) == 0):
            raise DomainError(f"grid size must be a power of two >= 8, got {self.n}")
        if not self.length > 0.0:
            raise DomainError(f"domain length must be positive, got {self.length}")

    @property
    def dx(self) -> float:
        return self.length / self.n

    @property
    def x(self) -> np.ndarray:
        return np.arange(self.n) * self.dx

    def wavenumbers(self) -> np.ndarray:
        """Wavenumbers k_j = 2*pi*j/length in FFT (transform) ordering."""
        return 2.0 * np.pi * np.fft.fftfreq(self.n, d=self.dx)

    def rfft_wavenumbers(self) -> np.ndarray:
        """Non-negative wavenumbers matching numpy's rfft layout."""
        return 2.0 * np.pi * np.fft.rfftfreq(self.n, d=self.dx)


class Field:
    """A real-valued field sampled on a :class:`Grid1D`.

    Values are copied at construction, checked finite, and frozen.
    """

    __slots__ = ("grid", "values")

    def __init__(self, grid: Grid1D, values):
        arr = np.asarray(values, dtype=float)
        if arr.shape != (grid.n,):
            raise ShapeError(f"field has shape {arr.shape}, grid expects ({grid.n},)")
        if not np.all(np.isfinite(arr)):
            raise ValidationError("field values must be finite (no NaN/Inf)")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", arr)

    def __setattr__(self, name, value):
        raise AttributeError("Field is immutable")

    def __eq__(self, other):
        if not isinstance(other, Field):
            return NotImplemented
        return self.grid == other.grid and np.array_equal(self.values, other.values)

    def __repr__(self):
        return f"Field(n={self.grid.n}, length={self.grid.length})"

    @classmethod
    def zeros(cls, grid: Grid1D) -> "Field":
        return cls(grid, np.zeros(grid.n))

    @classmethod
    def from_function(cls, grid: Grid1D, func) -> "Field":
        return cls(grid, func(grid.x))

    def l2_norm(self) -> float:
        return float(np.sqrt(np.sum(self.values**2) * self.grid.dx))


class Trajectory:
    """Time-stamped sequence of fields produced by a solver run."""

    __slots__ = ("dt", "snapshots")

    def __init__(self, dt: float, snapshots):
        if not dt > 0.0:
            raise DomainError(f"time step must be positive, got {dt}")
        snaps = tuple((float(t), f) for t, f in snapshots)
        if not snaps:
            raise DomainError("trajectory needs at least one snapshot")
        grid = snaps[0][1].grid
        prev = -math.inf
        for t, f in snaps:
            if t <= prev:
                raise DomainError("snapshot times must be strictly increasing")
            if f.grid != grid:
                raise ShapeError("all trajectory fields must share one grid")
            prev = t
        object.__setattr__(self, "dt", float(dt))
        object.__setattr__(self, "snapshots", snaps)

    def __setattr__(self, name, value):
        raise AttributeError("Trajectory is immutable")

    def __len__(self):
        return len(self.snapshots)

    @property
    def grid(self) -> Grid1D:
        return self.snapshots[0][1].grid

    @property
    def times(self) -> np.ndarray:
        return np.array([t for t, _ in self.snapshots])

    def value_matrix(self) -> np.ndarray:
        """Snapshot values stacked as a (num_snapshots, n) array."""
        return np.stack([f.values for _, f in self.snapshots])


@dataclass(frozen=True)
class DispersionPoint:
    """A solved plane-wave sample: frequency, complex wavenumber, attenuation.

    Under the exp(i(omega*t - k*x)) convention the attenuation is
    ``alpha = -Im(k)`` and is stored redundantly for convenience.
    """

    omega: float
    k: complex
    alpha: float = field(init=False)

    def __post_init__(self):
        if not self.omega > 0.0:
            raise DomainError(f"omega must be positive, got {self.omega}")
        object.__setattr__(self, "k", complex(self.k))
        object.__setattr__(self, "alpha", -self.k.imag)


@dataclass(frozen=True)
class BoundVerdict:
    """Verdict of the order-bound check -1 <= lam - beta <= 1."""

    lam: float
    beta: float
    satisfied: bool
    regime: str
    implied_y: float


def map_lossy_to_fdwe(medium: Medium) -> FdweParams:
    """Map lossy-wave parameters to the reduced diffusion-wave equation.

    The parabolic reduction of the lossy wave equation (drop the Laplacian
    term, integrate once in time) yields a diffusion-wave equation with
    beta = 2 - eta, lam = s and kappa = c0**2 * gamma.  Only 0 < eta < 2
    lands inside the diffusion-wave order range.
    """
    if not (0.0 < medium.eta < 2.0):
        raise DomainError(
            f"reduction requires 0 < eta < 2 so that beta = 2 - eta is in (0, 2], got eta={medium.eta}"
        )
    return FdweParams(lam=medium.s, beta=2.0 - medium.eta, kappa=medium.c0**2 * medium.gamma)


def exponent_from_fdwe(params: FdweParams) -> float:
    """Attenuation power-law exponent implied by the order pair: y = lam - beta + 1."""
    return params.lam - params.beta + 1.0


def _classify_regime(lam: float, beta: float) -> str:
    if lam == 2.0 and beta == 2.0:
        return "normal-wave"
    if lam == 2.0 and beta == 1.0:
        return "normal-diffusion"
    if lam == 2.0 and 0.0 < beta < 1.0:
        return "sub-diffusion"
    if (lam == 2.0 and beta > 1.0) or (0.0 < lam < 2.0 and beta == 1.0):
        return "super-diffusion"
    return "other"


def check_order_bound(lam: float, beta: float) -> BoundVerdict:
    """Evaluate the order bound -1 <= lam - beta <= 1 and classify the regime.

    Accepts any real pair so that counterexamples (e.g. sub-diffusion)
    can be evaluated; nothing is rejected here.
    """
    diff = lam - beta
    return BoundVerdict(
        lam=float(lam),
        beta=float(beta),
        satisfied=bool(-1.0 <= diff <= 1.0),
        regime=_classify_regime(lam, beta),
        implied_y=diff + 1.0,
    )
