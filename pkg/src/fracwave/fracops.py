"""Discrete fractional operators.

Two building blocks: Grunwald-Letnikov (GL) time-derivative weights
(binomial coefficients via a stable recurrence) and the fractional
Laplacian as the Fourier multiplier |k|**lam on a periodic grid.

The GL convolution assumes a quiescent past: everything before the start
of the supplied history is taken to be zero.  The full history is used
(no short-memory truncation), so a run of N steps costs O(N^2) weight
multiplies.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Field, Grid1D
from .errors import DomainError, ShapeError, ValidationError

__all__ = [
    "GlWeights",
    "gl_weights",
    "gl_fractional_derivative",
    "fractional_laplacian_symbol",
    "apply_fractional_laplacian",
]


@dataclass(frozen=True)
class GlWeights:
    """GL convolution weights w_0 .. w_N for one derivative order.

    w_0 = 1 and w_j = w_{j-1} * (1 - (order+1)/j), which equals the
    alternating binomial (-1)**j * C(order, j).
    """

    order: float
    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        w.flags.writeable = False
        object.__setattr__(self, "weights", w)

    def __len__(self):
        return len(self.weights)


def gl_weights(order: float, n: int) -> GlWeights:
    """Compute GL weights w_0 .. w_n by the stable recurrence.

    ``order`` may be any value in [0, 3]; integer orders give finitely
    supported stencils (e.g. order 1 -> [1, -1, 0, ...]).
    """
    if not (isinstance(n, (int, np.integer)) and n >= 1):
        raise DomainError(f"number of weights must be a positive integer, got {n}")
    if not (0.0 <= order <= 3.0):
        raise DomainError(f"derivative order must be in [0, 3], got {order}")
    w = np.empty(n + 1)
    w[0] = 1.0
    for j in range(1, n + 1):
        w[j] = w[j - 1] * (1.0 - (order + 1.0) / j)
    return GlWeights(order=float(order), weights=w)


def gl_fractional_derivative(history, order: float, dt: float) -> Field:
    """GL fractional time derivative from a field history (newest last).

    Returns dt**(-order) * sum_j w_j * history[-1 - j], truncated at the
    start of the history (quiescent past).
    """
    history = list(history)
    if not history:
        raise DomainError("history must be non-empty")
    if not dt > 0.0:
        raise DomainError(f"dt must be positive, got {dt}")
    grid = history[-1].grid
    for f in history:
        if f.grid != grid:
            raise ShapeError("all history fields must share one grid")
    w = gl_weights(order, max(len(history) - 1, 1)).weights[: len(history)]
    stacked = np.stack([f.values for f in reversed(history)])
    return Field(grid, dt ** (-order) * (w @ stacked))


def fractional_laplacian_symbol(lam: float, grid: Grid1D) -> np.ndarray:
    """Fourier multipliers |k_j|**lam in FFT ordering.

    For lam = 0 the operator is the identity (all-ones multiplier); for
    lam > 0 the zero mode is annihilated.
    """
    if not (0.0 <= lam <= 4.0):
        raise DomainError(f"Laplacian order must be in [0, 4], got {lam}")
    if lam == 0.0:
        return np.ones(grid.n)
    k = np.abs(grid.wavenumbers())
    sym = np.zeros(grid.n)
    nz = k > 0
    sym[nz] = k[nz] ** lam
    return sym


def apply_fractional_laplacian(f: Field, lam: float) -> Field:
    """Apply (-Laplacian)**(lam/2) spectrally and return a real field.

    The imaginary residue of the inverse transform must stay below 1e-10
    relative to the field magnitude; it is then discarded.
    """
    if not np.all(np.isfinite(f.values)):
        raise ValidationError("field contains non-finite values")
    sym = fractional_laplacian_symbol(lam, f.grid)
    out = np.fft.ifft(sym * np.fft.fft(f.values))
    scale = max(float(np.max(np.abs(out))), 1e-300)
    if float(np.max(np.abs(out.imag))) > 1e-10 * scale:
        raise ValidationError("unexpected imaginary residue after inverse transform")
    return Field(f.grid, out.real)
