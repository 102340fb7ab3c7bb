"""Analytic plane-wave dispersion analysis of the lossy wave equation.

Convention: plane waves are exp(i(omega*t - k*x)), so the attenuating
branch has Im(k) <= 0 and the attenuation coefficient is alpha = -Im(k)
(nepers per unit length).  The fractional frequency factor uses the
principal branch (i*omega)**eta = omega**eta * exp(i*pi*eta/2) for
omega > 0, and the spatial factor is continued off the real axis as
(k**2)**(s/2) with the cut on the negative real axis.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .core import DispersionPoint, Medium
from .errors import BranchError, ConvergenceError, DomainError

__all__ = [
    "AsymptoticLaw",
    "dispersion_residual",
    "solve_wavenumber",
    "asymptotic_attenuation",
    "dispersion_sweep",
]

_MAX_NEWTON_ITERS = 100
_MAX_HALVINGS = 60


@dataclass(frozen=True)
class AsymptoticLaw:
    """Small-loss power law alpha(omega) ~ alpha0 * omega**y.

    ``valid`` marks the dissipative branch, sin(pi*eta/2) > 0; outside it
    the first-order loss term does not attenuate and alpha0 may be
    non-positive.
    """

    alpha0: float
    y: float
    valid: bool


def dispersion_residual(omega: float, k: complex, medium: Medium) -> complex:
    """Residual R(omega, k) whose root defines the dispersion relation.

    R = -k**2 + (omega/c0)**2 - gamma * (i*omega)**eta * (k**2)**(s/2).
    """
    if not omega > 0.0:
        raise DomainError(f"omega must be positive, got {omega}")
    k = complex(k)
    iw_eta = omega**medium.eta * cmath.exp(1j * math.pi * medium.eta / 2.0)
    return -k * k + (omega / medium.c0) ** 2 - medium.gamma * iw_eta * (k * k) ** (medium.s / 2.0)


def _residual_derivative(omega: float, k: complex, medium: Medium) -> complex:
    iw_eta = omega**medium.eta * cmath.exp(1j * math.pi * medium.eta / 2.0)
    dloss = 0.0
    if medium.gamma != 0.0 and medium.s != 0.0:
        dloss = medium.gamma * iw_eta * medium.s * k * (k * k) ** (medium.s / 2.0 - 1.0)
    return -2.0 * k - dloss


def solve_wavenumber(omega: float, medium: Medium, k0: complex | None = None) -> DispersionPoint:
    """Newton-solve the dispersion relation for the attenuating root.

    Seeds from the lossless wavenumber omega/c0 (or ``k0``), damps the
    Newton step by halving until the residual decreases, and accepts the
    root once |R| <= 1e-12 * (omega/c0)**2.  Roots with Im(k) above the
    branch tolerance are rejected as non-physical.
    """
    if not omega > 0.0:
        raise DomainError(f"omega must be positive, got {omega}")
    tol = 1e-12 * (omega / medium.c0) ** 2
    k = complex(k0) if k0 is not None else complex(omega / medium.c0)
    r = dispersion_residual(omega, k, medium)
    for _ in range(_MAX_NEWTON_ITERS):
        if abs(r) <= tol:
            break
        dr = _residual_derivative(omega, k, medium)
        if dr == 0:
            raise ConvergenceError(
                f"Newton derivative vanished at k={k}", last_iterate=k, residual=r, omega=omega
            )
        step = -r / dr
        for _ in range(_MAX_HALVINGS):
            k_new = k + step
            r_new = dispersion_residual(omega, k_new, medium)
            if abs(r_new) < abs(r):
                break
            step /= 2.0
        else:
            raise ConvergenceError(
                f"damped Newton stalled at omega={omega}", last_iterate=k, residual=r, omega=omega
            )
        k, r = k_new, r_new
    else:
        raise ConvergenceError(
            f"Newton did not converge after {_MAX_NEWTON_ITERS} iterations at omega={omega}",
            last_iterate=k,
            residual=r,
            omega=omega,
        )
    if k.imag > 1e-14 * abs(k):
        raise BranchError(f"root k={k} grows in +x (Im k > 0); wrong branch at omega={omega}")
    return DispersionPoint(omega=omega, k=k)


def asymptotic_attenuation(medium: Medium) -> AsymptoticLaw:
    """First-order-in-gamma attenuation law of the lossy wave equation.

    Perturbing the lossless root k = omega/c0 gives
    alpha(omega) ~ (gamma * c0**(1-s) / 2) * sin(pi*eta/2) * omega**(s+eta-1),
    so alpha0 carries the prefactor and y = s + eta - 1.
    """
    sin_term = math.sin(math.pi * medium.eta / 2.0)
    alpha0 = 0.5 * medium.gamma * medium.c0 ** (1.0 - medium.s) * sin_term
    return AsymptoticLaw(alpha0=alpha0, y=medium.s + medium.eta - 1.0, valid=sin_term > 0.0)


def dispersion_sweep(medium: Medium, omegas, continuation: bool = True):
    """Solve the dispersion relation at each frequency of an increasing sweep.

    With ``continuation`` (default) each root seeds the next solve, which
    keeps Newton on the physical branch for larger losses.
    """
    omegas = [float(w) for w in omegas]
    if any(w <= 0.0 for w in omegas):
        raise DomainError("all sweep frequencies must be positive")
    if any(b <= a for a, b in zip(omegas, omegas[1:])):
        raise DomainError("sweep frequencies must be strictly increasing")
    points: list[DispersionPoint] = []
    seed: complex | None = None
    for w in omegas:
        try:
            pt = solve_wavenumber(w, medium, k0=seed)
        except ConvergenceError as err:
            err.omega = w
            raise
        points.append(pt)
        if continuation:
            seed = pt.k
    return points
