"""Figure rendering for the CLI report paths.

Uses the Agg backend so figures render headlessly to files alongside the
delimited output; nothing here is needed by the numerical core.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .analysis import AttenuationMeasurement, ComparisonTable
from .core import Trajectory

__all__ = ["render_dispersion_figure", "render_simulation_figure"]


def render_dispersion_figure(table: ComparisonTable, path, title: str = "") -> None:
    """Log-log attenuation vs frequency with the asymptotic law overlaid."""
    omegas = np.array([r.omega for r in table.rows])
    alpha_root = np.array([r.alpha_root for r in table.rows])
    alpha_asym = np.array([r.alpha_asymptotic for r in table.rows])
    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    positive = alpha_root > 0.0
    if positive.any():
        ax.loglog(omegas[positive], alpha_root[positive], "o-", label="dispersion root")
    else:
        ax.semilogx(omegas, alpha_root, "o-", label="dispersion root (lossless)")
    if (alpha_asym > 0.0).all():
        label = f"asymptotic law (y = {table.analytic_y:g})"
        if table.fitted_y is not None:
            label += f", fit y = {table.fitted_y:.4f}"
        ax.loglog(omegas, alpha_asym, "--", label=label)
    ax.set_xlabel(r"angular frequency $\omega$")
    ax.set_ylabel(r"attenuation $\alpha$")
    if title:
        ax.set_title(title)
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_simulation_figure(traj: Trajectory, path,
                             measurement: AttenuationMeasurement | None = None,
                             title: str = "") -> None:
    """Field snapshots; with a measurement, add the fitted decay envelope."""
    x = traj.grid.x
    n_snap = len(traj.snapshots)
    picks = sorted({0, n_snap // 3, 2 * n_snap // 3, n_snap - 1})
    if measurement is None:
        fig, ax = plt.subplots(figsize=(6.5, 4.5))
        axes = [ax]
    else:
        fig, (ax, ax2) = plt.subplots(2, 1, figsize=(6.5, 7.0))
        axes = [ax, ax2]
    for i in picks:
        t, f = traj.snapshots[i]
        ax.plot(x, f.values, label=f"t = {t:g}", alpha=0.85)
    ax.set_xlabel("x")
    ax.set_ylabel("field value")
    ax.legend(fontsize="small")
    ax.grid(True, alpha=0.3)
    if title:
        ax.set_title(title)
    if measurement is not None:
        ax2 = axes[1]
        _, final = traj.snapshots[-1]
        ax2.plot(x, np.abs(final.values), color="0.6", lw=0.8, label="|final snapshot|")
        x_lo, x_hi = measurement.fit_window
        xs = np.linspace(x_lo, x_hi, 200)
        ref = np.max(np.abs(final.values)) or 1.0
        env = ref * np.exp(-measurement.alpha_measured * (xs - x_lo))
        ax2.plot(xs, env, "r--",
                 label=f"fitted decay, alpha = {measurement.alpha_measured:.4g}")
        ax2.axvspan(x_lo, x_hi, color="tab:blue", alpha=0.08, label="fit window")
        ax2.set_yscale("log")
        ax2.set_xlabel("x")
        ax2.set_ylabel("amplitude")
        ax2.legend(fontsize="small")
        ax2.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
