"""Figure rendering for report outputs.

All figures go straight to files through the non-interactive backend, so
the helpers work in headless runs.  Creation dates are stripped from the
image metadata to keep repeated runs comparable.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib
import numpy as np

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be pinned first)

_SAVE_OPTS = {"dpi": 150, "metadata": {"Date": None}}


def save_spectrum_figure(path, lambdas, series, title, ylabel="energy") -> Path:
    """Plot energy-level curves over a deformation sweep and save them.

    Args:
        path: Output file; the suffix selects the image format.
        lambdas: Sweep values on the horizontal axis.
        series: Mapping from curve label to energy values over the sweep.
        title: Figure title.
        ylabel: Vertical-axis label.

    Returns:
        The written path.
    """
    target = Path(path)
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    for label, values in series.items():
        ax.plot(lambdas, values, label=label, linewidth=1.4)
    ax.set_xlabel("deformation strength")
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    if series:
        ax.legend(fontsize=8, ncols=2)
    fig.tight_layout()
    fig.savefig(target, **_SAVE_OPTS)
    plt.close(fig)
    return target


def save_wavefunction_figure(path, radii, values, title) -> Path:
    """Plot one sampled radial eigenfunction and save it.

    Args:
        path: Output file.
        radii: Sample radii.
        values: Radial-function values at the radii.
        title: Figure title.

    Returns:
        The written path.
    """
    target = Path(path)
    fig, ax = plt.subplots(figsize=(6.5, 4.0))
    ax.plot(radii, values, color="tab:green", linewidth=1.4)
    ax.axhline(0.0, color="gray", linewidth=0.8)
    ax.set_xlabel("separation")
    ax.set_ylabel("radial function")
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(target, **_SAVE_OPTS)
    plt.close(fig)
    return target


def save_uncertainty_figure(path, dx, hup, ads, ds, lam) -> Path:
    """Plot the momentum-spread lower bounds against the position spread.

    The flat-space bound separates the two deformed curves: the closed
    branch lies above it with a nonzero floor, the open branch below it.

    Args:
        path: Output file.
        dx: Position-spread grid.
        hup: Flat-space lower bound over the grid.
        ads: Closed-branch (kappa = -1) lower bound.
        ds: Open-branch (kappa = +1) lower bound.
        lam: Deformation strength, shown in the title.

    Returns:
        The written path.
    """
    target = Path(path)
    fig, ax = plt.subplots(figsize=(6.5, 4.5))

    def on_log_axes(values):
        arr = np.asarray(values, dtype=float)
        return np.where(arr > 0, arr, np.nan)

    ax.plot(dx, on_log_axes(hup), label="flat", color="black", linewidth=1.2)
    ax.plot(dx, on_log_axes(ads), label="closed branch", color="tab:blue", linewidth=1.4)
    ax.plot(dx, on_log_axes(ds), label="open branch", color="tab:red", linewidth=1.4)
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("position spread")
    ax.set_ylabel("momentum-spread lower bound")
    ax.set_title(f"uncertainty bounds, deformation strength {lam:g}")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(fontsize=9)
    fig.tight_layout()
    fig.savefig(target, **_SAVE_OPTS)
    plt.close(fig)
    return target
