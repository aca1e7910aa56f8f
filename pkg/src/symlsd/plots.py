"""Matplotlib figure rendering for the CLI report path."""

from __future__ import annotations

import numpy as np
import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def save_density_plot(xs, phi, c, path) -> None:
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(xs, phi, lw=1.5)
    ax.set_xlabel("x")
    ax.set_ylabel(r"$\varphi_c(x)$")
    ax.set_title(f"Limit density, c = {c:g}")
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_cdf_plot(xs, F, c, path) -> None:
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(xs, F, lw=1.5)
    ax.set_xlabel("x")
    ax.set_ylabel(r"$F_c(x)$")
    ax.set_ylim(-0.02, 1.02)
    ax.set_title(f"Limit CDF, c = {c:g}")
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_spectrum_plot(eigs, density, c, tau, path, bins: int = 80) -> None:
    """Eigenvalue histogram with the theoretical density overlaid.

    ``density`` maps a float x to the reference density value (the atom at
    the origin, if any, is excluded from both histogram and curve).
    """
    eigs = np.asarray(eigs)
    nonzero = eigs[np.abs(eigs) > 1e-9]
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    if nonzero.size:
        weight = nonzero.size / eigs.size
        ax.hist(nonzero, bins=bins, density=True,
                weights=np.full(nonzero.size, weight),
                alpha=0.55, label="ESD (continuous part)")
        grid = np.linspace(nonzero.min(), nonzero.max(), 400)
        ax.plot(grid, [density(x) for x in grid], "r-", lw=1.5, label="limit density")
    ax.set_xlabel("eigenvalue")
    ax.set_ylabel("density")
    ax.set_title(f"ESD vs limit law, c = {c:.4g}, tau = {tau}")
    ax.legend()
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_cmatrix_plot(closed, solver, path) -> None:
    closed = np.asarray(closed)
    solver = np.asarray(solver)
    fig, axes = plt.subplots(1, 2, figsize=(9.0, 4.0))
    idx = np.arange(closed.size)
    axes[0].plot(idx, closed, label="closed form", lw=1.2)
    axes[0].plot(idx, solver, "--", label="dense solver", lw=1.2)
    axes[0].set_xlabel("index")
    axes[0].set_ylabel("eigenvalue")
    axes[0].legend()
    axes[0].grid(alpha=0.3)
    axes[1].semilogy(idx, np.maximum(np.abs(closed - solver), 1e-18), lw=1.0)
    axes[1].set_xlabel("index")
    axes[1].set_ylabel("|closed - solver|")
    axes[1].grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
