"""Figure rendering for the CLI report paths.

Each saver takes the same in-memory objects the CSV/JSON writers consume and
renders a matplotlib figure to the requested file (format from the
extension).
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def _finish(fig, path: str) -> None:
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_branches_figure(rows, path: str) -> None:
    """Branch curves lambda = tau_k(a) against the inner radius."""
    fig, ax = plt.subplots(figsize=(6.5, 4.5))
    for branch in rows:
        pts = [p for p in branch if p is not None]
        if not pts:
            continue
        ax.plot([p.a for p in pts], [p.lam for p in pts],
                label=f"k = {pts[0].k}")
    ax.set_xlabel("inner radius a")
    ax.set_ylabel(r"$\tau_k(a)$")
    ax.legend(loc="best", fontsize=9)
    ax.grid(True, alpha=0.3)
    _finish(fig, path)


def save_radial_figure(profiles, path: str) -> None:
    """Grid of radial factors v(r), one panel per (k, a) case."""
    n = len(profiles)
    cols = 3 if n >= 3 else n
    rows = math.ceil(n / cols)
    fig, axes = plt.subplots(rows, cols, figsize=(3.1 * cols, 2.6 * rows),
                             squeeze=False)
    for i, prof in enumerate(profiles):
        ax = axes[i // cols][i % cols]
        ax.plot(prof.r, prof.v, lw=1.2)
        ax.axhline(0.0, color="k", lw=0.5)
        ax.set_title(f"k = {prof.k}, a = {prof.a:g}", fontsize=9)
        ax.tick_params(labelsize=8)
    for i in range(n, rows * cols):
        axes[i // cols][i % cols].set_axis_off()
    _finish(fig, path)


def save_table_figure(rows, path: str) -> None:
    """Normalized first eigenvalue against the inner radius."""
    fig, ax = plt.subplots(figsize=(6.5, 4.5))
    a = [r.a for r in rows]
    ax.plot(a, [r.normalized for r in rows], "o-", ms=4)
    ax.set_xlabel("inner radius a")
    ax.set_ylabel(r"$\lambda_1(\Omega_a)\,|\Omega_a|$")
    ax.grid(True, alpha=0.3)
    _finish(fig, path)


def save_rect_sweep_figure(results, path: str) -> None:
    """First rectangle eigenvalue and its nodal count against ell."""
    fig, ax = plt.subplots(figsize=(6.5, 4.5))
    ells = [r.ell for r in results]
    ax.plot(ells, [r.lambda1 for r in results], "o-", ms=4, label=r"$\lambda_1$")
    ax.set_xlabel(r"half-height $\ell$")
    ax.set_ylabel(r"$\lambda_1(\Omega_\ell)$")
    ax.grid(True, alpha=0.3)
    ax2 = ax.twinx()
    ax2.step(ells, [r.m_opt for r in results], where="mid", color="tab:red",
             alpha=0.7, label="nodal domains")
    ax2.set_ylabel("nodal domains", color="tab:red")
    _finish(fig, path)


def save_asymptotics_figure(fit, path: str) -> None:
    """Raw thin-annulus products and their linear extrapolations."""
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(8.5, 3.6))
    for ax, est, intercept, label in (
            (ax1, fit.c_k_estimates, fit.c_k, r"$k_{\rm opt}\,(1-a)$"),
            (ax2, fit.c_mu_estimates, fit.c_mu, r"$\sqrt{\lambda_1}\,(1-a)$")):
        gaps = [1.0 - a for a, _ in est]
        vals = [v for _, v in est]
        ax.plot(gaps, vals, "o", ms=5)
        ax.axhline(intercept, color="tab:red", lw=1,
                   label=f"intercept {intercept:.4f}")
        ax.set_xlabel("1 - a")
        ax.set_ylabel(label)
        ax.legend(fontsize=8)
        ax.grid(True, alpha=0.3)
    _finish(fig, path)
