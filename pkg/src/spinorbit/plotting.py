"""Matplotlib renderings of the CSV outputs (written next to the data)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def render_sweep(rows, var_name, path, title=None):
    """Correlation curves with error bars from sweep rows."""
    xs = [v for v, _ in rows]
    fig, ax = plt.subplots(figsize=(6, 4.2))
    specs = [
        ("C", "C_std", "classical correlation C", "o--", "tab:red"),
        ("Cprime", "Cprime_std", "concurrence C'", "s:", "tab:green"),
        ("Q", "Q_std", "quantum discord Q", "^-", "tab:blue"),
    ]
    for key, skey, label, fmt, color in specs:
        ys = [r[key] for _, r in rows]
        errs = [r[skey] for _, r in rows]
        ax.errorbar(xs, ys, yerr=errs, fmt=fmt, ms=4, lw=1.2,
                    color=color, label=label, capsize=2)
    ax.set_xlabel(var_name)
    ax.set_ylabel("correlation (bits)")
    if title:
        ax.set_title(title)
    ax.legend(frameon=False)
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_scatter(samples, path, title=None):
    """Discord vs classical correlation for the two state families."""
    fig, ax = plt.subplots(figsize=(5.5, 5))
    for family, color, marker, filled in (
        ("rank2", "0.6", "o", True),
        ("rank3", "black", "o", False),
    ):
        pts = [(c, q) for fam, _, _, c, q in samples if fam == family]
        if not pts:
            continue
        cs, qs = zip(*pts)
        ax.scatter(cs, qs, s=8, marker=marker,
                   facecolors=color if filled else "none",
                   edgecolors=color, label=family, linewidths=0.6)
    ax.set_xlabel("classical correlation C (bits)")
    ax.set_ylabel("quantum discord Q (bits)")
    if title:
        ax.set_title(title)
    ax.legend(frameon=False)
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_profile(intensity, path, title=None):
    """Heat map of a transverse detection-density grid."""
    grid = intensity.grid
    extent = [-grid.half_width, grid.half_width, -grid.half_width, grid.half_width]
    fig, ax = plt.subplots(figsize=(5, 4.2))
    im = ax.imshow(intensity.values, origin="lower", extent=extent, cmap="inferno")
    ax.set_xlabel("x / w")
    ax.set_ylabel("y / w")
    if title:
        ax.set_title(title)
    fig.colorbar(im, ax=ax, label="detection density")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
