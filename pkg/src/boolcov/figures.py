"""Headless figure rendering for the command-line reports.

Every report command renders a PNG next to its delimited output unless
figures are disabled.  The Agg backend is selected before pyplot is
imported, so rendering works without a display.
"""
from __future__ import annotations

import os
from typing import Mapping, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

import numpy as np  # noqa: E402

from .estimation import Histogram  # noqa: E402

__all__ = [
    "render_analytic",
    "render_samples",
    "render_validation",
    "render_histograms",
]

_COV_KEYS = ("s00", "s01", "s02", "s11", "s12", "s22")


def _save(fig, path: str | os.PathLike) -> None:
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)


def render_analytic(rows: Sequence[Mapping[str, float]], path: str | os.PathLike) -> None:
    """Mean densities and covariance densities against intensity."""
    g = [row["gamma"] for row in rows]
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
    for key, label in (("d0", "$d_0$"), ("d1", "$d_1$"), ("d2", "$d_2$")):
        ax1.plot(g, [row[key] for row in rows], marker="o", label=label)
    ax1.axhline(0.0, color="k", lw=0.6)
    ax1.set_xlabel(r"$\gamma$")
    ax1.set_title("mean densities")
    ax1.legend()
    for key in _COV_KEYS:
        ax2.plot(g, [row[key] for row in rows], marker=".", label=key)
    ax2.axhline(0.0, color="k", lw=0.6)
    ax2.set_xlabel(r"$\gamma$")
    ax2.set_title("covariance densities")
    ax2.legend(fontsize=8, ncol=2)
    _save(fig, path)


def render_samples(values: np.ndarray, path: str | os.PathLike) -> None:
    """Raw marginal histograms of the three measured functionals."""
    values = np.asarray(values, dtype=float)
    fig, axes = plt.subplots(1, 3, figsize=(12, 3.5))
    for i, (ax, name) in enumerate(zip(axes, ("$V_0$", "$V_1$", "$V_2$"))):
        ax.hist(values[:, i], bins=min(40, max(5, len(values) // 20 + 5)),
                color="tab:blue", alpha=0.8)
        ax.set_title(name)
    _save(fig, path)


def render_validation(
    runs: Sequence[Mapping], z_threshold: float, path: str | os.PathLike
) -> None:
    """z-scores of every covariance entry for each swept intensity."""
    fig, ax = plt.subplots(figsize=(8, 4))
    width = 0.8 / max(1, len(runs))
    xs = np.arange(len(_COV_KEYS))
    for k, rep in enumerate(runs):
        zs = [e["z"] for e in rep["entries"]]
        ax.bar(xs + k * width, zs, width=width, label=f"$\\gamma$={rep['gamma']}")
    for lim in (z_threshold, -z_threshold):
        ax.axhline(lim, color="r", ls="--", lw=0.8)
    ax.set_xticks(xs + 0.4 - width / 2, _COV_KEYS)
    ax.set_ylabel("z")
    ax.set_title("simulated vs analytic covariance entries")
    ax.legend(fontsize=8)
    _save(fig, path)


def render_histograms(
    hists: Mapping[str, Histogram], ks: Mapping[str, float], path: str | os.PathLike
) -> None:
    """Standardized-functional histograms against the standard normal."""
    fig, axes = plt.subplots(1, len(hists), figsize=(4 * len(hists), 3.5))
    if len(hists) == 1:
        axes = [axes]
    for ax, (name, h) in zip(axes, hists.items()):
        widths = np.diff(h.edges)
        ax.bar(h.centers, h.weights, width=widths, color="tab:blue", alpha=0.7)
        grid = np.linspace(h.edges[0], h.edges[-1], 200)
        ax.plot(grid, np.exp(-grid**2 / 2.0) / np.sqrt(2.0 * np.pi), "r-", lw=1.2)
        ax.set_title(f"{name}  (KS {ks[name]:.3f})")
    _save(fig, path)
