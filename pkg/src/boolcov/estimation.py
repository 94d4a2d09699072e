"""Covariance estimation, bootstrap errors and distributional diagnostics
for replicated functional measurements.

The covariance of the window functionals grows linearly with window area,
so all estimates are reported per unit area.  Accumulation shifts every
sample by the first one before forming products, which keeps the one-pass
sums numerically stable even when the means are large compared to the
spread.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy import stats

__all__ = [
    "CovarianceEstimate",
    "Histogram",
    "estimate_cov",
    "bootstrap_se",
    "standardize",
    "histogram",
    "ks_normal",
]

_COMPONENTS = ("v0", "v1", "v2")


def _as_matrix(results) -> np.ndarray:
    """Accept an (M, 3) array or a sequence of SampleResult-like objects."""
    if isinstance(results, np.ndarray):
        X = np.asarray(results, dtype=float)
    else:
        results = list(results)
        if results and hasattr(results[0], "functionals"):
            X = np.array(
                [
                    [r.functionals.v0, r.functionals.v1, r.functionals.v2]
                    for r in results
                ],
                dtype=float,
            )
        else:
            X = np.asarray(results, dtype=float)
    if X.ndim != 2 or X.shape[1] != 3:
        raise ValueError("expected M samples of the 3 functionals (v0, v1, v2)")
    return X


def _shifted_cov(X: np.ndarray, area: float) -> np.ndarray:
    M = len(X)
    D = X - X[0]
    s = D.sum(axis=0)
    raw = (D.T @ D - np.outer(s, s) / M) / (M - 1)
    raw = (raw + raw.T) / 2.0
    return raw / area


@dataclass(frozen=True, eq=False)
class CovarianceEstimate:
    """Per-area covariance estimate with bootstrap standard errors.

    mean is the raw sample mean of the functionals (not per area); cov and
    se are the per-area covariance matrix and its entrywise bootstrap
    standard error; se_mean is the bootstrap standard error of mean.
    """

    mean: np.ndarray
    cov: np.ndarray
    se: np.ndarray
    se_mean: np.ndarray
    M: int
    B: int


def estimate_cov(
    results,
    area: float,
    bootstrap_b: int = 1000,
    bootstrap_seed: int = 0,
) -> CovarianceEstimate:
    """Estimate the per-area covariance matrix of (V0, V1, V2) from
    replications, with entrywise bootstrap standard errors.

    The bootstrap resamples whole replications with replacement
    ``bootstrap_b`` times using its own counter-based stream, so the
    errors are reproducible for a given ``bootstrap_seed``.
    """
    X = _as_matrix(results)
    M = len(X)
    if M < 2:
        raise ValueError("need at least two replications to estimate a covariance")
    if not area > 0.0:
        raise ValueError("area must be positive")
    if bootstrap_b < 2:
        raise ValueError("need at least two bootstrap resamples")
    cov = _shifted_cov(X, area)
    mean = X.mean(axis=0)
    rng = np.random.Generator(np.random.Philox(key=int(bootstrap_seed)))
    covs = np.empty((bootstrap_b, 3, 3))
    means = np.empty((bootstrap_b, 3))
    for b in range(bootstrap_b):
        Xb = X[rng.integers(0, M, M)]
        covs[b] = _shifted_cov(Xb, area)
        means[b] = Xb.mean(axis=0)
    se = covs.std(axis=0, ddof=1)
    se = (se + se.T) / 2.0
    se_mean = means.std(axis=0, ddof=1)
    return CovarianceEstimate(mean, cov, se, se_mean, M, bootstrap_b)


def bootstrap_se(
    values: Sequence[float] | np.ndarray,
    statistic: Callable[[np.ndarray], float],
    b: int = 1000,
    seed: int = 0,
) -> float:
    """Bootstrap standard error of an arbitrary statistic of a 1-d sample."""
    v = np.asarray(values, dtype=float)
    M = len(v)
    if M < 2:
        raise ValueError("need at least two values")
    if b < 2:
        raise ValueError("need at least two bootstrap resamples")
    rng = np.random.Generator(np.random.Philox(key=int(seed)))
    out = np.empty(b)
    for i in range(b):
        out[i] = statistic(v[rng.integers(0, M, M)])
    return float(out.std(ddof=1))


def standardize(results) -> np.ndarray:
    """Center and scale each functional to zero mean and unit variance
    (ddof=1).  Raises if a component is degenerate, naming it."""
    X = _as_matrix(results)
    if len(X) < 2:
        raise ValueError("need at least two replications to standardize")
    mu = X.mean(axis=0)
    sd = X.std(axis=0, ddof=1)
    for i, name in enumerate(_COMPONENTS):
        if sd[i] == 0.0 or not np.isfinite(sd[i]):
            raise ValueError(f"component {name} has zero variance; cannot standardize")
    return (X - mu) / sd


@dataclass(frozen=True, eq=False)
class Histogram:
    """Density-normalized histogram over a fixed range, with overflow
    counts.  weights integrate to (total - n_below - n_above) / total."""

    edges: np.ndarray
    weights: np.ndarray
    n_below: int
    n_above: int
    total: int

    @property
    def centers(self) -> np.ndarray:
        return (self.edges[:-1] + self.edges[1:]) / 2.0


def histogram(
    values: Sequence[float] | np.ndarray,
    lo: float = -5.0,
    hi: float = 5.0,
    bins: int = 40,
) -> Histogram:
    v = np.asarray(values, dtype=float)
    if v.size == 0:
        raise ValueError("no samples to histogram")
    if not hi > lo:
        raise ValueError("need hi > lo")
    if bins < 1:
        raise ValueError("need at least one bin")
    counts, edges = np.histogram(v, bins=bins, range=(lo, hi))
    width = (hi - lo) / bins
    weights = counts / (v.size * width)
    return Histogram(
        edges=edges,
        weights=weights,
        n_below=int((v < lo).sum()),
        n_above=int((v > hi).sum()),
        total=int(v.size),
    )


def ks_normal(values: Sequence[float] | np.ndarray) -> float:
    """Kolmogorov-Smirnov distance between the empirical distribution and
    the standard normal."""
    v = np.asarray(values, dtype=float)
    if v.size == 0:
        raise ValueError("no samples")
    return float(stats.kstest(v, "norm").statistic)
