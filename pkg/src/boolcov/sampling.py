"""Replication sampling of Boolean models with rectangular grains.

Each replication i draws one realization inside a square observation window
[0, L]^2 under one of two edge treatments:

* ``torus``   -- grain centers fall in [0, L)^2 and geometry wraps
                 periodically, so the window sees the stationary process
                 with no edge effect at all;
* ``minus``   -- grain centers fall in the margin-enlarged box
                 [-m, L+m]^2 with m at least the grain circumradius, and
                 the union is clipped back to the window, discarding the
                 boundary length contributed by the clip itself.

Every replication owns an independent counter-based random stream derived
from (master_seed, i) through a 64-bit mixing function, so results are
reproducible and independent of how replications are distributed over
worker processes.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .grains import Domain, GrainSizeError, PlacedGrain
from .gridcomplex import FunctionalVector, build_complex, clip_to_window, intrinsic_volumes
from .polyunion import union_functionals

__all__ = [
    "mix64",
    "stream_seed",
    "ModelSpec",
    "SampleResult",
    "sample_grains",
    "measure_sample",
    "run",
]

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    """Bijective 64-bit finalizer (xor-shift-multiply) with good avalanche."""
    z &= _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def stream_seed(master: int, index: int) -> int:
    """Seed of the random stream for replication ``index``.

    Walks the 64-bit Weyl sequence master + (index+1)*golden and finalizes
    with mix64; consecutive indices give statistically unrelated seeds.
    """
    return mix64((master + (index + 1) * _GOLDEN) & _MASK64)


@dataclass(frozen=True)
class ModelSpec:
    """Complete description of a simulation: grain shape, intensity,
    orientation law, window, edge treatment, replication count and seed."""

    a: float
    b: float
    gamma: float
    orientation: str
    boundary: str
    L: float
    replications: int
    master_seed: int
    margin: float | None = None

    def __post_init__(self):
        for name in ("a", "b", "gamma", "L"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0.0):
                raise ValueError(f"{name} must be positive and finite")
        if self.orientation not in ("aligned", "isotropic"):
            raise ValueError(
                f"orientation must be 'aligned' or 'isotropic', got {self.orientation!r}"
            )
        if self.boundary not in ("torus", "minus"):
            raise ValueError(
                f"boundary must be 'torus' or 'minus', got {self.boundary!r}"
            )
        if not (isinstance(self.replications, int) and self.replications >= 0):
            raise ValueError("replications must be a non-negative integer")
        if not (isinstance(self.master_seed, int) and 0 <= self.master_seed <= _MASK64):
            raise ValueError("master_seed must be a 64-bit unsigned integer")
        diag = math.hypot(self.a, self.b)
        if self.boundary == "torus":
            if self.orientation != "aligned":
                raise ValueError("torus boundary supports aligned grains only")
            if self.margin is not None:
                raise ValueError("margin applies to minus-sampling only")
            if not diag < self.L / 2.0:
                raise GrainSizeError(
                    f"grain diagonal {diag!r} must stay below half the "
                    f"period, L/2 = {self.L / 2.0!r}"
                )
        else:
            circ = diag / 2.0
            if self.margin is None:
                object.__setattr__(self, "margin", circ)
            elif not (math.isfinite(self.margin) and self.margin >= circ):
                raise GrainSizeError(
                    f"margin {self.margin!r} is below the grain circumradius {circ!r}"
                )

    def box_bounds(self) -> tuple[float, float]:
        """Per-axis bounds of the center-sampling box."""
        if self.boundary == "torus":
            return (0.0, self.L)
        return (-self.margin, self.L + self.margin)

    def box_area(self) -> float:
        lo, hi = self.box_bounds()
        return (hi - lo) ** 2

    @property
    def window_area(self) -> float:
        return self.L * self.L


def _rng(spec: ModelSpec, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=stream_seed(spec.master_seed, index)))


def sample_grains(spec: ModelSpec, index: int) -> list[PlacedGrain]:
    """Grains of replication ``index``: a Poisson number of centers uniform
    in the sampling box, axis-aligned or uniformly rotated."""
    rng = _rng(spec, index)
    lo, hi = spec.box_bounds()
    n = int(rng.poisson(spec.gamma * spec.box_area()))
    cx = rng.uniform(lo, hi, n)
    cy = rng.uniform(lo, hi, n)
    if spec.orientation == "isotropic":
        theta = rng.uniform(0.0, math.pi, n)
        theta = np.where(theta < math.pi, theta, 0.0)
    else:
        theta = np.zeros(n)
    hx, hy = spec.a / 2.0, spec.b / 2.0
    return [
        PlacedGrain(float(cx[k]), float(cy[k]), hx, hy, float(theta[k]))
        for k in range(n)
    ]


def measure_sample(spec: ModelSpec, grains: list[PlacedGrain]) -> FunctionalVector:
    """Exact (v0, v1, v2) of one realization under the spec's edge treatment."""
    if spec.boundary == "torus":
        return intrinsic_volumes(build_complex(grains, Domain.torus(spec.L)))
    if spec.orientation == "aligned":
        return clip_to_window(grains, spec.L, spec.margin)
    return union_functionals(grains, window=spec.L)


@dataclass(frozen=True)
class SampleResult:
    """Measured functionals of one replication."""

    index: int
    functionals: FunctionalVector
    grain_count: int


def _measure_one(spec: ModelSpec, index: int) -> SampleResult:
    grains = sample_grains(spec, index)
    return SampleResult(index, measure_sample(spec, grains), len(grains))


def _measure_chunk(task: tuple[ModelSpec, int, int]) -> list[SampleResult]:
    spec, start, stop = task
    return [_measure_one(spec, i) for i in range(start, stop)]


def run(spec: ModelSpec, workers: int | None = None) -> list[SampleResult]:
    """Measure all replications of a spec, in index order.

    With workers > 1 the index range is split into contiguous chunks and
    dispatched to a process pool; because every replication has its own
    seeded stream, the output is identical for any worker count.
    """
    M = spec.replications
    if M == 0:
        return []
    if workers is None or workers <= 1:
        return [_measure_one(spec, i) for i in range(M)]
    chunk = max(1, -(-M // (workers * 8)))
    tasks = [(spec, s, min(s + chunk, M)) for s in range(0, M, chunk)]
    out: list[SampleResult] = []
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_measure_chunk, tasks):
            out.extend(part)
    return out
