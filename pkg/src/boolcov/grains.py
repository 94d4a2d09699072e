"""Shared primitive types: placed rectangular grains and measurement domains."""
from __future__ import annotations

import math
from dataclasses import dataclass


class GrainSizeError(ValueError):
    """A grain does not fit the domain or sampling margin it was given."""


@dataclass(frozen=True)
class PlacedGrain:
    """A closed rectangle of half-extents (hx, hy) centered at (cx, cy),
    rotated by theta about its center.

    theta lies in [0, pi): a rectangle is symmetric under a half turn, so
    that interval already covers every orientation.
    """

    cx: float
    cy: float
    hx: float
    hy: float
    theta: float = 0.0

    def __post_init__(self):
        for name in ("cx", "cy", "hx", "hy", "theta"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.hx <= 0.0 or self.hy <= 0.0:
            raise ValueError("half-extents must be positive")
        if not 0.0 <= self.theta < math.pi:
            raise ValueError("theta must lie in [0, pi)")

    def bounds(self) -> tuple[float, float, float, float]:
        """(x0, x1, y0, y1) of an axis-aligned grain."""
        if self.theta != 0.0:
            raise ValueError("bounds are defined for axis-aligned grains only")
        return (
            self.cx - self.hx,
            self.cx + self.hx,
            self.cy - self.hy,
            self.cy + self.hy,
        )

    @property
    def circumradius(self) -> float:
        return math.hypot(self.hx, self.hy)


@dataclass(frozen=True)
class Domain:
    """Measurement domain: the full plane, or a square torus of period L."""

    kind: str
    L: float | None = None

    def __post_init__(self):
        if self.kind not in ("plane", "torus"):
            raise ValueError(f"unknown domain kind {self.kind!r}")
        if self.kind == "torus":
            if self.L is None or not math.isfinite(self.L) or self.L <= 0.0:
                raise ValueError("torus domain needs a positive period L")
        elif self.L is not None:
            raise ValueError("plane domain takes no period")

    @classmethod
    def plane(cls) -> "Domain":
        return cls("plane")

    @classmethod
    def torus(cls, L: float) -> "Domain":
        return cls("torus", float(L))
