"""Independent oracles used by the test suite.

Everything here deliberately avoids the package's own geometry engines:
areas and Euler characteristics come from pixel rasterization plus
connected-component labeling, and convex-polygon measures come from the
shoelace formula.  Agreement between these oracles and the engines is the
point of the tests, so nothing may be shared.
"""
from __future__ import annotations

import numpy as np
from scipy import ndimage

# 4-connectivity for the covered phase, 8-connectivity for the background:
# the standard dual pair that keeps the digital Euler characteristic
# consistent on a square raster.
_CROSS = np.array([[0, 1, 0], [1, 1, 1], [0, 1, 0]], bool)
_FULL = np.ones((3, 3), bool)


def rasterize(grains, lo: float, hi: float, n: int) -> tuple[np.ndarray, float]:
    """Boolean union mask sampled at the n×n pixel centers covering [lo,hi]².

    Returns (mask, pixel_side).  mask[i, j] is True when the center of pixel
    (i, j) lies in the closed union; axis 0 is x, axis 1 is y.
    """
    w = (hi - lo) / n
    centers = lo + (np.arange(n) + 0.5) * w
    mask = np.zeros((n, n), dtype=bool)
    for g in grains:
        if g.theta == 0.0:
            i0 = np.searchsorted(centers, g.cx - g.hx, side="left")
            i1 = np.searchsorted(centers, g.cx + g.hx, side="right")
            j0 = np.searchsorted(centers, g.cy - g.hy, side="left")
            j1 = np.searchsorted(centers, g.cy + g.hy, side="right")
            mask[i0:i1, j0:j1] = True
        else:
            rad = float(np.hypot(g.hx, g.hy))
            i0 = np.searchsorted(centers, g.cx - rad, side="left")
            i1 = np.searchsorted(centers, g.cx + rad, side="right")
            j0 = np.searchsorted(centers, g.cy - rad, side="left")
            j1 = np.searchsorted(centers, g.cy + rad, side="right")
            x = centers[i0:i1, None] - g.cx
            y = centers[None, j0:j1] - g.cy
            c, s = np.cos(g.theta), np.sin(g.theta)
            u = x * c + y * s
            v = -x * s + y * c
            mask[i0:i1, j0:j1] |= (np.abs(u) <= g.hx) & (np.abs(v) <= g.hy)
    return mask, w


def pixel_euler(mask: np.ndarray) -> int:
    """Connected components minus holes of the rasterized set.

    Assumes the mask does not touch the raster border, so every hole is a
    background component not connected to the border ring.
    """
    ncomp = ndimage.label(mask, structure=_CROSS)[1]
    bg, nbg = ndimage.label(~mask, structure=_FULL)
    touching = np.unique(
        np.concatenate([bg[0, :], bg[-1, :], bg[:, 0], bg[:, -1]])
    )
    nborder = np.count_nonzero(touching)
    return int(ncomp - (nbg - nborder))


def pixel_area(mask: np.ndarray, w: float) -> float:
    return float(mask.sum()) * w * w


def convex_polygon_measures(corners: np.ndarray) -> tuple[int, float, float]:
    """(v0, v1, v2) of a convex polygon given its corner list (k, 2).

    v1 is half the perimeter, v2 the shoelace area.  Empty input means the
    empty set: all zeros.
    """
    pts = np.asarray(corners, dtype=float)
    if len(pts) == 0:
        return 0, 0.0, 0.0
    if len(pts) < 3:
        # degenerate: a point or a segment; v1 of a segment is its length
        d = 0.0 if len(pts) == 1 else float(np.hypot(*(pts[1] - pts[0])))
        return 1, d, 0.0
    nxt = np.roll(pts, -1, axis=0)
    area = 0.5 * abs(float(np.sum(pts[:, 0] * nxt[:, 1] - nxt[:, 0] * pts[:, 1])))
    perim = float(np.sum(np.hypot(nxt[:, 0] - pts[:, 0], nxt[:, 1] - pts[:, 1])))
    return 1, perim / 2.0, area


def rect_pair_intersection(ax0, ax1, ay0, ay1, bx0, bx1, by0, by1):
    """(v0, v1, v2) of the intersection of two closed axis-aligned rectangles.

    Handles the degenerate closed-set cases exactly: a shared edge is a
    segment (v1 = its length), a shared corner a point.
    """
    x0, x1 = max(ax0, bx0), min(ax1, bx1)
    y0, y1 = max(ay0, by0), min(ay1, by1)
    wx, wy = x1 - x0, y1 - y0
    if wx < 0 or wy < 0:
        return 0, 0.0, 0.0
    if wx > 0 and wy > 0:
        return 1, wx + wy, wx * wy
    if wx == 0 and wy == 0:
        return 1, 0.0, 0.0
    return 1, max(wx, wy), 0.0
