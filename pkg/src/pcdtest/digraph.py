"""Proximity catch digraph construction and the relative density statistic."""

from dataclasses import dataclass, field

import numpy as np

from .errors import OutsideTriangle, TooFewPoints
from .geometry import INSIDE_TOL, Triangle, Triangulation, barycentric, locate
from .proximity import PcdConfig, arc_indicator, arc_matrix

__all__ = ["DigraphSummary", "build_digraph", "kernel_h", "count_arcs", "count_arcs_batch"]

_ROW_CHUNK = 512


@dataclass(frozen=True)
class DigraphSummary:
    n: int
    arc_count: int
    rho: float
    per_triangle_counts: list = field(default_factory=list)


def count_arcs(bary, family, param):
    """Number of arcs (i, j), i != j, among points given by barycentric
    coordinates in a single triangle."""
    b = np.asarray(bary, dtype=float).reshape(-1, 3)
    n = len(b)
    if n < 2:
        return 0
    total = 0
    for start in range(0, n, _ROW_CHUNK):
        block = arc_matrix(b[start : start + _ROW_CHUNK], b, family, param)
        rows = np.arange(len(block))
        block[rows, start + rows] = False
        total += int(np.count_nonzero(block))
    return total


def count_arcs_batch(bary, family, param):
    """Arc counts for a batch of equally sized samples, ``bary`` of shape
    ``(B, n, 3)``; returns an integer array of length B."""
    b = np.asarray(bary, dtype=float)
    a = arc_matrix(b, b, family, param)
    diag = np.arange(b.shape[1])
    a[:, diag, diag] = False
    return np.count_nonzero(a, axis=(1, 2))


def _as_config(cfg):
    if isinstance(cfg, PcdConfig):
        return cfg
    family, param = cfg
    return PcdConfig(family, param)


def build_digraph(x_points, tri_or_triangulation, cfg):
    """Arc count and relative density of the PCD on ``x_points``.

    With a Triangulation, arcs only join points in the same triangle; a point
    on a shared edge belongs to the lowest-index triangle containing it.
    All points must lie inside the triangle / hull."""
    cfg = _as_config(cfg)
    x = np.asarray(x_points, dtype=float).reshape(-1, 2)
    n = len(x)
    if n < 2:
        raise TooFewPoints("relative density needs at least two points")
    if isinstance(tri_or_triangulation, Triangulation):
        idx, bary = locate(tri_or_triangulation, x)
        if np.any(idx < 0):
            raise OutsideTriangle(f"{int(np.sum(idx < 0))} point(s) outside the convex hull")
        arcs = 0
        counts = []
        for ti in range(tri_or_triangulation.n_triangles):
            sel = idx == ti
            k = int(np.count_nonzero(sel))
            counts.append((ti, k))
            if k >= 2:
                arcs += count_arcs(bary[sel], cfg.family, cfg.param)
    else:
        tri = tri_or_triangulation if isinstance(tri_or_triangulation, Triangle) else Triangle(tri_or_triangulation)
        bary = barycentric(tri, x)
        if np.any(bary < -INSIDE_TOL):
            raise OutsideTriangle("point(s) outside the triangle")
        arcs = count_arcs(bary, cfg.family, cfg.param)
        counts = [(0, n)]
    return DigraphSummary(n, arcs, arcs / (n * (n - 1)), counts)


def kernel_h(x_i, x_j, tri, cfg):
    """Number of arcs (0, 1 or 2) between two points of the same triangle."""
    cfg = _as_config(cfg)
    tri = tri if isinstance(tri, Triangle) else Triangle(tri)
    b = barycentric(tri, np.array([x_i, x_j], dtype=float))
    if np.any(b < -INSIDE_TOL):
        raise OutsideTriangle("point(s) outside the triangle")
    fwd = arc_indicator(b[0], b[1], cfg.family, cfg.param)
    back = arc_indicator(b[1], b[0], cfg.family, cfg.param)
    return int(fwd) + int(back)
