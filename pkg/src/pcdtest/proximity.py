"""Proportional-edge (PE) and central-similarity (CS) proximity regions.

Membership is decided from barycentric coordinates:

* PE, expansion ``r >= 1``: with ``v`` the vertex region of ``x``,
  ``y in N_PE(x, r)`` iff ``1 - b_v(y) <= r * (1 - b_v(x))``.
* CS, expansion ``tau > 0``: with ``e`` the edge region of ``x``,
  ``y in N_CS(x, tau)`` iff ``b_k(y) >= b_k(x) - tau * b_e(x)`` for every k.
  This is the same as ``c + (y - x) / s`` lying in the triangle for the
  scale ``s = 3 * tau * b_e(x)`` and centroid ``c``.

Both regions are closed, so points on the region boundary are contained.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParam
from .geometry import _check_inside, barycentric, clip_polygon, polygon_area

__all__ = [
    "PcdConfig",
    "RegionPolygon",
    "npe_contains",
    "ncs_contains",
    "npe_region",
    "ncs_region",
    "arc_matrix",
    "arc_indicator",
]

_FAMILY_ALIASES = {
    "pe": "pe",
    "proportional-edge": "pe",
    "proportionaledge": "pe",
    "cs": "cs",
    "central-similarity": "cs",
    "centralsimilarity": "cs",
}


def normalize_family(family):
    key = str(family).strip().lower().replace("_", "-")
    if key not in _FAMILY_ALIASES:
        raise InvalidParam(f"unknown family {family!r}; expected 'pe' or 'cs'")
    return _FAMILY_ALIASES[key]


def check_param(family, param):
    """Validate an expansion parameter; returns it as float (inf allowed)."""
    try:
        p = float(param)
    except (TypeError, ValueError):
        raise InvalidParam(f"parameter must be a real number, got {param!r}") from None
    if math.isnan(p):
        raise InvalidParam("parameter is NaN")
    if family == "pe" and p < 1.0:
        raise InvalidParam(f"proportional-edge expansion r must be >= 1, got {p}")
    if family == "cs" and p <= 0.0:
        raise InvalidParam(f"central-similarity expansion tau must be > 0, got {p}")
    return p


@dataclass(frozen=True)
class PcdConfig:
    """Proximity map family ('pe' or 'cs') and its expansion parameter."""

    family: str
    param: float

    def __post_init__(self):
        fam = normalize_family(self.family)
        object.__setattr__(self, "family", fam)
        object.__setattr__(self, "param", check_param(fam, self.param))

    @property
    def is_infinite(self):
        return math.isinf(self.param)


@dataclass(frozen=True, eq=False)
class RegionPolygon:
    vertices: np.ndarray
    area_fraction: float

    def contains(self, p, tol=1e-12):
        v = self.vertices
        if len(v) < 3:
            return bool(np.allclose(v[0], p, atol=tol, rtol=0)) if len(v) else False
        p = np.asarray(p, dtype=float)
        for i in range(len(v)):
            a, b = v[i], v[(i + 1) % len(v)]
            if (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]) < -tol:
                return False
        return True


def _pe_rows(bx, r):
    # compared as 1 - b_v(y) <= r * (1 - b_v(x)), which keeps x in N(x)
    # exactly under rounding
    v = np.argmax(bx, axis=-1)
    bv = np.take_along_axis(bx, v[..., None], axis=-1)[..., 0]
    return v, r * (1.0 - bv)


def _cs_rows(bx, tau):
    e = np.argmin(bx, axis=-1)
    be = np.take_along_axis(bx, e[..., None], axis=-1)
    return bx - tau * be


def arc_indicator(bx, by, family, param):
    """Elementwise arc test ``y in N(x)`` for broadcastable barycentric arrays
    of shape ``(..., 3)``."""
    bx = np.asarray(bx, dtype=float)
    by = np.asarray(by, dtype=float)
    if math.isinf(param):
        return np.ones(np.broadcast_shapes(bx.shape, by.shape)[:-1], dtype=bool)
    if family == "pe":
        v, thr = _pe_rows(bx, param)
        v = np.broadcast_to(v, np.broadcast_shapes(bx.shape, by.shape)[:-1])
        byv = np.take_along_axis(np.broadcast_to(by, v.shape + (3,)), v[..., None], axis=-1)[..., 0]
        return 1.0 - byv <= thr
    low = _cs_rows(bx, param)
    return np.all(by >= low, axis=-1)


def arc_matrix(bx, by, family, param):
    """Boolean arc matrix ``A[..., i, j] = (y_j in N(x_i))``.

    ``bx`` has shape ``(..., n, 3)`` and ``by`` shape ``(..., m, 3)``; leading
    axes are batch axes."""
    bx = np.asarray(bx, dtype=float)
    by = np.asarray(by, dtype=float)
    shape = bx.shape[:-1] + by.shape[-2:-1]
    if math.isinf(param):
        return np.ones(shape, dtype=bool)
    if family == "pe":
        v, thr = _pe_rows(bx, param)
        onehot = (v[..., None] == np.arange(3)).astype(float)
        # exact gather of b_v(y): products with 0/1 and sums of zeros
        byv = onehot @ np.swapaxes(by, -1, -2)
        return 1.0 - byv <= thr[..., None]
    low = _cs_rows(bx, param)
    gap = by[..., None, :, :] - low[..., :, None, :]
    return gap.min(axis=-1) >= 0.0


def _point_bary(tri, p):
    b = barycentric(tri, p)
    _check_inside(b)
    return b


def npe_contains(tri, x, r, y):
    """True iff ``y`` lies in the proportional-edge region N_PE(x, r)."""
    r = check_param("pe", r)
    bx, by = _point_bary(tri, x), _point_bary(tri, y)
    return bool(arc_indicator(bx, by, "pe", r))


def ncs_contains(tri, x, tau, y):
    """True iff ``y`` lies in the central-similarity region N_CS(x, tau)."""
    tau = check_param("cs", tau)
    bx, by = _point_bary(tri, x), _point_bary(tri, y)
    return bool(arc_indicator(bx, by, "cs", tau))


def _bary_rows(tri):
    # b(p) = coef @ (px, py, 1)
    v = tri.vertices
    m = np.vstack([v.T, np.ones(3)])
    return np.linalg.inv(m)


def _region(tri, halfplanes):
    poly = [tuple(p) for p in tri.vertices]
    for u, c in halfplanes:
        poly = clip_polygon(poly, u, c)
        if not poly:
            break
    verts = np.array(poly, dtype=float).reshape(-1, 2)
    area = polygon_area(poly) if len(poly) >= 3 else 0.0
    return RegionPolygon(verts, max(0.0, area / tri.area))


def npe_region(tri, x, r):
    """Polygon of N_PE(x, r) clipped to the triangle."""
    r = check_param("pe", r)
    bx = _point_bary(tri, x)
    if math.isinf(r):
        return RegionPolygon(tri.vertices.copy(), 1.0)
    v = int(np.argmax(bx))
    if bx[v] >= 1.0:
        return RegionPolygon(np.asarray(x, dtype=float).reshape(1, 2), 0.0)
    coef = _bary_rows(tri)[v]
    thr = 1.0 - r * (1.0 - bx[v])
    return _region(tri, [((coef[0], coef[1]), coef[2] - thr)])


def ncs_region(tri, x, tau):
    """Polygon of N_CS(x, tau) clipped to the triangle."""
    tau = check_param("cs", tau)
    bx = _point_bary(tri, x)
    if math.isinf(tau):
        return RegionPolygon(tri.vertices.copy(), 1.0)
    if bx.min() <= 0.0:
        return RegionPolygon(np.asarray(x, dtype=float).reshape(1, 2), 0.0)
    low = _cs_rows(bx, tau)
    rows = _bary_rows(tri)
    return _region(tri, [((rows[k, 0], rows[k, 1]), rows[k, 2] - low[k]) for k in range(3)])
