"""Planar primitives: triangles, Delaunay triangulation, barycentric coordinates,
the affine map onto the standard equilateral triangle and the vertex/edge
region partitions used by the proximity maps.

Points are handled as numpy arrays of shape ``(2,)`` or ``(n, 2)``.
"""

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import spatial

from .errors import (
    CocircularAmbiguity,
    DegenerateInput,
    OutsideTriangle,
    TooFewPoints,
)

SQRT3 = math.sqrt(3.0)

# tolerance (in barycentric units) for "inside or on the boundary"
INSIDE_TOL = 1e-12
DEGENERACY_TOL = 1e-12

__all__ = [
    "Triangle",
    "Triangulation",
    "AffineMap",
    "STANDARD_TRIANGLE",
    "barycentric",
    "to_standard_equilateral",
    "vertex_region_index",
    "edge_region_index",
    "delaunay_triangulate",
    "convex_hull",
    "locate",
    "clip_polygon",
    "polygon_area",
]


def _as_xy(p):
    a = np.asarray(p, dtype=float)
    if a.shape[-1] != 2:
        raise ValueError("points must have two coordinates")
    return a


def _orient(a, b, c):
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


@dataclass(frozen=True, eq=False)
class Triangle:
    """A non-degenerate triangle with vertices stored counterclockwise."""

    vertices: np.ndarray

    def __post_init__(self):
        v = np.array(self.vertices, dtype=float).reshape(3, 2)
        if not np.all(np.isfinite(v)):
            raise DegenerateInput("triangle vertices must be finite")
        s = _orient(v[0], v[1], v[2])
        scale = max(np.ptp(v[:, 0]), np.ptp(v[:, 1])) ** 2
        if abs(s) <= DEGENERACY_TOL * max(scale, 1e-300):
            raise DegenerateInput("triangle vertices are collinear")
        if s < 0:
            v = v[[0, 2, 1]]
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)

    @property
    def area(self):
        v = self.vertices
        return 0.5 * _orient(v[0], v[1], v[2])

    @property
    def centroid(self):
        return self.vertices.mean(axis=0)

    def __repr__(self):
        return f"Triangle({self.vertices.tolist()!r})"


STANDARD_TRIANGLE = Triangle([[0.0, 0.0], [1.0, 0.0], [0.5, SQRT3 / 2]])


@dataclass(frozen=True, eq=False)
class AffineMap:
    """``p -> linear @ p + offset``."""

    linear: np.ndarray
    offset: np.ndarray

    def __post_init__(self):
        lin = np.array(self.linear, dtype=float).reshape(2, 2)
        off = np.array(self.offset, dtype=float).reshape(2)
        if abs(np.linalg.det(lin)) == 0.0:
            raise DegenerateInput("affine map is not invertible")
        object.__setattr__(self, "linear", lin)
        object.__setattr__(self, "offset", off)

    def __call__(self, points):
        p = _as_xy(points)
        return p @ self.linear.T + self.offset

    def inverse(self):
        inv = np.linalg.inv(self.linear)
        return AffineMap(inv, -inv @ self.offset)

    def compose(self, other):
        """The map ``self(other(p))``."""
        return AffineMap(self.linear @ other.linear, self.linear @ other.offset + self.offset)

    @property
    def determinant(self):
        return float(np.linalg.det(self.linear))


@dataclass(frozen=True, eq=False)
class Triangulation:
    points: np.ndarray
    simplices: np.ndarray
    triangles: list
    weights: np.ndarray
    hull: np.ndarray
    cocircular: bool = False
    _vert: np.ndarray = field(default=None, repr=False)

    @property
    def n_triangles(self):
        return len(self.triangles)

    @property
    def hull_area(self):
        return float(sum(t.area for t in self.triangles))


def barycentric(tri, p):
    """Barycentric coordinates of ``p`` (shape ``(2,)`` or ``(n, 2)``) with
    respect to ``tri``.  Returns an array with a trailing axis of length 3.
    Points outside the triangle get negative coordinates."""
    v = tri.vertices
    p = _as_xy(p)
    d = 2.0 * tri.area
    x, y = p[..., 0], p[..., 1]
    b1 = ((v[1, 0] - x) * (v[2, 1] - y) - (v[2, 0] - x) * (v[1, 1] - y)) / d
    b2 = ((v[2, 0] - x) * (v[0, 1] - y) - (v[0, 0] - x) * (v[2, 1] - y)) / d
    b3 = 1.0 - b1 - b2
    return np.stack([b1, b2, b3], axis=-1)


def from_barycentric(tri, b):
    return np.asarray(b, dtype=float) @ tri.vertices


def canonical_order(tri):
    """Vertex permutation used by :func:`to_standard_equilateral`.

    The longest edge goes first; of its two endpoints the one closer to the
    remaining vertex comes first.  Ties fall back to the stored order.
    """
    v = tri.vertices
    # edge k joins vertices k and k+1
    lens = [float(np.hypot(*(v[(k + 1) % 3] - v[k]))) for k in range(3)]
    k = int(np.argmax(lens))
    a, b = k, (k + 1) % 3
    c = (k + 2) % 3
    if np.hypot(*(v[b] - v[c])) < np.hypot(*(v[a] - v[c])):
        a, b = b, a
    return (a, b, c)


def to_standard_equilateral(tri):
    """Affine map sending ``tri`` onto the standard equilateral triangle with
    vertices (0,0), (1,0), (1/2, sqrt(3)/2), vertices taken in
    :func:`canonical_order`."""
    order = canonical_order(tri)
    src = tri.vertices[list(order)]
    dst = STANDARD_TRIANGLE.vertices
    m_src = np.column_stack([src[1] - src[0], src[2] - src[0]])
    m_dst = np.column_stack([dst[1] - dst[0], dst[2] - dst[0]])
    lin = m_dst @ np.linalg.inv(m_src)
    return AffineMap(lin, dst[0] - lin @ src[0])


def _check_inside(b, tol=INSIDE_TOL):
    if np.any(b < -tol):
        raise OutsideTriangle("point lies outside the triangle")


def vertex_region_index(tri, p):
    """1-based index j of the vertex region R_V(y_j) containing ``p``.

    R_V(y_j) is where b_j is the largest coordinate; ties go to the smallest
    index."""
    b = barycentric(tri, p)
    _check_inside(b)
    idx = np.argmax(b, axis=-1) + 1
    return int(idx) if idx.ndim == 0 else idx


def edge_region_index(tri, p):
    """1-based index j of the edge region R_E(e_j) containing ``p``, where
    e_j is the edge opposite vertex j (so b_j is the smallest coordinate)."""
    b = barycentric(tri, p)
    _check_inside(b)
    idx = np.argmin(b, axis=-1) + 1
    return int(idx) if idx.ndim == 0 else idx


def _incircle(a, b, c, d):
    # > 0 when d is inside the circumcircle of ccw (a, b, c)
    m = np.array(
        [
            [a[0] - d[0], a[1] - d[1], (a[0] - d[0]) ** 2 + (a[1] - d[1]) ** 2],
            [b[0] - d[0], b[1] - d[1], (b[0] - d[0]) ** 2 + (b[1] - d[1]) ** 2],
            [c[0] - d[0], c[1] - d[1], (c[0] - d[0]) ** 2 + (c[1] - d[1]) ** 2],
        ]
    )
    return float(np.linalg.det(m))


def _validate_point_set(points, minimum):
    pts = _as_xy(points)
    if pts.ndim != 2:
        pts = pts.reshape(-1, 2)
    if not np.all(np.isfinite(pts)):
        raise DegenerateInput("points must be finite")
    if len(pts) < minimum:
        raise TooFewPoints(f"need at least {minimum} points, got {len(pts)}")
    centred = pts - pts.mean(axis=0)
    s = np.linalg.svd(centred, compute_uv=False)
    if s[0] == 0.0 or s[-1] <= DEGENERACY_TOL * s[0]:
        raise DegenerateInput("points are collinear")
    return pts


def convex_hull(points):
    """Vertices of the convex hull, counterclockwise, as an ``(h, 2)`` array."""
    pts = _validate_point_set(points, 3)
    hull = spatial.ConvexHull(pts)
    return pts[hull.vertices]


def delaunay_triangulate(points):
    """Delaunay triangulation of the reference points with area weights.

    Raises TooFewPoints / DegenerateInput; emits a CocircularAmbiguity
    warning (and sets ``cocircular``) when an interior edge is not locally
    Delaunay by a clear margin."""
    pts = _validate_point_set(points, 3)
    dt = spatial.Delaunay(pts)
    simplices = np.array(dt.simplices, dtype=int)
    # deterministic ordering of triangles and ccw vertices
    fixed = []
    for s in simplices:
        a, b, c = pts[s]
        fixed.append(list(s) if _orient(a, b, c) > 0 else [s[0], s[2], s[1]])
    simplices = np.array(sorted(fixed, key=lambda s: sorted(s)), dtype=int)
    triangles = [Triangle(pts[s]) for s in simplices]
    areas = np.array([t.area for t in triangles])
    weights = areas / areas.sum()

    scale = max(np.ptp(pts[:, 0]), np.ptp(pts[:, 1]))
    cocircular = False
    edge_owner = {}
    for ti, s in enumerate(simplices):
        for k in range(3):
            e = tuple(sorted((s[k], s[(k + 1) % 3])))
            opp = s[(k + 2) % 3]
            if e in edge_owner:
                tj, opp_j = edge_owner[e]
                a, b, c = pts[simplices[tj]]
                if abs(_incircle(a, b, c, pts[opp])) <= DEGENERACY_TOL * scale**4:
                    cocircular = True
            else:
                edge_owner[e] = (ti, opp)
    if cocircular:
        warnings.warn(
            "reference points contain a (nearly) cocircular quadruple; "
            "the triangulation is not unique",
            CocircularAmbiguity,
            stacklevel=2,
        )
    hull = spatial.ConvexHull(pts).vertices
    vert = np.stack([t.vertices for t in triangles])
    return Triangulation(pts, simplices, triangles, weights, np.asarray(hull), cocircular, vert)


def locate(triangulation, points, tol=INSIDE_TOL):
    """Index of the lowest-numbered triangle containing each point (closed
    triangles), or -1 outside the hull.  Also returns barycentric coordinates
    in the located triangle (undefined rows for outside points)."""
    p = _as_xy(points).reshape(-1, 2)
    idx = np.full(len(p), -1, dtype=int)
    bary = np.zeros((len(p), 3))
    for ti, tri in enumerate(triangulation.triangles):
        todo = idx < 0
        if not np.any(todo):
            break
        b = barycentric(tri, p[todo])
        ok = np.all(b >= -tol, axis=1)
        where = np.flatnonzero(todo)[ok]
        idx[where] = ti
        bary[where] = b[ok]
    return idx, bary


def clip_polygon(poly, u, c):
    """Clip a convex polygon (list of (x, y)) to the half-plane
    ``u[0]*x + u[1]*y + c >= 0``."""
    out = []
    n = len(poly)
    for i in range(n):
        p = poly[i]
        q = poly[(i + 1) % n]
        fp = u[0] * p[0] + u[1] * p[1] + c
        fq = u[0] * q[0] + u[1] * q[1] + c
        if fp >= 0:
            out.append(p)
        if (fp > 0 > fq) or (fp < 0 < fq):
            t = fp / (fp - fq)
            out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    return out


def polygon_area(poly):
    """Signed shoelace area (positive for counterclockwise)."""
    s = 0.0
    n = len(poly)
    for i in range(n):
        p = poly[i]
        q = poly[(i + 1) % n]
        s += p[0] * q[1] - p[1] * q[0]
    return 0.5 * s
