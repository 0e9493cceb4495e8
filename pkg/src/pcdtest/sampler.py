"""Seeded samplers for null (uniform) and alternative point patterns.

Alternatives live in the standard equilateral triangle.  Corner triangle j
at level eps is ``b_j >= 1 - 2*eps/sqrt(3)``: segregation draws uniformly
outside all three corners at eps, association draws uniformly inside their
union at ``sqrt(3)/3 - eps``.  Both use rejection from the uniform triangle,
which is exact.
"""

import math

import numpy as np

from .altdist import AltSpec, check_eps
from .geometry import STANDARD_TRIANGLE, Triangle, canonical_order

__all__ = [
    "make_rng",
    "sample_uniform_triangle",
    "sample_segregation",
    "sample_association",
    "kappa_from_eps",
    "sample_null_hull",
    "sample_alt_hull",
]

SQRT3 = math.sqrt(3.0)


def make_rng(seed=None, stream=()):
    """PCG64 generator for ``(seed, stream)``.  ``stream`` is an int or a
    tuple of ints naming an independent substream."""
    if isinstance(stream, (int, np.integer)):
        stream = (int(stream),)
    ss = np.random.SeedSequence(seed, spawn_key=tuple(stream))
    return np.random.Generator(np.random.PCG64(ss))


def uniform_bary(n, rng):
    """Barycentric coordinates of n uniform points in a triangle."""
    u = rng.random((n, 2))
    s = np.sqrt(u[:, 0])
    b2 = s * (1.0 - u[:, 1])
    b3 = s * u[:, 1]
    return np.column_stack([1.0 - s, b2, b3])


def sample_uniform_triangle(tri, n, rng):
    tri = tri if isinstance(tri, Triangle) else Triangle(tri)
    return uniform_bary(int(n), rng) @ tri.vertices


def corner_level(eps):
    """Barycentric threshold of the corner triangles at level eps."""
    return 1.0 - 2.0 * eps / SQRT3


def _support_fraction(kind, eps):
    kappa = kappa_from_eps(eps if kind == "seg" else SQRT3 / 3 - eps)
    return 1.0 - kappa if kind == "seg" else kappa


def _rejection(keep, frac, n, rng):
    out = []
    have = 0
    while have < n:
        want = n - have
        b = uniform_bary(int(want / frac * 1.1) + 16, rng)
        b = b[keep(b)]
        out.append(b)
        have += len(b)
    return np.concatenate(out)[:n] if out else np.zeros((0, 3))


def segregation_bary(eps, n, rng):
    cut = corner_level(eps)
    return _rejection(lambda b: np.all(b < cut, axis=1), _support_fraction("seg", eps), int(n), rng)


def association_bary(eps, n, rng):
    cut = corner_level(SQRT3 / 3 - eps)
    return _rejection(lambda b: np.any(b >= cut, axis=1), _support_fraction("assoc", eps), int(n), rng)


def alt_bary(alt, n, rng):
    if alt.kind == "seg":
        return segregation_bary(alt.epsilon, n, rng)
    return association_bary(alt.epsilon, n, rng)


def sample_segregation(eps, n, rng):
    """n points uniform on the standard triangle minus the corners at eps."""
    eps = check_eps(eps)
    return segregation_bary(eps, n, rng) @ STANDARD_TRIANGLE.vertices


def sample_association(eps, n, rng):
    """n points uniform on the union of corners at sqrt(3)/3 - eps."""
    eps = check_eps(eps)
    return association_bary(eps, n, rng) @ STANDARD_TRIANGLE.vertices


def kappa_from_eps(eps):
    """Fraction of the triangle covered by the three corner triangles."""
    e = check_eps(eps)
    if e < SQRT3 / 4:
        return 4.0 * e * e
    return 1.0 - 4.0 * (1.0 - SQRT3 * e) ** 2


def _triangle_choice(triangulation, n, rng):
    return rng.choice(triangulation.n_triangles, size=int(n), p=triangulation.weights)


def sample_null_hull(triangulation, n, rng):
    """n points uniform on the convex hull: a triangle is chosen with
    probability equal to its area weight, then a uniform point inside."""
    idx = _triangle_choice(triangulation, n, rng)
    b = uniform_bary(len(idx), rng)
    verts = np.stack([t.vertices for t in triangulation.triangles])
    return np.einsum("nk,nkd->nd", b, verts[idx])


def sample_alt_hull(triangulation, alt, n, rng):
    """Alternative pattern over a triangulation.  Each point is drawn in the
    standard triangle and carried into its (area-weighted) triangle by the
    inverse of that triangle's standardizing map."""
    if not isinstance(alt, AltSpec):
        alt = AltSpec(*alt)
    idx = _triangle_choice(triangulation, n, rng)
    b = alt_bary(alt, len(idx), rng)
    # the standard vertex k is the image of vertex canonical_order[k]
    verts = np.stack([t.vertices[list(canonical_order(t))] for t in triangulation.triangles])
    return np.einsum("nk,nkd->nd", b, verts[idx])
