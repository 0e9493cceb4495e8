"""Exact arc probabilities by piecewise cubature.

Works in the (b1, b2) plane of barycentric coordinates, where the triangle is
(1,0), (0,1), (0,0); area ratios are unchanged by the affine map.  For a fixed
x the proximity region is an intersection of half-planes whose offsets move
linearly with x, so the area of (region ∩ support piece) is a quadratic in x
on each cell cut out by the lines where the combinatorics change.  A degree-2
triangle rule is then exact on every cell.

Supports are signed unions of convex pieces: the whole triangle (null),
the triangle minus three corners (segregation) or the union of three
corners by inclusion-exclusion (association).
"""

import itertools
import math

import numpy as np

from .geometry import clip_polygon, polygon_area

_ROWS = np.array([[1.0, 0.0], [0.0, 1.0], [-1.0, -1.0]])
_OFFS = np.array([0.0, 0.0, 1.0])
_TRI = [(1.0, 0.0), (0.0, 1.0), (0.0, 0.0)]
_SQ3 = math.sqrt(3.0)

# degree-2 rule on a triangle, equal weights
_RULE = ((2 / 3, 1 / 6, 1 / 6), (1 / 6, 2 / 3, 1 / 6), (1 / 6, 1 / 6, 2 / 3))


def _poly(halfplanes):
    p = list(_TRI)
    for u, c in halfplanes:
        p = clip_polygon(p, u, c)
        if not p:
            break
    return p


def _region_halfplanes(kind, k):
    # 'V': b_k is the largest coordinate, 'E': b_k is the smallest
    out = []
    for j in range(3):
        if j == k:
            continue
        d = _ROWS[k] - _ROWS[j]
        dc = _OFFS[k] - _OFFS[j]
        out.append((d, dc) if kind == "V" else (-d, -dc))
    return out


def support_pieces(alt, eps):
    if alt == "null" or eps == 0:
        return [(1, [])]
    if alt == "seg":
        cut = 1 - 2 * eps / _SQ3
        return [(1, [(-_ROWS[j], cut - _OFFS[j]) for j in range(3)])]
    corner = 1 - 2 * (_SQ3 / 3 - eps) / _SQ3
    pieces = []
    for m in range(1, 4):
        for sub in itertools.combinations(range(3), m):
            pieces.append(((-1) ** (m + 1), [(_ROWS[j], _OFFS[j] - corner) for j in sub]))
    return pieces


def _moving(family, param, k):
    # half-planes u.p + w.x + c >= 0 describing N(x) for x in region k
    if family == "pe":
        if math.isinf(param):
            return []
        return [(_ROWS[k], -param * _ROWS[k], _OFFS[k] - 1 + param - param * _OFFS[k])]
    if math.isinf(param):
        return []
    return [(_ROWS[j], -_ROWS[j] + param * _ROWS[k], param * _OFFS[k]) for j in range(3)]


def _critical_lines(moving, piece):
    lines = []
    for u, w, c in moving:
        for q in piece:
            lines.append((w, u[0] * q[0] + u[1] * q[1] + c))
    n = len(piece)
    for (u1, w1, c1), (u2, w2, c2) in itertools.combinations(moving, 2):
        m = np.array([u1, u2])
        if abs(np.linalg.det(m)) < 1e-14:
            continue
        mi = np.linalg.inv(m)
        a = mi @ (-np.array([w1, w2]))
        b = mi @ (-np.array([c1, c2]))
        # corner of N(x) is a @ x + b; it crosses each edge line of the piece
        for i in range(n):
            p, q = piece[i], piece[(i + 1) % n]
            nv = np.array([p[1] - q[1], q[0] - p[0]])
            lines.append((nv @ a, nv @ b - nv @ np.asarray(p)))
    return lines


def _split(cells, w, c):
    nw = math.hypot(w[0], w[1])
    if nw < 1e-13:
        return cells
    u = (w[0] / nw, w[1] / nw)
    c = c / nw
    out = []
    for p in cells:
        vals = [u[0] * q[0] + u[1] * q[1] + c for q in p]
        if max(vals) > 1e-13 and min(vals) < -1e-13:
            a = clip_polygon(p, u, c)
            b = clip_polygon(p, (-u[0], -u[1]), -c)
            if len(a) >= 3:
                out.append(a)
            if len(b) >= 3:
                out.append(b)
        else:
            out.append(p)
    return out


def _integrate(cells, f):
    total = 0.0
    for p in cells:
        a = p[0]
        for i in range(1, len(p) - 1):
            b, c = p[i], p[i + 1]
            ar = polygon_area([a, b, c])
            s = 0.0
            for w0, w1, w2 in _RULE:
                s += f((w0 * a[0] + w1 * b[0] + w2 * c[0], w0 * a[1] + w1 * b[1] + w2 * c[1]))
            total += ar * s / 3.0
    return total


def arc_probability(family, param, alt="null", eps=0.0):
    """P(X2 in N(X1)) for X1, X2 iid uniform on the support of ``alt``
    ('null', 'seg' or 'assoc') with parameter ``eps``."""
    pieces = [(s, _poly(h)) for s, h in support_pieces(alt, eps)]
    pieces = [(s, p) for s, p in pieces if len(p) >= 3]
    support = sum(s * polygon_area(p) for s, p in pieces)
    kind = "V" if family == "pe" else "E"
    total = 0.0
    for k in range(3):
        mov = _moving(family, param, k)
        for s_d, dom in pieces:
            dk = dom
            for u, c in _region_halfplanes(kind, k):
                dk = clip_polygon(dk, u, c)
            if len(dk) < 3:
                continue
            for s_p, piece in pieces:
                cells = [dk]
                for w, c in _critical_lines(mov, piece):
                    cells = _split(cells, w, c)

                def covered(x, piece=piece):
                    q = piece
                    for u, w, c in mov:
                        q = clip_polygon(q, u, w[0] * x[0] + w[1] * x[1] + c)
                        if len(q) < 3:
                            return 0.0
                    return polygon_area(q)

                total += s_d * s_p * _integrate(cells, covered)
    return total / support**2
