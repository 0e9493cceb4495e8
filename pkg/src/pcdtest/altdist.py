"""Arc probabilities under the segregation and association alternatives,
their second derivatives at eps = 0, and Pitman asymptotic efficiency.

Under segregation with parameter eps, X is uniform on the standard
equilateral triangle with the three corner triangles
``b_j >= 1 - 2*eps/sqrt(3)`` removed.  Under association X is uniform on the
union of those corners for ``sqrt(3)/3 - eps``.

The central-similarity means come from coefficient tables routed by
(eps, tau) cell.  Cells the tables do not cover (most of tau >= 1, and a thin
band near eps = sqrt(3)/3 where the printed forms lose all precision) are
filled by exact piecewise cubature.
"""

import math
from dataclasses import dataclass

from . import _cs_alt_tables as _tables
from ._arcprob import arc_probability
from .errors import DegenerateVariance, InvalidParam
from .nulldist import mu_cs, null_moments, weight_sums
from .proximity import check_param, normalize_family

__all__ = [
    "AltSpec",
    "mu_cs_seg",
    "mu_cs_assoc",
    "d2mu_seg_pe",
    "d2mu_assoc_pe",
    "d2mu_seg_cs",
    "d2mu_assoc_cs",
    "pae",
    "pae_multi",
    "is_degenerate_seg_pe",
]

SQRT3 = math.sqrt(3.0)
EPS_MAX = SQRT3 / 3.0

# below this distance to sqrt(3)/3 the regime-4 segregation forms cancel badly
_SEG_NEAR_TOP = 0.05

_KIND_ALIASES = {
    "seg": "seg",
    "segregation": "seg",
    "s": "seg",
    "assoc": "assoc",
    "association": "assoc",
    "a": "assoc",
}


def normalize_kind(kind):
    key = str(kind).strip().lower()
    if key not in _KIND_ALIASES:
        raise InvalidParam(f"unknown alternative {kind!r}; expected 'seg' or 'assoc'")
    return _KIND_ALIASES[key]


def check_eps(eps, allow_zero=False):
    try:
        e = float(eps)
    except (TypeError, ValueError):
        raise InvalidParam(f"epsilon must be a real number, got {eps!r}") from None
    lo_ok = e >= 0.0 if allow_zero else e > 0.0
    if not (lo_ok and e < EPS_MAX):
        lo = "[0" if allow_zero else "(0"
        raise InvalidParam(f"epsilon must lie in {lo}, sqrt(3)/3), got {e}")
    return e


@dataclass(frozen=True)
class AltSpec:
    kind: str
    epsilon: float

    def __post_init__(self):
        object.__setattr__(self, "kind", normalize_kind(self.kind))
        object.__setattr__(self, "epsilon", check_eps(self.epsilon))


# --- routing ---------------------------------------------------------------


def seg_bounds(eps):
    """(upper tau bound, table key) pairs of the segregation cells at eps,
    or None when eps is in the band handled by cubature."""
    if eps < SQRT3 / 5:
        return [(1 - SQRT3 * eps, "11"), (1.0, "12")]
    if eps < SQRT3 / 4:
        return [(1 - SQRT3 * eps, "11"), (SQRT3 / (2 * eps) - 1.5, "12"), (1.0, "23")]
    if eps > EPS_MAX - _SEG_NEAR_TOP:
        return None
    bounds = [
        (1 - SQRT3 * eps, "31"),
        (SQRT3 / (2 * eps) - 1.5, "32"),
        (SQRT3 / eps - 3, "33"),
        (4 * (1 - SQRT3 * eps), "34"),
    ]
    if eps < 2 * SQRT3 / 7:
        bounds.append((1.0, "35"))
    else:
        k = (1 - SQRT3 * eps) / (4 * eps - SQRT3)
        bounds += [
            (SQRT3 * k, "35"),
            (2 * (SQRT3 / eps - 3), "46"),
            (2 * SQRT3 * k, "47"),
            (math.inf, "48"),
        ]
    return bounds


def assoc_bounds(eps):
    """(upper tau bound, table key) pairs of the association cells at eps."""
    a = SQRT3 * eps
    if eps < SQRT3 / 21:
        his = [
            3 * a / (2 * (1 - a)),
            2 * a / (1 - 2 * a),
            3 * a / (1 - a),
            3 * a / (1 - 4 * a),
            6 * a / (1 - a),
            6 * a / (1 - 4 * a),
            math.inf,
        ]
        keys = ["11", "12", "13", "14", "15", "16", "17"]
    elif eps < SQRT3 / 12:
        his = [3 * a / (2 * (1 - a)), 2 * a / (1 - 2 * a), 3 * a / (1 - a), math.inf]
        keys = ["11", "12", "13", "14"]
    elif eps < 2 * SQRT3 / 15:
        his = [3 * a / (2 * (1 - a)), math.inf]
        keys = ["31", "32"]
    else:
        his, keys = [math.inf], ["31"]
    return list(zip(his, keys))


def _lookup(bounds, tau):
    for hi, key in bounds:
        if tau < hi:
            return key
    return bounds[-1][1]


def _seg_cell(tau, eps):
    """Table key for the segregation mean, or None for the cubature path."""
    if tau >= 1.0:
        key = "A2" if eps < SQRT3 / (tau + 4) else None
    else:
        bounds = seg_bounds(eps)
        key = None if bounds is None else _lookup(bounds, tau)
    if key is not None and _tables.near_pole(_tables.SEG_CELLS[key], tau, eps):
        return None
    return key


def _assoc_cell(tau, eps):
    if tau >= 1.0:
        return None
    key = _lookup(assoc_bounds(eps), tau)
    return None if _tables.near_pole(_tables.ASSOC_CELLS[key], tau, eps) else key


def seg_cell_value(key, tau, eps):
    return _tables.evaluate(_tables.SEG_CELLS[key], tau, eps)


def assoc_cell_value(key, tau, eps):
    return _tables.evaluate(_tables.ASSOC_CELLS[key], tau, eps)


def mu_cs_seg(tau, eps):
    """Arc probability of the central-similarity PCD under segregation."""
    t = check_param("cs", tau)
    e = check_eps(eps, allow_zero=True)
    if e == 0.0 or math.isinf(t):
        return mu_cs(t)
    key = _seg_cell(t, e)
    if key is None:
        return arc_probability("cs", t, "seg", e)
    return seg_cell_value(key, t, e)


def mu_cs_assoc(tau, eps):
    """Arc probability of the central-similarity PCD under association."""
    t = check_param("cs", tau)
    e = check_eps(eps, allow_zero=True)
    if e == 0.0 or math.isinf(t):
        return mu_cs(t)
    key = _assoc_cell(t, e)
    if key is None:
        return arc_probability("cs", t, "assoc", e)
    return assoc_cell_value(key, t, e)


# --- second derivatives at eps = 0 ------------------------------------------


def d2mu_seg_pe(r):
    r = check_param("pe", r)
    if math.isinf(r):
        return 8.0
    r2 = r * r
    if r < 1.5:
        return -8.0 / 3.0 + 74.0 * r2 / 27.0
    if r < 2.0:
        return -2.0 * (r2 - 4 * r + 2) * (r2 + 4 * r - 6) / r2
    return 8.0 * (r2 - 1) / r2


def d2mu_assoc_pe(r):
    r = check_param("pe", r)
    if math.isinf(r):
        return 0.0
    r2 = r * r
    if r < 4.0 / 3.0:
        return -22.0 * r2 / 9.0 + 192.0 / r - 96.0 / r2 - 96.0
    if r < 1.5:
        return -22.0 * r2 / 9.0 + 32.0 / r2 - 24.0
    if r < 2.0:
        return -6.0 * r2 - 384.0 / r + 248.0 / r2 + 144.0
    return -40.0 / r2


def d2mu_seg_cs(tau):
    t = check_param("cs", tau)
    if math.isinf(t):
        return 8.0
    if t < 1.0:
        return 8.0 * t * t / 3.0
    return 8.0 * t / (2 + t)


def d2mu_assoc_cs(tau):
    t = check_param("cs", tau)
    if math.isinf(t):
        return 0.0
    if t < 1.0:
        return -16.0 * t * t * (2 * t * t + 5 * t + 5) / ((2 * t + 1) * (t + 2))
    return -48.0 * (3 * t + 1) / ((2 * t + 1) * (t + 2))


_D2 = {
    ("pe", "seg"): d2mu_seg_pe,
    ("pe", "assoc"): d2mu_assoc_pe,
    ("cs", "seg"): d2mu_seg_cs,
    ("cs", "assoc"): d2mu_assoc_cs,
}


def second_derivative(family, kind, param):
    return _D2[(normalize_family(family), normalize_kind(kind))](param)


def pae(family, kind, param):
    """Pitman asymptotic efficiency (squared second derivative over the
    asymptotic variance) in a single triangle."""
    d2 = second_derivative(family, kind, param)
    nu = null_moments(family, param).asy_var
    if nu <= 0.0:
        raise DegenerateVariance(f"asymptotic variance is zero at parameter {param}")
    return d2 * d2 / nu


def pae_multi(family, kind, param, weights):
    """PAE over a triangulation with area weights ``weights``."""
    s2, s3 = weight_sums(weights)
    d2 = second_derivative(family, kind, param)
    m = null_moments(family, param)
    denom = m.asy_var * s3 + 4 * m.mean**2 * max(s3 - s2 * s2, 0.0)
    if denom <= 0.0:
        raise DegenerateVariance("multi-triangle asymptotic variance is zero")
    return (d2 * s2) ** 2 / denom


def is_degenerate_seg_pe(r, eps):
    """True when the PE digraph is complete almost surely under segregation:
    every support point's region covers the whole support."""
    r = check_param("pe", r)
    e = check_eps(eps)
    if e < SQRT3 / 4:
        threshold = SQRT3 / (2 * e)
    else:
        threshold = (SQRT3 - 2 * e) / e
    # thresholds like sqrt(3)/(2*eps) at eps = sqrt(3)/4 are not exact in floating point
    return r >= threshold * (1 - 1e-12)
