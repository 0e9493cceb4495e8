"""Standardized relative-density tests, convex hull correction, the Monte
Carlo randomization test and asymptotic power."""

import math
import statistics
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .altdist import AltSpec
from .digraph import build_digraph
from .errors import DegenerateVariance, InsufficientInteriorPoints, InvalidParam, PCDError
from .geometry import delaunay_triangulate, locate
from .nulldist import Moments, multi_moments, null_moments, var_rho
from .proximity import PcdConfig

__all__ = [
    "TestResult",
    "RandomizationResult",
    "standardized_stat",
    "normal_cdf",
    "normal_quantile",
    "hull_expected_outside",
    "hull_correction",
    "corrected_stat",
    "analyze",
    "randomization_test",
    "asymptotic_power",
]

_SQRT2 = math.sqrt(2.0)
_STD_NORMAL = statistics.NormalDist()


@dataclass
class TestResult:
    family: str
    param: float
    n_used: int
    n_total: int
    n_triangles: int
    p_out: float
    rho: float
    null_mean: float
    null_var_of_rho: float
    asy_var: float
    z: float
    p_seg: float
    p_assoc: float
    hull_expected: float = None
    hull_c: float = None
    z_hull_corrected: float = None
    p_seg_corrected: float = None
    p_assoc_corrected: float = None

    # not a test case, despite the name
    __test__ = False

    def to_dict(self):
        return asdict(self)


def normal_cdf(z):
    """Standard normal distribution function."""
    return 0.5 * math.erfc(-float(z) / _SQRT2)


def normal_quantile(p):
    """Inverse of :func:`normal_cdf` for p in (0, 1)."""
    p = float(p)
    if not 0.0 < p < 1.0:
        raise InvalidParam(f"quantile needs p in (0, 1), got {p}")
    x = _STD_NORMAL.inv_cdf(p)
    # one Newton step against the erfc-based cdf
    dens = math.exp(-0.5 * x * x) / math.sqrt(2 * math.pi)
    if dens > 0:
        x -= (normal_cdf(x) - p) / dens
    return x


def standardized_stat(rho, n, mean, asy_var):
    """sqrt(n) * (rho - mean) / sqrt(asy_var).  ``asy_var`` may be a
    Moments instance, in which case its ``asy_var`` is used."""
    if isinstance(asy_var, Moments):
        asy_var = asy_var.asy_var
    if n < 2:
        raise InvalidParam("standardized statistic needs n >= 2")
    if not asy_var > 0:
        raise DegenerateVariance("asymptotic variance is zero; the statistic is degenerate")
    return math.sqrt(n) * (rho - mean) / math.sqrt(asy_var)


def hull_expected_outside(m):
    """Fitted expected fraction of uniform points outside the hull of m
    uniform points.  The fit exceeds 1 for m < 5."""
    return 1.7932 / m + 1.2229 / math.sqrt(m)


def hull_correction(p_out, m):
    """Signed squared deviation of the observed outside fraction from its
    fitted expectation."""
    if int(m) != m or m < 3:
        raise InvalidParam(f"hull correction needs m >= 3 reference points, got {m}")
    if not 0.0 <= p_out <= 1.0:
        raise InvalidParam(f"p_out must lie in [0, 1], got {p_out}")
    d = p_out - hull_expected_outside(m)
    return math.copysign(d * d, d) if d != 0 else 0.0


def corrected_stat(z, c_ch):
    return z + abs(z) * c_ch


def _as_cfg(cfg):
    if isinstance(cfg, PcdConfig):
        return cfg
    return PcdConfig(*cfg)


def _statistic(x, y, cfg, tri=None):
    tri = tri if tri is not None else delaunay_triangulate(y)
    idx, _ = locate(tri, x)
    inside = idx >= 0
    n_used = int(inside.sum())
    if n_used < 2:
        raise InsufficientInteriorPoints(f"only {n_used} X point(s) inside the convex hull of Y")
    summary = build_digraph(x[inside], tri, cfg)
    base = null_moments(cfg.family, cfg.param)
    mom = base if tri.n_triangles == 1 else multi_moments(tri.weights, base)
    return tri, n_used, summary, mom


def analyze(x_points, y_points, cfg, correct_hull=False):
    """Relative-density test of X against the Delaunay triangulation of Y.

    X points outside the hull of Y are dropped (their fraction is p_out).
    With ``correct_hull`` the z score is adjusted for that fraction."""
    cfg = _as_cfg(cfg)
    x = np.asarray(x_points, dtype=float).reshape(-1, 2)
    y = np.asarray(y_points, dtype=float).reshape(-1, 2)
    if not np.all(np.isfinite(x)):
        raise InvalidParam("X points must be finite")
    tri, n_used, summary, mom = _statistic(x, y, cfg)
    n_total = len(x)
    z = standardized_stat(summary.rho, n_used, mom.mean, mom.asy_var)
    p_out = (n_total - n_used) / n_total
    res = TestResult(
        family=cfg.family,
        param=cfg.param,
        n_used=n_used,
        n_total=n_total,
        n_triangles=tri.n_triangles,
        p_out=p_out,
        rho=summary.rho,
        null_mean=mom.mean,
        null_var_of_rho=var_rho(n_used, mom.var_h12, mom.asy_var),
        asy_var=mom.asy_var,
        z=z,
        p_seg=1.0 - normal_cdf(z),
        p_assoc=normal_cdf(z),
    )
    if correct_hull:
        res.hull_expected = hull_expected_outside(len(y))
        res.hull_c = hull_correction(p_out, len(y))
        zc = corrected_stat(z, res.hull_c)
        res.z_hull_corrected = zc
        res.p_seg_corrected = 1.0 - normal_cdf(zc)
        res.p_assoc_corrected = normal_cdf(zc)
    return res


@dataclass
class RandomizationResult:
    observed: float
    p_left: float
    p_right: float
    n_replicates: int
    n_failed: int
    replicates: np.ndarray = field(repr=False, default=None)


def _rank_pvalues(observed, reps):
    reps = np.asarray(reps, dtype=float)
    less = np.count_nonzero(reps < observed)
    greater = np.count_nonzero(reps > observed)
    ties = len(reps) - less - greater
    total = len(reps) + 1
    # midrank: half of the tied replicates count against the observation
    p_left = (1 + less + 0.5 * ties) / total
    p_right = (1 + greater + 0.5 * ties) / total
    return p_left, p_right


def _labelled_stat(points, y_mask, cfg, correct_hull):
    x, y = points[~y_mask], points[y_mask]
    tri, n_used, summary, mom = _statistic(x, y, cfg)
    z = standardized_stat(summary.rho, n_used, mom.mean, mom.asy_var)
    if correct_hull:
        p_out = (len(x) - n_used) / len(x)
        z = corrected_stat(z, hull_correction(p_out, len(y)))
    return z


def randomization_test(all_points, m, cfg, B, rng, correct_hull=False, threads=1):
    """Monte Carlo randomization test of the class labels.

    ``all_points`` stacks the X sample followed by the Y sample, whose size
    is ``m``.  Each of the B relabelings draws m points without replacement
    as the new Y and recomputes the (optionally hull-corrected) z score.
    Ties with the observed value are split in half (midrank).  Relabelings
    whose Y is degenerate or leaves fewer than two X points inside are
    dropped and counted in ``n_failed``."""
    cfg = _as_cfg(cfg)
    pts = np.asarray(all_points, dtype=float).reshape(-1, 2)
    total = len(pts)
    m = int(m)
    if B < 99:
        raise InvalidParam(f"randomization test needs B >= 99, got {B}")
    if not 3 <= m < total:
        raise InvalidParam(f"need 3 <= m < {total}, got m = {m}")
    mask = np.zeros(total, dtype=bool)
    mask[total - m :] = True
    observed = _labelled_stat(pts, mask, cfg, correct_hull)

    # relabelings are drawn up front so the result does not depend on threads
    picks = [rng.choice(total, size=m, replace=False) for _ in range(int(B))]

    def one(pick):
        msk = np.zeros(total, dtype=bool)
        msk[pick] = True
        try:
            return _labelled_stat(pts, msk, cfg, correct_hull)
        except PCDError:
            return math.nan

    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            reps = np.array(list(pool.map(one, picks)))
    else:
        reps = np.array([one(p) for p in picks])
    good = reps[np.isfinite(reps)]
    p_left, p_right = _rank_pvalues(observed, good)
    return RandomizationResult(observed, p_left, p_right, len(good), len(reps) - len(good), good)


def asymptotic_power(n, cfg, alt, alt_mean, alt_var, alpha=0.05, null=None):
    """Normal-approximation power of the level-alpha test against ``alt``.

    Segregation uses the right tail, association the left.  ``null`` may
    supply Moments (e.g. multi-triangle ones); by default the one-triangle
    null moments of ``cfg`` are used."""
    cfg = _as_cfg(cfg)
    if not isinstance(alt, AltSpec):
        alt = AltSpec(*alt)
    if not alt_var > 0:
        raise DegenerateVariance("alternative variance must be positive")
    if not 0.0 < alpha < 1.0:
        raise InvalidParam(f"alpha must be in (0, 1), got {alpha}")
    mom = null if null is not None else null_moments(cfg.family, cfg.param)
    shift = math.sqrt(n) * (mom.mean - alt_mean)
    sd_null = math.sqrt(max(mom.asy_var, 0.0))
    sd_alt = math.sqrt(alt_var)
    if alt.kind == "seg":
        return 1.0 - normal_cdf((normal_quantile(1 - alpha) * sd_null + shift) / sd_alt)
    return normal_cdf((normal_quantile(alpha) * sd_null + shift) / sd_alt)
