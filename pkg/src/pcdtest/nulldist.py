"""Null moments of the relative density for uniform data in one triangle.

``mean`` is the arc probability P(X2 in N(X1)), ``asy_var`` is
Cov[h12, h13] (the asymptotic variance of sqrt(n) * rho) and ``var_h12`` is
the variance of the pair kernel.  The piecewise rational functions are stored
as integer coefficient lists, highest degree first, and evaluated in Horner
form.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import InvalidWeights, TooFewPoints
from .proximity import check_param, normalize_family

__all__ = [
    "Moments",
    "mu_pe",
    "nu_pe",
    "omega_pe",
    "mu_cs",
    "nu_cs",
    "omega_cs",
    "null_moments",
    "var_rho",
    "multi_moments",
    "validate_weights",
]


@dataclass(frozen=True)
class Moments:
    mean: float
    asy_var: float
    var_h12: float


def _horner(coeffs, x):
    acc = 0.0
    for c in coeffs:
        acc = acc * x + c
    return acc


# --- branch tables: (upper bound, function), highest degree first ---------

_NU_PE_1 = [3007, -13824, 898, 77760, -117953, 48888, -24246, 60480, -38880, 0, 3888]
_NU_PE_2 = [5467, -37800, 61912, 0, 46588, -191520, 13608, 241920, -155520, 0, 15552]
_NU_PE_3 = [7, -72, 312, 0, -5332, 15072, 13704, -139264, 273600, -242176, 103232, -27648, 8640]
_NU_PE_4 = [15, 0, -11, -48, 25]

_OM_PE_1 = [1369, 4107, 902, -78084, 161784, -182736, -23328, 155520, -55296]
_OM_PE_2 = [1369, 4107, 9650, -98496, 132624, -79056, -57888, 72576]
_OM_PE_3 = [1, 3, -62, 0, 968, -1704, -1824, 5424, -1168, -3856, 2208]
_OM_PE_4 = [3, 3, 3, -13]


def _pe(r):
    return check_param("pe", r)


def _cs(tau):
    return check_param("cs", tau)


def _pick(branches, x):
    # branches: (upper bound, function), half-open [previous bound, upper)
    for hi, f in branches:
        if x < hi:
            return f(x)
    return branches[-1][1](x)


MU_PE_BRANCHES = (
    (1.5, lambda r: 37.0 * r * r / 216.0),
    (2.0, lambda r: _horner([-1, 0, 32, -64, 36], r) / (8.0 * r * r)),
    (math.inf, lambda r: 1.0 - 1.5 / (r * r)),
)

NU_PE_BRANCHES = (
    (4.0 / 3.0, lambda r: _horner(_NU_PE_1, r) / (58320.0 * r**4)),
    (1.5, lambda r: _horner(_NU_PE_2, r) / (233280.0 * r**4)),
    (2.0, lambda r: -_horner(_NU_PE_3, r) / (960.0 * r**6)),
    (math.inf, lambda r: _horner(_NU_PE_4, r) / (15.0 * r**6)),
)

OMEGA_PE_BRANCHES = (
    (4.0 / 3.0, lambda r: -_horner(_OM_PE_1, r) / (11664.0 * (r + 2) * (r + 1) * r * r)),
    (1.5, lambda r: -_horner(_OM_PE_2, r) / (11664.0 * (r + 2) * (r + 1) * r)),
    (2.0, lambda r: -_horner(_OM_PE_3, r) / (16.0 * (r + 2) * (r + 1) * r**4)),
    (math.inf, lambda r: _horner(_OM_PE_4, r) / (r**4 * (r + 1))),
)

_NU_CS_LO = [6, -3, -25, 1, 49, 14]
_NU_CS_HI = [168, 886, 1122, 45, -470, -114, 48, 16]

# the tau <= 1 branches are closed on the right, hence nextafter
_ONE_PLUS = math.nextafter(1.0, 2.0)

MU_CS_BRANCHES = (
    (_ONE_PLUS, lambda t: t * t / 6.0),
    (math.inf, lambda t: t * (4 * t - 1) / (2.0 * (1 + 2 * t) * (2 + t))),
)

NU_CS_BRANCHES = (
    (_ONE_PLUS, lambda t: t**4 * _horner(_NU_CS_LO, t) / (45.0 * (t + 1) * (2 * t + 1) * (t + 2))),
    (math.inf, lambda t: _horner(_NU_CS_HI, t) / (5.0 * (2 * t + 1) ** 4 * (t + 2) ** 4)),
)

OMEGA_CS_BRANCHES = (
    (0.5, lambda t: -_horner([1, 7, -5, -15], t) * t * t / (9.0 * (t + 3))),
    (1.0, lambda t: -_horner([2, 11, 9, -33, -81], t) * t * t / (9.0 * (t + 3) * (2 * t + 5))),
    (
        math.inf,
        lambda t: 2.0 * _horner([22, 151, 244, 12, -15], t) * t
        / ((t + 2) ** 2 * (2 * t + 1) ** 2 * (t + 3) * (2 * t + 5)),
    ),
)


def mu_pe(r):
    """Arc probability for the proportional-edge map with expansion r."""
    r = _pe(r)
    return 1.0 if math.isinf(r) else _pick(MU_PE_BRANCHES, r)


def nu_pe(r):
    """Cov[h12, h13] for the proportional-edge map."""
    r = _pe(r)
    return 0.0 if math.isinf(r) else _pick(NU_PE_BRANCHES, r)


def omega_pe(r):
    """Var[h12] for the proportional-edge map."""
    r = _pe(r)
    return 0.0 if math.isinf(r) else _pick(OMEGA_PE_BRANCHES, r)


def mu_cs(tau):
    """Arc probability for the central-similarity map with expansion tau."""
    t = _cs(tau)
    return 1.0 if math.isinf(t) else _pick(MU_CS_BRANCHES, t)


def nu_cs(tau):
    """Cov[h12, h13] for the central-similarity map."""
    t = _cs(tau)
    return 0.0 if math.isinf(t) else _pick(NU_CS_BRANCHES, t)


def omega_cs(tau):
    """Var[h12] for the central-similarity map."""
    t = _cs(tau)
    return 0.0 if math.isinf(t) else _pick(OMEGA_CS_BRANCHES, t)


_TABLE = {
    "pe": (mu_pe, nu_pe, omega_pe),
    "cs": (mu_cs, nu_cs, omega_cs),
}


def null_moments(family, param):
    """Moments for one triangle under the uniform null."""
    mu, nu, om = _TABLE[normalize_family(family)]
    return Moments(mu(param), nu(param), om(param))


def var_rho(n, var_h12, cov):
    """Exact variance of the relative density of n iid points."""
    n = int(n)
    if n < 2:
        raise TooFewPoints("variance of rho needs n >= 2")
    if cov < 0:
        warnings.warn(f"negative covariance {cov:g} clamped to 0", RuntimeWarning, stacklevel=2)
        cov = 0.0
    if var_h12 < 0:
        warnings.warn(f"negative kernel variance {var_h12:g} clamped to 0", RuntimeWarning, stacklevel=2)
        var_h12 = 0.0
    return (var_h12 / 2.0 + (n - 2) * cov) / (n * (n - 1.0))


def validate_weights(weights, tol=1e-9):
    w = np.asarray(weights, dtype=float).ravel()
    if w.size == 0:
        raise InvalidWeights("weights are empty")
    if not np.all(np.isfinite(w)) or np.any(w < 0):
        raise InvalidWeights("weights must be finite and non-negative")
    if abs(w.sum() - 1.0) > tol:
        raise InvalidWeights(f"weights sum to {w.sum():.15g}, not 1")
    return w


def weight_sums(weights):
    w = validate_weights(weights)
    return float(np.sum(w**2)), float(np.sum(w**3))


def multi_moments(weights, base):
    """Moments of the relative density over a triangulation with area weights.

    Arcs only join points of the same triangle, so the arc probability is
    scaled by sum w^2 and the covariance picks up a between-triangle term."""
    s2, s3 = weight_sums(weights)
    mu = base.mean
    jensen = max(s3 - s2 * s2, 0.0)
    return Moments(
        mu * s2,
        base.asy_var * s3 + 4 * mu * mu * jensen,
        s2 * (base.var_h12 + 4 * mu * mu) - 4 * mu * mu * s2 * s2,
    )
