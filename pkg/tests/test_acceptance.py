"""Acceptance criteria 1-12.  A summary line per criterion is printed at the
end of the pytest run (see conftest.py).  Items that are known to disagree
with the reference values are strict xfails, so they stay visible."""

import math
import warnings

import numpy as np
import pytest
from conftest import SQRT3, Y10, record

from pcdtest import altdist, nulldist
from pcdtest.altdist import (
    AltSpec,
    assoc_bounds,
    assoc_cell_value,
    d2mu_assoc_cs,
    d2mu_seg_cs,
    mu_cs_assoc,
    mu_cs_seg,
    pae,
    seg_bounds,
    seg_cell_value,
)
from pcdtest.digraph import build_digraph
from pcdtest.geometry import STANDARD_TRIANGLE, Triangle, barycentric, delaunay_triangulate, to_standard_equilateral
from pcdtest.harness import ExperimentGrid, rho_replicates, simulate_grid
from pcdtest.inference import corrected_stat, hull_correction, hull_expected_outside, normal_quantile
from pcdtest.nulldist import null_moments, var_rho
from pcdtest.proximity import PcdConfig, arc_indicator, arc_matrix
from pcdtest.sampler import make_rng, sample_null_hull, uniform_bary

# ---------------------------------------------------------------- criterion 1

SPOT = [
    ("mu_pe(1)", nulldist.mu_pe, 1, 37 / 216),
    ("mu_pe(2)", nulldist.mu_pe, 2, 5 / 8),
    ("nu_pe(2)", nulldist.nu_pe, 2, 25 / 192),
    ("mu_cs(1)", nulldist.mu_cs, 1, 1 / 6),
    ("nu_cs(1)", nulldist.nu_cs, 1, 7 / 135),
    ("omega_pe(1)", nulldist.omega_pe, 1, 2627 / 11664),
    ("omega_cs(1)", nulldist.omega_cs, 1, 23 / 63),
    pytest.param(
        "nu_pe(1)",
        nulldist.nu_pe,
        1,
        34 / 58320,
        marks=pytest.mark.xfail(
            strict=True,
            reason="the nu_pe polynomial gives 18/58320 at r=1, confirmed by Monte Carlo (criterion 3)",
        ),
    ),
]


@pytest.mark.parametrize("label,fn,arg,want", SPOT)
def test_c01_spot_values(label, fn, arg, want):
    got = fn(arg)
    ok = abs(got - want) <= 1e-9
    record(1, label, ok, f"got {got:.10g}, want {want:.10g}")
    assert ok


# ---------------------------------------------------------------- criterion 2

NULL_BRANCHES = {
    "mu_pe": nulldist.MU_PE_BRANCHES,
    "nu_pe": nulldist.NU_PE_BRANCHES,
    "omega_pe": nulldist.OMEGA_PE_BRANCHES,
    "mu_cs": nulldist.MU_CS_BRANCHES,
    "nu_cs": nulldist.NU_CS_BRANCHES,
    "omega_cs": nulldist.OMEGA_CS_BRANCHES,
}


@pytest.mark.parametrize("name", list(NULL_BRANCHES))
def test_c02_null_continuity(name):
    branches = NULL_BRANCHES[name]
    worst = 0.0
    for (hi, left), (_, right) in zip(branches, branches[1:]):
        bp = 1.0 if hi == nulldist._ONE_PLUS else hi
        worst = max(worst, abs(left(bp) - right(bp)))
    ok = worst <= 1e-9
    record(2, name, ok, f"max jump {worst:.2e}")
    assert ok


SEG_EPS = [0.05, 0.2, 0.3, 0.38, 0.46, 0.5, 0.52]
ASSOC_EPS = [0.02, 0.06, 0.1, 0.13, 0.2, 0.4]


def _tau_jumps(bounds, value, eps):
    out = []
    for (hi, k1), (_, k2) in zip(bounds, bounds[1:]):
        # cells past tau = 1 are not used; that side is routed elsewhere
        if 0 < hi < 1:
            out.append(abs(value(k1, hi, eps) - value(k2, hi, eps)))
    return out


def test_c02_alt_table_tau_breakpoints():
    jumps = []
    for e in SEG_EPS:
        jumps += _tau_jumps(seg_bounds(e), seg_cell_value, e)
    for e in ASSOC_EPS:
        jumps += _tau_jumps(assoc_bounds(e), assoc_cell_value, e)
    worst = max(jumps)
    ok = worst <= 1e-9
    record(2, "alternative tables, tau breakpoints", ok, f"{len(jumps)} breakpoints, max jump {worst:.2e}")
    assert ok


def test_c02_alt_table_eps_breakpoints():
    # the cell used just below each eps breakpoint, evaluated at the
    # breakpoint, against the value routed from the other side
    jumps = []
    taus = np.linspace(0.05, 0.95, 19)
    for bp in [SQRT3 / 5, SQRT3 / 4, 2 * SQRT3 / 7]:
        for t in taus:
            key = altdist._lookup(seg_bounds(bp - 1e-9), t)
            jumps.append(abs(seg_cell_value(key, t, bp) - mu_cs_seg(t, bp)))
    for bp in [SQRT3 / 21, SQRT3 / 12, 2 * SQRT3 / 15]:
        for t in taus:
            key = altdist._lookup(assoc_bounds(bp - 1e-9), t)
            jumps.append(abs(assoc_cell_value(key, t, bp) - mu_cs_assoc(t, bp)))
    worst = max(jumps)
    ok = worst <= 1e-9
    record(2, "alternative tables, eps breakpoints", ok, f"{len(jumps)} checks, max jump {worst:.2e}")
    assert ok


def test_c02_alt_table_tau_one():
    # tau < 1 tables against the tau >= 1 route (table or exact cubature)
    jumps = []
    for e in SEG_EPS:
        k = altdist._lookup(seg_bounds(e), 1.0 - 1e-12)
        jumps.append(abs(seg_cell_value(k, 1.0, e) - mu_cs_seg(1.0, e)))
    for e in ASSOC_EPS:
        k = altdist._lookup(assoc_bounds(e), 1.0 - 1e-12)
        jumps.append(abs(assoc_cell_value(k, 1.0, e) - mu_cs_assoc(1.0, e)))
    worst = max(jumps)
    ok = worst <= 1e-9
    record(2, "alternative tables, tau = 1", ok, f"max jump {worst:.2e}")
    assert ok


# ---------------------------------------------------------------- criterion 3

MC_N = 10**6


def _kernel_stats(family, param, seed):
    rng = make_rng(seed)
    x1, x2, x3 = uniform_bary(MC_N, rng), uniform_bary(MC_N, rng), uniform_bary(MC_N, rng)
    a12 = arc_indicator(x1, x2, family, param).astype(float)
    h12 = a12 + arc_indicator(x2, x1, family, param)
    h13 = arc_indicator(x1, x3, family, param).astype(float) + arc_indicator(x3, x1, family, param)
    mu, mu_se = a12.mean(), a12.std() / math.sqrt(MC_N)
    m = h12.mean()
    sq = (h12 - m) ** 2
    prod = (h12 - m) * (h13 - h13.mean())
    return (
        (mu, mu_se),
        (sq.mean(), sq.std() / math.sqrt(MC_N)),
        (prod.mean(), prod.std() / math.sqrt(MC_N)),
    )


@pytest.mark.parametrize("family,param", [("pe", 1), ("pe", 1.5), ("pe", 2), ("pe", 3), ("cs", 0.5), ("cs", 1), ("cs", 2), ("cs", 5)])
def test_c03_monte_carlo_moments(family, param):
    mom = null_moments(family, param)
    seed = 3000 + int(param * 10) + (0 if family == "pe" else 500)
    (mu, mu_se), (om, om_se), (nu, nu_se) = _kernel_stats(family, param, seed)
    zs = [(mu - mom.mean) / mu_se, (om - mom.var_h12) / om_se, (nu - mom.asy_var) / nu_se]
    ok = all(abs(z) <= 4 for z in zs)
    record(3, f"{family}({param})", ok, "z-scores mu/omega/nu = " + ", ".join(f"{z:+.2f}" for z in zs))
    assert ok


# ---------------------------------------------------------------- criterion 4


def _argmax(fn, grid):
    vals = [fn(x) for x in grid]
    i = int(np.argmax(vals))
    return grid[i], vals[i]


@pytest.mark.parametrize(
    "label,fn,grid,where,value",
    [
        ("nu_pe", nulldist.nu_pe, np.arange(1.0, 5.0 + 1e-9, 1e-3), 2.045, 0.1305),
        ("nu_cs", nulldist.nu_cs, np.arange(1e-3, 10.0 + 1e-9, 1e-3), 4.005, 0.1767),
        ("omega_pe", nulldist.omega_pe, np.arange(1.0, 5.0 + 1e-9, 1e-3), 1.66, 0.6796),
    ],
)
def test_c04_extrema(label, fn, grid, where, value):
    x, v = _argmax(fn, grid)
    ok = abs(x - where) <= 0.01 and abs(v - value) <= 0.001
    record(4, label, ok, f"argmax {x:.3f}, max {v:.5f}")
    assert ok


# ---------------------------------------------------------------- criterion 5

SIZE_SEED = 1
SIZE_LO, SIZE_HI = 0.0464, 0.0536


def _size(family, param, nmc, seed=SIZE_SEED):
    grid = ExperimentGrid(family, (param,), (100,), nmc=nmc, seed=seed, side="seg")
    return simulate_grid(grid, threads=1)[0]


@pytest.mark.slow
@pytest.mark.xfail(
    strict=True,
    reason="Monte Carlo noise: at N_mc=10^4 the band is +-1.6 SE; the fixed seed lands at 0.0539 "
    "while the long-run size is about 0.0513 (see the companion test)",
)
def test_c05_size_pe_r2():
    r = _size("pe", 2.0, 10000)
    ok = SIZE_LO <= r.estimate <= SIZE_HI
    record(5, "PE r=2 size", ok, f"{r.estimate:.4f} +- {r.se:.4f}")
    assert ok


@pytest.mark.slow
def test_c05_size_pe_r2_long_run():
    r = _size("pe", 2.0, 100000)
    ok = SIZE_LO <= r.estimate <= SIZE_HI
    record(5, "PE r=2 size, N_mc=10^5 (companion)", ok, f"{r.estimate:.4f} +- {r.se:.4f}")
    assert ok


@pytest.mark.slow
def test_c05_size_cs_tau5():
    r = _size("cs", 5.0, 10000)
    ok = SIZE_LO <= r.estimate <= SIZE_HI
    record(5, "CS tau=5 size", ok, f"{r.estimate:.4f} +- {r.se:.4f}")
    assert ok


# ---------------------------------------------------------------- criterion 6

# independent Monte Carlo (Cartesian rejection sampling, separate arc code,
# 10^4 replicates) of the CS tau=8 power under segregation eps=sqrt(3)/8
CS8_POWER_ORACLE = 0.9096


@pytest.mark.slow
def test_c06_power_pe_degenerate():
    alt = AltSpec("seg", SQRT3 / 4)
    flagged = simulate_grid(ExperimentGrid("pe", (2.0,), (100,), (alt.epsilon,), "seg", 10000, 0.05, 1), threads=1)[0]
    # simulate anyway, without the degenerate short cut
    rhos = rho_replicates("pe", 2.0, 100, 10000, 1, 0, alt)
    mom = null_moments("pe", 2.0)
    z = math.sqrt(100) * (rhos - mom.mean) / math.sqrt(mom.asy_var)
    power = float(np.mean(z > normal_quantile(0.95)))
    ok = flagged.degenerate and flagged.estimate >= 0.99 and power >= 0.99
    record(6, "PE r=2 seg sqrt(3)/4 power", ok, f"simulated {power:.4f}, flagged degenerate {flagged.degenerate}")
    assert ok


@pytest.mark.slow
def test_c06_power_cs_tau8():
    grid = ExperimentGrid("cs", (8.0,), (100,), (SQRT3 / 8,), "seg", 10000, 0.05, 1)
    r = simulate_grid(grid, threads=1)[0]
    ok = abs(r.estimate - CS8_POWER_ORACLE) <= 0.05
    record(6, "CS tau=8 seg sqrt(3)/8 power", ok, f"{r.estimate:.4f} vs oracle {CS8_POWER_ORACLE}")
    assert ok


@pytest.mark.slow
def test_c06_power_shape_in_tau():
    grid = ExperimentGrid("cs", (0.5, 2.0, 8.0, 12.0), (100,), (SQRT3 / 8,), "seg", 2000, 0.05, 6)
    p = [r.estimate for r in simulate_grid(grid, threads=1)]
    ok = p[0] < p[1] < p[2] and abs(p[3] - p[2]) < 0.1
    record(6, "CS power rises then levels off in tau", ok, ", ".join(f"{v:.3f}" for v in p))
    assert ok


# ---------------------------------------------------------------- criterion 7

PAE_VALUES = [
    ("PAE_CS^S(1)", lambda: pae("cs", "seg", 1), 960 / 7),
    ("PAE_CS^A(1)", lambda: pae("cs", "assoc", 1), 61440 / 7),
    ("lim tau->0 PAE_CS^A", lambda: pae("cs", "assoc", 1e-9), 72000 / 7),
    pytest.param(
        "PAE_PE^S(1)",
        lambda: pae("pe", "seg", 1),
        160 / 7,
        marks=pytest.mark.xfail(strict=True, reason="second derivative 2/27 and nu 1/3240 give 160/9"),
    ),
    pytest.param(
        "PAE_PE^A(1)",
        lambda: pae("pe", "assoc", 1),
        174240 / 17,
        marks=pytest.mark.xfail(strict=True, reason="reference value uses nu=34/58320; with 18/58320 it is 19360"),
    ),
]


@pytest.mark.parametrize("label,fn,want", PAE_VALUES)
def test_c07_pae_values(label, fn, want):
    got = fn()
    ok = abs(got / want - 1) <= 1e-6
    record(7, label, ok, f"got {got:.6f}, want {want:.6f}")
    assert ok


def test_c07_cs_seg_local_min():
    grid = np.arange(1.3, 2.2, 1e-4)
    vals = [pae("cs", "seg", t) for t in grid]
    i = int(np.argmin(vals))
    ok = abs(grid[i] - 1.62) <= 0.02 and abs(vals[i] / 112.70 - 1) <= 0.01
    record(7, "CS seg local min", ok, f"{vals[i]:.3f} at {grid[i]:.4f}")
    assert ok


@pytest.mark.xfail(strict=True, reason="with nu_pe(1)=18/58320 the PE association PAE peaks at r=1 with 19360")
def test_c07_pe_assoc_global_max():
    grid = np.arange(1.0, 5.0, 1e-3)
    vals = [pae("pe", "assoc", r) for r in grid]
    i = int(np.argmax(vals))
    ok = abs(grid[i] - 1.01) <= 0.02 and abs(vals[i] / 10399.77 - 1) <= 0.01
    record(7, "PE assoc global max", ok, f"{vals[i]:.2f} at {grid[i]:.3f}")
    assert ok


# ---------------------------------------------------------------- criterion 8

FD_STEP = 1e-5


@pytest.mark.parametrize("tau", [0.5, 1.0, 2.0, 5.0])
@pytest.mark.parametrize("kind", ["seg", "assoc"])
def test_c08_finite_difference(kind, tau):
    f, d2 = (mu_cs_seg, d2mu_seg_cs) if kind == "seg" else (mu_cs_assoc, d2mu_assoc_cs)
    h = FD_STEP
    fd = (f(tau, 2 * h) - 2 * f(tau, h) + f(tau, 0.0)) / h**2
    rel = abs(fd / d2(tau) - 1)
    ok = rel <= 1e-3
    record(8, f"{kind} tau={tau}", ok, f"rel err {rel:.1e}")
    assert ok


# ---------------------------------------------------------------- criterion 9


def test_c09_degenerate_segregation():
    alt = AltSpec("seg", SQRT3 / 4)
    rhos = rho_replicates("pe", 2.0, 40, 100, 9, 0, alt)
    ok = bool(np.all(rhos == 1.0)) and altdist.is_degenerate_seg_pe(2.0, alt.epsilon)
    record(9, "rho = 1 in every replicate", ok, f"{int(np.sum(rhos == 1.0))}/100")
    assert ok


# ---------------------------------------------------------------- criterion 10

TRIANGLES = [
    [(0, 0), (7, 1), (2, 5)],
    [(-3, 2), (10, 2.5), (-2.5, 2.9)],
    [(1, 1), (1.2, -4), (6, 8)],
]


@pytest.mark.parametrize("family,param", [("pe", 1.5), ("cs", 1.0)])
@pytest.mark.parametrize("k", range(3))
def test_c10_geometry_invariance(family, param, k):
    tri = Triangle(TRIANGLES[k])
    b = uniform_bary(300, make_rng(10, k))
    pts_e = b @ STANDARD_TRIANGLE.vertices
    pts_t = to_standard_equilateral(tri).inverse()(pts_e)
    a_e = arc_matrix(barycentric(STANDARD_TRIANGLE, pts_e), barycentric(STANDARD_TRIANGLE, pts_e), family, param)
    bt = barycentric(tri, pts_t)
    a_t = arc_matrix(bt, bt, family, param)
    ok = bool(np.array_equal(a_e, a_t))
    record(10, f"{family} triangle {k}", ok, f"{int(np.sum(a_e != a_t))} differing arcs")
    assert ok


# ---------------------------------------------------------------- criterion 11

C11_N, C11_REPS = 500, 10000


@pytest.fixture(scope="module")
def c11_rhos():
    tri = delaunay_triangulate(Y10)
    cfg = PcdConfig("pe", 2.0)
    rhos = np.empty(C11_REPS)
    for j in range(C11_REPS):
        x = sample_null_hull(tri, C11_N, make_rng(11, j))
        rhos[j] = build_digraph(x, tri, cfg).rho
    return tri, nulldist.multi_moments(tri.weights, null_moments("pe", 2.0)), rhos


def _var_se(r):
    v = r.var(ddof=1)
    return v, math.sqrt((np.mean((r - r.mean()) ** 4) - v * v) / len(r))


@pytest.mark.slow
def test_c11_layout(c11_rhos):
    tri, _, _ = c11_rhos
    ok = tri.n_triangles == 13 == 2 * len(Y10) - 2 - len(tri.hull)
    record(11, "J = 13 layout", ok, f"J = {tri.n_triangles}, hull {len(tri.hull)}")
    assert ok


@pytest.mark.slow
def test_c11_mean(c11_rhos):
    _, m, r = c11_rhos
    z = (r.mean() - m.mean) / (r.std(ddof=1) / math.sqrt(len(r)))
    ok = abs(z) <= 4
    record(11, "mean of rho", ok, f"z = {z:+.2f}")
    assert ok


@pytest.mark.slow
@pytest.mark.xfail(
    strict=True,
    reason="nu/n drops the O(1/n^2) term, about 7% of Var[rho] at n=500, "
    "larger than 4 SE of a 10^4-replicate variance estimate",
)
def test_c11_variance_asymptotic(c11_rhos):
    _, m, r = c11_rhos
    v, se = _var_se(r)
    z = (v - m.asy_var / C11_N) / se
    ok = abs(z) <= 4
    record(11, "variance vs nu/n", ok, f"z = {z:+.2f}")
    assert ok


@pytest.mark.slow
def test_c11_variance_exact(c11_rhos):
    _, m, r = c11_rhos
    v, se = _var_se(r)
    z = (v - var_rho(C11_N, m.var_h12, m.asy_var)) / se
    ok = abs(z) <= 4
    record(11, "variance vs exact finite-n form", ok, f"z = {z:+.2f}")
    assert ok


def test_c11_jensen():
    rng = make_rng(1111)
    bad = 0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for _ in range(1000):
            y = rng.random((int(rng.integers(4, 40)), 2))
            w = delaunay_triangulate(y).weights
            if np.sum(w**3) < np.sum(w**2) ** 2 - 1e-15:
                bad += 1
    ok = bad == 0
    record(11, "Jensen on 1000 random Y", ok, f"{bad} violations")
    assert ok


# ---------------------------------------------------------------- criterion 12


def test_c12_hull_correction():
    checks = []
    # the fitted expectation exceeds 1 for m < 5, so start at 5
    for m in (5, 8, 10, 50):
        checks.append(hull_correction(hull_expected_outside(m), m) == 0.0)
    # more X outside than expected: push toward segregation (larger z)
    for z in (-2.0, -0.3, 0.5, 2.0):
        c = hull_correction(0.9, 10)
        checks.append(c > 0 and corrected_stat(z, c) > z)
        c = hull_correction(0.1, 10)
        checks.append(c < 0 and corrected_stat(z, c) < z)
    ok = all(checks)
    record(12, "zero at expectation, directional shifts", ok, f"{sum(checks)}/{len(checks)}")
    assert ok
