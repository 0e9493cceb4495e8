"""Monte Carlo estimates of empirical size and power in one triangle.

Every replicate draws its points from its own substream
``make_rng(seed, (cell, replicate))``, so results do not depend on the
number of worker threads or on the order in which cells finish.
"""

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .altdist import AltSpec, check_eps, is_degenerate_seg_pe, normalize_kind
from .digraph import count_arcs_batch
from .errors import PCDError
from .inference import normal_quantile
from .nulldist import null_moments
from .proximity import PcdConfig
from .sampler import alt_bary, make_rng, uniform_bary

__all__ = ["ExperimentGrid", "CellResult", "simulate_cell", "simulate_grid", "rho_replicates"]

# replicates per vectorized arc-count batch
_BATCH = 128


@dataclass(frozen=True)
class ExperimentGrid:
    family: str
    params: tuple
    ns: tuple
    eps: tuple = (0.0,)
    kind: str = "null"
    nmc: int = 10000
    alpha: float = 0.05
    seed: int = 0
    side: str = "seg"

    def __post_init__(self):
        if self.nmc < 100:
            raise ValueError(f"nmc must be at least 100, got {self.nmc}")
        if not 0 < self.alpha < 1:
            raise ValueError(f"alpha must be in (0, 1), got {self.alpha}")

    def cells(self):
        out = []
        for p in self.params:
            for n in self.ns:
                for e in self.eps if self.kind != "null" else (0.0,):
                    out.append((p, n, e))
        return out


@dataclass
class CellResult:
    index: int
    family: str
    param: float
    n: int
    eps: float
    kind: str
    side: str
    nmc: int
    estimate: float
    se: float
    mean_rho: float = math.nan
    degenerate: bool = False
    error: str = ""
    rhos: np.ndarray = field(default=None, repr=False)


def rho_replicates(family, param, n, nmc, seed, cell=0, alt=None, threads=1):
    """Relative densities of ``nmc`` samples of size n in one triangle under
    the null (alt=None) or an AltSpec."""
    rhos = np.empty(nmc)

    def run(start):
        stop = min(start + _BATCH, nmc)
        batch = np.empty((stop - start, n, 3))
        for j in range(start, stop):
            rng = make_rng(seed, (cell, j))
            batch[j - start] = uniform_bary(n, rng) if alt is None else alt_bary(alt, n, rng)
        arcs = count_arcs_batch(batch, family, param)
        rhos[start:stop] = arcs / (n * (n - 1.0))

    starts = range(0, nmc, _BATCH)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(run, starts))
    else:
        for s in starts:
            run(s)
    return rhos


def simulate_cell(index, family, param, n, eps, kind, nmc, alpha, seed, side="seg", keep_rhos=False, threads=1):
    """Rejection rate of the level-alpha one-sided test for one grid cell.

    ``side`` 'seg' rejects for large z, 'assoc' for small z.  Under the null
    the rate is the empirical size, otherwise the empirical power."""
    side = normalize_kind(side)
    res = CellResult(index, "", float(param), int(n), float(eps), kind, side, int(nmc), math.nan, math.nan)
    try:
        cfg = PcdConfig(family, param)
        res.family = cfg.family
        alt = None
        if kind != "null":
            alt = AltSpec(kind, check_eps(eps))
            res.kind = alt.kind
        if alt is not None and alt.kind == "seg" and cfg.family == "pe" and is_degenerate_seg_pe(cfg.param, alt.epsilon):
            # complete digraph almost surely: rho = 1 and the test always rejects
            res.degenerate = True
            res.estimate, res.se, res.mean_rho = 1.0, 0.0, 1.0
            return res
        mom = null_moments(cfg.family, cfg.param)
        if not mom.asy_var > 0:
            res.degenerate = True
            res.error = "zero asymptotic variance"
            return res
        if n < 2:
            raise PCDError("n must be at least 2")
        rhos = rho_replicates(cfg.family, cfg.param, int(n), int(nmc), seed, index, alt, threads)
        z = math.sqrt(n) * (rhos - mom.mean) / math.sqrt(mom.asy_var)
        if side == "seg":
            rej = z > normal_quantile(1 - alpha)
        else:
            rej = z < normal_quantile(alpha)
        p = float(rej.mean())
        res.estimate = p
        res.se = math.sqrt(p * (1 - p) / nmc)
        res.mean_rho = float(rhos.mean())
        if keep_rhos:
            res.rhos = rhos
    except (PCDError, ValueError) as exc:
        res.error = str(exc)
    return res


def simulate_grid(grid, threads=None, keep_rhos=False):
    """Run every cell of ``grid``; results come back in grid order."""
    threads = threads or os.cpu_count() or 1
    cells = grid.cells()

    def run(item, inner=1):
        i, (p, n, e) = item
        return simulate_cell(
            i, grid.family, p, n, e, grid.kind, grid.nmc, grid.alpha, grid.seed, grid.side, keep_rhos, inner
        )

    if threads == 1 or len(cells) == 1:
        return [run(item, threads) for item in enumerate(cells)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(run, enumerate(cells)))
