"""Command-line interface: ``pcdtest {analyze,simulate,pae,generate}``.

Exit codes: 0 success, 1 internal error, 2 usage or domain error.
"""

import argparse
import csv
import io
import json
import math
import os
import sys

import numpy as np

from .altdist import AltSpec, pae, pae_multi
from .errors import ParseError, PCDError
from .geometry import STANDARD_TRIANGLE, delaunay_triangulate
from .harness import ExperimentGrid, simulate_grid
from .inference import analyze, normal_quantile, randomization_test
from .proximity import PcdConfig
from .sampler import alt_bary, make_rng, sample_alt_hull, sample_null_hull, sample_uniform_triangle

SCHEMA = 1


# --- io --------------------------------------------------------------------


def read_points(path):
    """Read an ``x,y`` CSV; the header line is optional."""
    try:
        fh = open(path, newline="", encoding="utf-8")
    except OSError as exc:
        raise FileNotFoundError(f"cannot read {path}: {exc.strerror}") from None
    pts = []
    with fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or all(not c.strip() for c in row):
                continue
            if lineno == 1 and [c.strip().lower() for c in row] == ["x", "y"]:
                continue
            if len(row) != 2:
                raise ParseError(f"{path}:{lineno}: expected 2 fields, got {len(row)}")
            try:
                x, y = float(row[0]), float(row[1])
            except ValueError:
                raise ParseError(f"{path}:{lineno}: not a number in {row!r}") from None
            if not (math.isfinite(x) and math.isfinite(y)):
                raise ParseError(f"{path}:{lineno}: non-finite coordinate")
            pts.append((x, y))
    return np.array(pts, dtype=float).reshape(-1, 2)


def format_points(points):
    buf = io.StringIO()
    buf.write("x,y\n")
    for x, y in np.asarray(points, dtype=float).reshape(-1, 2):
        buf.write(f"{x:.17g},{y:.17g}\n")
    return buf.getvalue()


def _emit(text, out):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _floats(text):
    return [float(v) for v in str(text).split(",") if v.strip()]


def _ints(text):
    return [int(v) for v in str(text).split(",") if v.strip()]


def _seed(args):
    if args.seed is not None:
        return args.seed
    env = os.environ.get("PCD_SEED")
    return int(env) if env not in (None, "") else 0


def _grid_range(spec):
    # "lo:hi:step", inclusive of hi up to rounding
    lo, hi, step = (float(v) for v in spec.split(":"))
    if step <= 0 or hi < lo:
        raise ValueError(f"bad grid {spec!r}")
    k = int(math.floor((hi - lo) / step + 1e-9))
    return [lo + i * step for i in range(k + 1)]


def _json_default(o):
    if isinstance(o, (np.floating, np.integer)):
        return o.item()
    raise TypeError(type(o).__name__)


def _clean(d):
    return {k: (None if isinstance(v, float) and not math.isfinite(v) else v) for k, v in d.items()}


# --- commands --------------------------------------------------------------


def cmd_analyze(args):
    x = read_points(args.x_csv)
    y = read_points(args.y_csv)
    cfg = PcdConfig(args.family, args.param)
    res = analyze(x, y, cfg, correct_hull=args.correct_hull)
    zcrit = normal_quantile(1 - args.alpha)
    doc = {
        "schema": SCHEMA,
        "alpha": args.alpha,
        "result": _clean(res.to_dict()),
        "reject_seg": res.z > zcrit,
        "reject_assoc": res.z < -zcrit,
    }
    if args.nrand:
        pts = np.vstack([x, y])
        rt = randomization_test(pts, len(y), cfg, args.nrand, make_rng(_seed(args)), args.correct_hull, args.threads)
        doc["randomization"] = {
            "B": rt.n_replicates,
            "failed": rt.n_failed,
            "observed": rt.observed,
            "p_left": rt.p_left,
            "p_right": rt.p_right,
        }
    text = json.dumps(doc, indent=2, default=_json_default) + "\n"
    _emit(text, args.out)
    if args.table:
        sys.stderr.write(_table(res))
    return 0


def _table(res):
    rows = [
        ("n used / total", f"{res.n_used} / {res.n_total}"),
        ("triangles", str(res.n_triangles)),
        ("rho", f"{res.rho:.6f}"),
        ("null mean", f"{res.null_mean:.6f}"),
        ("z", f"{res.z:.4f}"),
        ("p (segregation)", f"{res.p_seg:.4f}"),
        ("p (association)", f"{res.p_assoc:.4f}"),
    ]
    if res.z_hull_corrected is not None:
        rows += [
            ("z hull-corrected", f"{res.z_hull_corrected:.4f}"),
            ("p seg corrected", f"{res.p_seg_corrected:.4f}"),
            ("p assoc corrected", f"{res.p_assoc_corrected:.4f}"),
        ]
    w = max(len(k) for k, _ in rows)
    return "".join(f"{k.ljust(w)}  {v}\n" for k, v in rows)


_SIM_COLUMNS = ["index", "family", "param", "n", "eps", "kind", "side", "nmc", "estimate", "se", "mean_rho", "degenerate", "error"]


def cmd_simulate(args):
    params = _floats(args.params if args.params is not None else args.param)
    if not params:
        raise ValueError("simulate needs --params or --param")
    kind = args.alt or "null"
    eps = _floats(args.eps) if args.eps is not None else [0.0]
    if kind != "null" and args.eps is None:
        raise ValueError("--alt needs --eps")
    side = args.side or (kind if kind != "null" else "seg")
    grid = ExperimentGrid(args.family, tuple(params), tuple(_ints(args.n)), tuple(eps), kind, args.nmc, args.alpha, _seed(args), side)
    results = simulate_grid(grid, threads=args.threads, keep_rhos=bool(args.hist))
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(_SIM_COLUMNS)
    for r in results:
        w.writerow([
            r.index, r.family, repr(r.param), r.n, repr(r.eps), r.kind, r.side, r.nmc,
            repr(r.estimate), repr(r.se), repr(r.mean_rho), int(r.degenerate), r.error,
        ])
    _emit(buf.getvalue(), args.out)
    if args.hist:
        _write_hist(results, args.hist, args.bins)
    return 0


def _write_hist(results, path, bins):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["index", "bin_lo", "bin_hi", "count"])
    for r in results:
        if r.rhos is None:
            continue
        counts, edges = np.histogram(r.rhos, bins=bins, range=(0.0, 1.0))
        for c, lo, hi in zip(counts, edges[:-1], edges[1:]):
            w.writerow([r.index, repr(float(lo)), repr(float(hi)), int(c)])
    _emit(buf.getvalue(), path)


def cmd_pae(args):
    if args.grid:
        params = _grid_range(args.grid)
    elif args.params is not None:
        params = _floats(args.params)
    else:
        raise ValueError("pae needs --grid lo:hi:step or --params")
    weights = None
    if args.y:
        weights = delaunay_triangulate(read_points(args.y)).weights
    elif args.weights:
        weights = _floats(args.weights)
    kind = args.alt or "seg"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["param", "pae"])
    for p in params:
        try:
            v = pae(args.family, kind, p) if weights is None else pae_multi(args.family, kind, p, weights)
        except PCDError:
            v = math.nan
        w.writerow([repr(p), repr(v)])
    _emit(buf.getvalue(), args.out)
    return 0


def cmd_generate(args):
    rng = make_rng(_seed(args))
    tri = delaunay_triangulate(read_points(args.y)) if args.y else None
    if args.pattern == "null":
        pts = sample_uniform_triangle(STANDARD_TRIANGLE, args.n, rng) if tri is None else sample_null_hull(tri, args.n, rng)
    else:
        if args.eps is None:
            raise ValueError(f"generate {args.pattern} needs --eps")
        alt = AltSpec(args.pattern, float(args.eps))
        if tri is None:
            pts = alt_bary(alt, args.n, rng) @ STANDARD_TRIANGLE.vertices
        else:
            pts = sample_alt_hull(tri, alt, args.n, rng)
    _emit(format_points(pts), args.out)
    return 0


# --- parser ----------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(prog="pcdtest", description="Proximity catch digraph tests of segregation and association.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--seed", type=int, default=None, help="RNG seed (fallback: $PCD_SEED, then 0)")
        sp.add_argument("--out", default=None, help="output file (default: stdout)")

    a = sub.add_parser("analyze", help="test X against the Delaunay triangulation of Y")
    a.add_argument("x_csv")
    a.add_argument("y_csv")
    a.add_argument("--family", choices=["pe", "cs"], default="pe")
    a.add_argument("--param", type=float, default=2.0)
    a.add_argument("--alpha", type=float, default=0.05)
    a.add_argument("--correct-hull", action="store_true")
    a.add_argument("--nrand", type=int, default=0, help="also run a randomization test with this many relabelings")
    a.add_argument("--threads", type=int, default=1)
    a.add_argument("--table", action="store_true", help="print a summary table to stderr")
    common(a)

    s = sub.add_parser("simulate", help="Monte Carlo size / power in one triangle")
    s.add_argument("--family", choices=["pe", "cs"], default="pe")
    s.add_argument("--param", default=None)
    s.add_argument("--params", default=None, help="comma-separated parameter list")
    s.add_argument("--n", default="100", help="comma-separated sample sizes")
    s.add_argument("--nmc", type=int, default=10000)
    s.add_argument("--alpha", type=float, default=0.05)
    s.add_argument("--alt", choices=["seg", "assoc"], default=None, help="alternative (default: null)")
    s.add_argument("--eps", default=None, help="comma-separated epsilon list")
    s.add_argument("--side", choices=["seg", "assoc"], default=None, help="rejection tail (default: matches --alt)")
    s.add_argument("--threads", type=int, default=None)
    s.add_argument("--hist", default=None, help="write rho histograms to this file")
    s.add_argument("--bins", type=int, default=50)
    common(s)

    q = sub.add_parser("pae", help="Pitman asymptotic efficiency curve")
    q.add_argument("--family", choices=["pe", "cs"], default="pe")
    q.add_argument("--alt", choices=["seg", "assoc"], default="seg")
    q.add_argument("--grid", default=None, help="lo:hi:step")
    q.add_argument("--params", default=None)
    q.add_argument("--weights", default=None, help="comma-separated triangle weights")
    q.add_argument("--y", default=None, help="Y points; weights from their triangulation")
    common(q)

    g = sub.add_parser("generate", help="emit a null, segregation or association pattern")
    g.add_argument("pattern", choices=["null", "seg", "assoc"])
    g.add_argument("--n", type=int, default=100)
    g.add_argument("--eps", type=float, default=None)
    g.add_argument("--y", default=None, help="Y points; sample over their hull instead of the standard triangle")
    common(g)
    return p


_COMMANDS = {"analyze": cmd_analyze, "simulate": cmd_simulate, "pae": cmd_pae, "generate": cmd_generate}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (PCDError, ValueError, FileNotFoundError) as exc:
        sys.stderr.write(f"pcdtest {args.command}: error: {exc}\n")
        return 2
    except Exception as exc:  # pragma: no cover - last resort
        sys.stderr.write(f"pcdtest {args.command}: internal error: {exc!r}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
