"""``ripangle`` command line.

CSV goes to ``--out`` (plus a ``.manifest`` sidecar) or to stdout.  The
human summary goes to stdout when ``--out`` is given and to stderr otherwise,
so piping the CSV stays clean.

Exit status: 0 ok, 1 soundness violation, 2 usage error.
"""
from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import __version__
from .bounds import describe_bounds
from .csvio import rows_to_csv, write_outputs
from .envelope import normalize_scenario
from .exceptions import RipAngleError, DomainError, StabilityError
from .experiments import (
    DEFAULT_SIZING,
    certified_omp_experiment,
    containment_experiment,
    omp_recovery_experiment,
    projected_ric_experiment,
)
from .oracle import oracle_extremes
from .ric import (
    algebraic_projected_ric,
    invert_algebraic_ric,
    invert_projected_ric,
    measurement_reduction,
    omp_ric_threshold,
    omp_ric_threshold_prior,
    projected_ric,
    reconstruction_error_bound,
)
from .sensing import SensingConfig

ORACLE_TOL_DEG = 0.01
DEFAULT_DELTAS = "0.05:0.90:0.05"
DEFAULT_THETAS_DEG = "5:90:5"
OMP_CURVE_KMAX = 100


def _open_unit(name):
    def parse(text):
        try:
            v = float(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{name} must be a number, got {text!r}")
        if not (0.0 < v < 1.0):
            raise argparse.ArgumentTypeError(f"{name} must be in (0,1)")
        return v
    return parse


def _positive_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _seed(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError("seed must be non-negative")
    return v


def parse_grid(text: str) -> list[float]:
    """``"a,b,c"`` or inclusive ``"start:stop:step"``."""
    text = text.strip()
    try:
        if ":" in text:
            start, stop, step = (float(x) for x in text.split(":"))
            if step <= 0 or stop < start:
                raise ValueError
            n = int(round((stop - start) / step)) + 1
            return [round(start + i * step, 12) for i in range(n)]
        vals = [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad grid {text!r}; use a,b,c or start:stop:step")
    if not vals:
        raise argparse.ArgumentTypeError("empty grid")
    return vals


def _emit(args, rows, columns, summary_lines, params) -> None:
    body = rows_to_csv(rows, columns)
    if args.out:
        write_outputs(args.out, body, args.command, params, __version__)
        stream = sys.stdout
    else:
        sys.stdout.write(body)
        stream = sys.stderr
    for line in summary_lines:
        print(line, file=stream)


def _params(args) -> dict:
    return {k: v for k, v in vars(args).items() if k not in ("func", "out", "command")}


# -- bounds / sweep -------------------------------------------------------

BOUNDS_COLUMNS = [
    "delta", "theta_rad", "theta_deg", "alpha_min", "alpha_max", "alpha_min_deg",
    "alpha_max_deg", "branch", "branch_min", "branch_max", "pol_bound", "cos_lo", "cos_hi",
    "flipped",
]


def _bounds_row(delta, theta):
    rep = describe_bounds(delta, theta)
    return {
        "delta": delta, "theta_rad": theta, "theta_deg": math.degrees(theta),
        "alpha_min": rep.alpha_min, "alpha_max": rep.alpha_max,
        "alpha_min_deg": math.degrees(rep.alpha_min),
        "alpha_max_deg": math.degrees(rep.alpha_max),
        "branch": rep.branch, "branch_min": rep.branch_min, "branch_max": rep.branch_max,
        "pol_bound": rep.pol_bound, "cos_lo": rep.cos_lo, "cos_hi": rep.cos_hi,
        "flipped": int(rep.flipped),
    }


def _theta_from(args, parser):
    if args.theta_deg is not None:
        theta = math.radians(args.theta_deg)
    else:
        theta = args.theta_rad
    if not (0.0 < theta < math.pi):
        parser.error("--theta-deg/--theta-rad must lie strictly between 0 and 180 degrees")
    return theta


def cmd_bounds(args, parser) -> int:
    theta = _theta_from(args, parser)
    row = _bounds_row(args.delta, theta)
    _emit(args, [row], BOUNDS_COLUMNS, [
        f"alpha_min_deg: {row['alpha_min_deg']:.9g}",
        f"alpha_max_deg: {row['alpha_max_deg']:.9g}",
        f"branch: {row['branch']}",
    ], _params(args))
    return 0


SWEEP_COLUMNS = [
    "delta", "theta_rad", "alpha_min", "alpha_max", "pol_bound", "cos_lo", "cos_hi",
    "oracle_min", "oracle_max", "dev_min", "dev_max", "branch_min", "branch_max",
    "theta_deg", "alpha_min_deg", "alpha_max_deg", "dev_min_deg", "dev_max_deg",
    "oracle_resolution_deg",
]


def sweep_rows(deltas, thetas_deg, oracle=False, grid_n=96):
    rows = []
    for d in deltas:
        for tdeg in thetas_deg:
            th = math.radians(tdeg)
            b = _bounds_row(d, th)
            row = {k: b[k] for k in SWEEP_COLUMNS if k in b}
            if oracle:
                sc = normalize_scenario(d, th)
                res = oracle_extremes(sc, grid_per_axis=grid_n)
                lo, hi = res.alpha_min, res.alpha_max
                if sc.flipped:
                    lo, hi = math.pi - hi, math.pi - lo
                row.update(
                    oracle_min=lo, oracle_max=hi,
                    dev_min=abs(lo - b["alpha_min"]), dev_max=abs(hi - b["alpha_max"]),
                    oracle_resolution_deg=math.degrees(res.resolution_bound))
                row["dev_min_deg"] = math.degrees(row["dev_min"])
                row["dev_max_deg"] = math.degrees(row["dev_max"])
            rows.append(row)
    return rows


def cmd_sweep(args, parser) -> int:
    for d in args.deltas:
        if not (0.0 < d < 1.0):
            parser.error("--deltas: delta must be in (0,1)")
    for t in args.thetas_deg:
        if not (0.0 < t < 180.0):
            parser.error("--thetas-deg: theta must lie strictly between 0 and 180")
    try:
        rows = sweep_rows(args.deltas, args.thetas_deg, args.oracle, args.grid_n)
    except DomainError as exc:
        parser.error(str(exc))
    lines = [f"points: {len(rows)}"]
    status = 0
    if args.oracle:
        worst = max(max(r["dev_min_deg"], r["dev_max_deg"]) for r in rows)
        res = max(r["oracle_resolution_deg"] for r in rows)
        over = sum(max(r["dev_min_deg"], r["dev_max_deg"]) > ORACLE_TOL_DEG for r in rows)
        lines += [f"max_dev_deg: {worst:.3g}", f"max_resolution_deg: {res:.3g}",
                  f"violations: {over}"]
        status = 1 if over else 0
    _emit(args, rows, SWEEP_COLUMNS, lines, _params(args))
    return status


# -- ric --------------------------------------------------------------------

def _err_bound(ric, eps):
    try:
        return reconstruction_error_bound(ric, eps)
    except StabilityError:
        return float("nan")


def _delta_row(delta, eps):
    db, da = projected_ric(delta), algebraic_projected_ric(delta)
    return {"delta": delta, "delta_bar": db, "delta_bar_a": da, "eps": eps,
            "err_bound_new": _err_bound(db, eps), "err_bound_alg": _err_bound(da, eps)}


def _tau_row(tau):
    return {"tau": tau, "delta_new": invert_projected_ric(tau),
            "delta_alg": invert_algebraic_ric(tau), "reduction": measurement_reduction(tau)}


def _omp_row(K):
    new, prior = omp_ric_threshold(K), omp_ric_threshold_prior(K)
    return {"K": K, "delta_new": new, "delta_prior": prior,
            "reduction": 1.0 - (prior / new) ** 2,
            "ordering": "new<prior" if new < prior else "new>=prior",
            # flags the case where the computed ordering contradicts the claim
            # that the new threshold is the larger one
            "note": "new_below_prior" if new < prior else ""}


def cmd_ric(args, parser) -> int:
    if args.delta is not None:
        rows = [_delta_row(args.delta, args.eps)]
        lines = [f"delta_bar: {rows[0]['delta_bar']:.9g}",
                 f"delta_bar_a: {rows[0]['delta_bar_a']:.9g}"]
    elif args.tau is not None:
        rows = [_tau_row(args.tau)]
        r = rows[0]
        lines = [f"delta_new: {r['delta_new']:.9g}", f"delta_alg: {r['delta_alg']:.9g}",
                 f"reduction: {100 * r['reduction']:.2f}%"]
    elif args.omp_K is not None:
        rows = [_omp_row(args.omp_K)]
        r = rows[0]
        lines = [f"delta_new: {r['delta_new']:.9g}", f"delta_prior: {r['delta_prior']:.9g}",
                 f"note: {r['note'] or '-'}"]
    elif args.curve == "ric":
        rows = [_delta_row(round(d, 12), args.eps) for d in np.linspace(0.01, 0.99, 99)]
        lines = [f"points: {len(rows)}"]
    elif args.curve == "tau":
        rows = [_tau_row(round(t, 12)) for t in np.linspace(0.01, 0.99, 99)]
        lines = [f"points: {len(rows)}"]
    else:
        rows = [_omp_row(K) for K in range(1, OMP_CURVE_KMAX + 1)]
        flagged = sum(bool(r["note"]) for r in rows)
        lines = [f"points: {len(rows)}", f"new_below_prior: {flagged}/{len(rows)}"]
    _emit(args, rows, None, lines, _params(args))
    return 0


# -- experiments ------------------------------------------------------------

def _config(args, parser):
    try:
        return SensingConfig(p=args.p, m=args.m, K=args.K, seed=args.seed, trials=args.trials)
    except DomainError as exc:
        parser.error(str(exc))


def cmd_containment(args, parser) -> int:
    cfg = _config(args, parser)
    if cfg.K < 2:
        parser.error("--K must be at least 2 for angle pairs")
    thetas = None
    if args.thetas_deg is not None:
        if any(not (0.0 < t < 180.0) for t in args.thetas_deg):
            parser.error("--thetas-deg: theta must lie strictly between 0 and 180")
        thetas = [math.radians(t) for t in args.thetas_deg]
    rep = containment_experiment(cfg, thetas, reuse_matrix=args.reuse_matrix,
                                 sizing_constant=args.sizing_constant)
    s = rep.summary
    _emit(args, rep.rows, None, [
        f"seed: {cfg.seed}", f"trials: {cfg.trials}", f"violations: {s['violations']}",
        f"excluded: {s['excluded']}", f"delta_design: {s['delta_design']:.6g}",
        f"design_outside: {s['design_outside']}",
    ], _params(args))
    return 1 if rep.violations else 0


def cmd_projric(args, parser) -> int:
    cfg = _config(args, parser)
    if not (0 <= args.kI < cfg.K):
        parser.error("--kI must satisfy 0 <= kI < K")
    rep = projected_ric_experiment(cfg, args.kI)
    s = rep.summary
    _emit(args, rep.rows, None, [
        f"seed: {cfg.seed}", f"trials: {cfg.trials}", f"violations: {s['violations']}",
        f"excluded: {s['excluded']}", f"mean_slack: {s['mean_slack']:.6g}",
        f"identity_max_rel_err: {s['identity_max_rel_err']:.3g}",
        "slack_hist: " + " ".join(str(c) for c in s["slack_hist_counts"]),
    ], _params(args))
    return 1 if rep.violations else 0


def cmd_omp(args, parser) -> int:
    if args.certify:
        if args.m is None:
            parser.error("--certify needs --m")
        if not (1 <= args.K < args.m < args.p):
            parser.error("need 1 <= K < m < p")
        try:
            rep = certified_omp_experiment(args.p, args.m, args.K, args.trials, args.seed,
                                           design=args.design)
        except DomainError as exc:
            parser.error(str(exc))
        s = rep.summary
        lines = [f"seed: {args.seed}", f"design: {s['design']}",
                 f"ric_order{s['ric_order']}: {s['ric']:.6g}",
                 f"threshold: {s['threshold']:.6g}", f"certified: {s['certified']}",
                 f"exact: {s['exact']}/{args.trials}", f"violations: {s['violations']}"]
        _emit(args, rep.rows, None, lines, _params(args))
        return 1 if rep.violations else 0
    if args.K >= args.p:
        parser.error("--K must be below --p")
    rep = omp_recovery_experiment(args.p, range(1, args.K + 1), args.trials, args.seed,
                                  sizing_constant=args.sizing_constant)
    lines = [f"seed: {args.seed}", f"capped_rows: {rep.summary['capped_rows']}"]
    lines += [f"K={r['K']} {r['formula']}: m={r['m']}{' (capped)' if r['capped'] else ''} "
              f"exact: {r['exact']}/{r['trials']}" for r in rep.rows]
    _emit(args, rep.rows, None, lines, _params(args))
    return 0


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ripangle",
                                 description="Angle bounds and RIC tools for RIP-compressed vectors.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)
    ap.subcommand_parsers = sub.choices

    def out(p):
        p.add_argument("--out", help="CSV path; a .manifest file is written beside it")

    p = sub.add_parser("bounds", help="closed-form angle interval for one (delta, theta)")
    p.add_argument("--delta", type=_open_unit("delta"), required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--theta-deg", type=float)
    g.add_argument("--theta-rad", type=float)
    out(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("sweep", help="interval over a (delta, theta) grid, optionally vs the oracle")
    p.add_argument("--deltas", type=parse_grid, default=parse_grid(DEFAULT_DELTAS))
    p.add_argument("--thetas-deg", type=parse_grid, default=parse_grid(DEFAULT_THETAS_DEG))
    p.add_argument("--oracle", action="store_true")
    p.add_argument("--grid-n", type=_positive_int, default=96)
    out(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("ric", help="projected RIC, inversions and OMP thresholds")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--delta", type=_open_unit("delta"))
    g.add_argument("--tau", type=_open_unit("tau"))
    g.add_argument("--omp-K", type=_positive_int)
    g.add_argument("--curve", choices=("ric", "tau", "omp"))
    p.add_argument("--eps", type=float, default=1.0, help="noise level for error-bound columns")
    out(p)
    p.set_defaults(func=cmd_ric)

    def experiment(name, helptext, m_required=True):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--p", type=_positive_int, required=True)
        p.add_argument("--m", type=_positive_int, required=m_required)
        p.add_argument("--K", type=_positive_int, required=True)
        p.add_argument("--trials", type=_positive_int, default=100)
        p.add_argument("--seed", type=_seed, default=0)
        out(p)
        return p

    p = experiment("containment", "Monte Carlo check of compressed angles against the bounds")
    p.add_argument("--thetas-deg", type=parse_grid, default=None)
    p.add_argument("--reuse-matrix", action="store_true")
    p.add_argument("--sizing-constant", type=float, default=DEFAULT_SIZING)
    p.set_defaults(func=cmd_containment)

    p = experiment("projric", "energy bounds after projecting out known columns")
    p.add_argument("--kI", type=int, required=True)
    p.set_defaults(func=cmd_projric)

    p = experiment("omp", "OMP recovery experiments", m_required=False)
    p.add_argument("--certify", action="store_true",
                   help="certify one matrix by enumeration, then recover on it")
    p.add_argument("--design", choices=("near-orthogonal", "gaussian"), default="near-orthogonal")
    p.add_argument("--sizing-constant", type=float, default=DEFAULT_SIZING)
    p.set_defaults(func=cmd_omp)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    sub = parser.subcommand_parsers[args.command]
    try:
        return args.func(args, sub)
    except RipAngleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
