"""Brute-force search for the extreme compressed angles.

This module never calls the closed forms in :mod:`ripangle.bounds`; it works
only from the law of cosines and the RIP constraint set, so the two can be
checked against each other.

Search strategy
---------------
1. Scan a 3-D grid over ``[1-delta, 1+delta]^2 x [d_min_sq, d_max_sq]`` and
   keep the best feasible node of every block of a coarse partition
   (compiled kernel when available, see :mod:`ripangle._kernels`).
2. From the best few block winners, run a compass search in ``(a, b)``.
   For fixed ``(a, b)`` the law of cosines is strictly decreasing in
   ``d_sq``, so the extremes over ``d_sq`` sit at the ends of its feasible
   interval; the refinement evaluates exactly those ends.  The step halves
   whenever no neighbour improves, down to ``REFINE_STOP``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .envelope import (
    FEAS_TOL,
    FeasibleTriple,
    RipScenario,
    compute_envelope,
    is_feasible,
)
from .exceptions import DomainError, OracleConsistencyError

N_BLOCKS = 4
N_SEEDS = 4
LOCAL_POINTS = 9
REFINE_STOP = 1e-13
MAX_REFINE_STEPS = 10_000


@dataclass(frozen=True)
class OracleResult:
    alpha_min: float
    alpha_max: float
    argmin_triple: FeasibleTriple
    argmax_triple: FeasibleTriple
    resolution_bound: float
    n_feasible: int = 0
    backend: str = ""


def grid_axis(lo: float, hi: float, n: int) -> np.ndarray:
    """``n`` nodes on ``[lo, hi]``, bumped to an odd count so the midpoint is a node."""
    if n % 2 == 0:
        n += 1
    return np.linspace(lo, hi, n)


def _d_interval(a, b, env_vals):
    d_min_sq, d_max_sq, dt_min_sq, dt_max_sq = env_vals
    sa, sb = np.sqrt(a), np.sqrt(b)
    s_ab = a + b
    lo = np.maximum(np.maximum(d_min_sq, 2.0 * s_ab - dt_max_sq), (sa - sb) ** 2)
    hi = np.minimum(np.minimum(d_max_sq, 2.0 * s_ab - dt_min_sq), (sa + sb) ** 2)
    return lo, hi


def _snapped(a, b, sign, env_vals, tol=FEAS_TOL):
    """Best ``sign * cos(alpha)`` over the feasible d_sq for each (a, b)."""
    lo, hi = _d_interval(a, b, env_vals)
    d = lo if sign > 0 else hi
    c = (a + b - d) / (2.0 * np.sqrt(a * b))
    return np.where(lo <= hi + tol, sign * c, -np.inf), d


def _compass(seed_ab, sign, box, h, env_vals):
    lo, hi = box
    cur = np.asarray(seed_ab, dtype=float)
    val, d = _snapped(cur[:1], cur[1:], sign, env_vals)
    best, best_d = float(val[0]), float(d[0])
    offsets = np.linspace(-1.0, 1.0, LOCAL_POINTS)
    for _ in range(MAX_REFINE_STEPS):
        if h <= REFINE_STOP:
            break
        ga = np.clip(cur[0] + h * offsets, lo, hi)
        gb = np.clip(cur[1] + h * offsets, lo, hi)
        A, B = np.meshgrid(ga, gb, indexing="ij")
        vals, ds = _snapped(A, B, sign, env_vals)
        k = int(np.argmax(vals))
        if vals.flat[k] > best:
            best = float(vals.flat[k])
            best_d = float(ds.flat[k])
            cur = np.array([A.flat[k], B.flat[k]])
        else:
            h *= 0.5
    return best, (float(cur[0]), float(cur[1]), best_d), h


def _angle_resolution(cos_best, h, delta):
    # |d cos / d a|, |d cos / d b| <= 1/(1-delta); the snapped d_sq moves at most
    # lip_d per unit change in a or b, and |d cos / d d_sq| <= 1/(2(1-delta)).
    lip_d = max(2.0, 1.0 + math.sqrt((1.0 + delta) / (1.0 - delta)))
    dcos = (2.0 * h * (1.0 + lip_d / 2.0) + FEAS_TOL) / (1.0 - delta)
    a0 = math.acos(min(1.0, max(-1.0, cos_best)))
    up = math.acos(min(1.0, max(-1.0, cos_best + dcos)))
    down = math.acos(min(1.0, max(-1.0, cos_best - dcos)))
    return max(abs(a0 - up), abs(down - a0))


def oracle_extremes(scenario: RipScenario, grid_per_axis: int = 96) -> OracleResult:
    """Extreme compressed angles by exhaustive search over feasible triples."""
    if grid_per_axis < 16:
        raise DomainError(f"grid_per_axis must be >= 16, got {grid_per_axis}")
    delta = scenario.delta
    env = compute_envelope(scenario)
    env_vals = env.as_tuple()
    box = (1.0 - delta, 1.0 + delta)
    ax_ab = grid_axis(box[0], box[1], grid_per_axis)
    ax_d = grid_axis(env.d_min_sq, env.d_max_sq, grid_per_axis)

    count, hi_val, hi_idx, lo_val, lo_idx = _kernels.scan_blocks(
        ax_ab, ax_ab, ax_d, env.dt_min_sq, env.dt_max_sq, FEAS_TOL, N_BLOCKS)
    if count == 0:
        raise OracleConsistencyError(
            f"no feasible grid node for delta={delta}, theta={scenario.theta}")

    h0 = float(ax_ab[1] - ax_ab[0])
    picks = {}
    for sign, vals, idx in ((1, hi_val, hi_idx), (-1, -lo_val, lo_idx)):
        order = np.argsort(-vals, kind="stable")[:N_SEEDS]
        best = None
        for blk in order:
            if not np.isfinite(vals[blk]):
                continue
            i, j, _ = idx[blk]
            val, trip, h = _compass((ax_ab[i], ax_ab[j]), sign, box, h0, env_vals)
            if best is None or val > best[0]:
                best = (val, trip, h)
        picks[sign] = best

    cmax, trip_min, h_min = picks[1]
    cmin_neg, trip_max, h_max = picks[-1]
    cmin = -cmin_neg
    arg_min = FeasibleTriple(*trip_min)
    arg_max = FeasibleTriple(*trip_max)
    if not (is_feasible(arg_min, env, delta) and is_feasible(arg_max, env, delta)):
        raise OracleConsistencyError("refined extremum left the feasible region")
    res = max(_angle_resolution(cmax, h_min, delta), _angle_resolution(cmin, h_max, delta))
    return OracleResult(
        alpha_min=math.acos(min(1.0, cmax)),
        alpha_max=math.acos(max(-1.0, cmin)),
        argmin_triple=arg_min,
        argmax_triple=arg_max,
        resolution_bound=res,
        n_feasible=int(count),
        backend=_kernels.BACKEND,
    )


def constrained_sum_extremum(c: float, lo: float, hi: float, maximize: bool) -> tuple[float, float]:
    """Extremize ``x + y`` on the arc ``x^2 + y^2 = c`` inside ``[lo, hi]^2``.

    The maximum is the symmetric point when it lies in the box; the minimum
    is an arc endpoint.  Of two mirror-image endpoints the one with the
    smaller ``x`` is returned.
    """
    if lo < 0 or hi < lo:
        raise DomainError(f"need 0 <= lo <= hi, got lo={lo}, hi={hi}")
    if not (2 * lo * lo - FEAS_TOL <= c <= 2 * hi * hi + FEAS_TOL):
        raise DomainError(f"empty arc: c={c} outside [{2 * lo * lo}, {2 * hi * hi}]")
    x_first = max(lo, math.sqrt(max(0.0, c - hi * hi)))
    x_last = min(hi, math.sqrt(max(0.0, c - lo * lo)))
    ends = [(x_first, math.sqrt(max(0.0, c - x_first * x_first))),
            (x_last, math.sqrt(max(0.0, c - x_last * x_last)))]
    if maximize:
        r = math.sqrt(c / 2.0)
        if lo <= r <= hi:
            return (r, r)
        return min(ends, key=lambda p: (abs(p[0] - p[1]), p[0]))
    (x0, y0), (x1, y1) = ends
    if abs((x0 + y0) - (x1 + y1)) <= 1e-12 or x0 + y0 < x1 + y1:
        return ends[0]
    return ends[1]
