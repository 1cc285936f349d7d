"""Compiled vs pure-Python block scan.

    python benchmarks/bench_scan.py [--grid-n 96] [--repeat 5]

Times the raw grid scan for a handful of (delta, theta) points with both
backends, checks that they agree bit for bit, and prints the speedup.
"""
import argparse
import math
import time

import numpy as np

from ripangle import _kernels
from ripangle.envelope import FEAS_TOL, compute_envelope, normalize_scenario
from ripangle.oracle import N_BLOCKS, grid_axis

CASES = [(0.1, 30.0), (0.3, 60.0), (0.5, 85.0), (0.8, 15.0)]


def _inputs(delta, theta_deg, n):
    sc = normalize_scenario(delta, math.radians(theta_deg))
    env = compute_envelope(sc)
    ab = grid_axis(1 - delta, 1 + delta, n)
    d = grid_axis(env.d_min_sq, env.d_max_sq, n)
    return ab, ab, d, env.dt_min_sq, env.dt_max_sq, FEAS_TOL, N_BLOCKS


def _best_time(fn, args, repeat):
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--grid-n", type=int, default=96)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)

    print(f"active backend: {_kernels.BACKEND}")
    if _kernels.BACKEND != "cython":
        print("compiled extension not built; only the python backend is timed")
    print(f"{'delta':>6} {'theta':>6} {'python ms':>10} {'cython ms':>10} {'speedup':>8}  identical")
    for delta, theta in CASES:
        inp = _inputs(delta, theta, args.grid_n)
        t_py = _best_time(_kernels.python_scan_blocks, inp, args.repeat)
        if _kernels.BACKEND == "cython":
            t_cy = _best_time(_kernels.scan_blocks, inp, args.repeat)
            a = _kernels.scan_blocks(*inp)
            b = _kernels.python_scan_blocks(*inp)
            same = a[0] == b[0] and all(np.array_equal(x, y) for x, y in zip(a[1:], b[1:]))
            print(f"{delta:6.2f} {theta:6.1f} {1e3 * t_py:10.2f} {1e3 * t_cy:10.2f} "
                  f"{t_py / t_cy:8.1f}  {same}")
        else:
            print(f"{delta:6.2f} {theta:6.1f} {1e3 * t_py:10.2f} {'-':>10} {'-':>8}  -")


if __name__ == "__main__":
    main()
