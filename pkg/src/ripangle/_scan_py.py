"""Pure numpy fallback for the compiled grid scan in ``_scan.pyx``."""
import numpy as np


def _cos_slab(ai, b, d, dt_min, dt_max, tol):
    sa = np.sqrt(ai)
    sb = np.sqrt(b)[:, None]
    s_ab = (ai + b)[:, None]
    pr = 2.0 * np.sqrt(ai * b)[:, None]
    tri_lo = (sa - sb) * (sa - sb) - tol
    tri_hi = (sa + sb) * (sa + sb) + tol
    s = 2.0 * s_ab - d[None, :]
    ok = ~((s < dt_min - tol) | (s > dt_max + tol) | (d < tri_lo) | (d > tri_hi))
    c = (s_ab - d[None, :]) / pr
    return np.where(ok, c, np.nan)


def scan_blocks(a, b, d, dt_min, dt_max, tol, nblk):
    a = np.ascontiguousarray(a, dtype=float)
    b = np.ascontiguousarray(b, dtype=float)
    d = np.ascontiguousarray(d, dtype=float)
    na, nb, nd = len(a), len(b), len(d)
    cube = np.empty((na, nb, nd))
    for i in range(na):
        cube[i] = _cos_slab(a[i], b, d, dt_min, dt_max, tol)
    feasible = ~np.isnan(cube)

    nb3 = nblk ** 3
    hi_val = np.full(nb3, -np.inf)
    lo_val = np.full(nb3, np.inf)
    hi_idx = np.full((nb3, 3), -1, dtype=np.intp)
    lo_idx = np.full((nb3, 3), -1, dtype=np.intp)

    edges = [np.searchsorted((np.arange(n) * nblk) // n, np.arange(nblk + 1)) for n in (na, nb, nd)]
    for bi in range(nblk):
        for bj in range(nblk):
            for bk in range(nblk):
                sl = (slice(edges[0][bi], edges[0][bi + 1]),
                      slice(edges[1][bj], edges[1][bj + 1]),
                      slice(edges[2][bk], edges[2][bk + 1]))
                sub = cube[sl]
                if sub.size == 0 or not feasible[sl].any():
                    continue
                blk = (bi * nblk + bj) * nblk + bk
                offs = np.array([s.start for s in sl])
                flat_hi = np.nanargmax(sub)
                flat_lo = np.nanargmin(sub)
                hi_val[blk] = sub.flat[flat_hi]
                lo_val[blk] = sub.flat[flat_lo]
                hi_idx[blk] = offs + np.unravel_index(flat_hi, sub.shape)
                lo_idx[blk] = offs + np.unravel_index(flat_lo, sub.shape)
    return int(feasible.sum()), hi_val, hi_idx, lo_val, lo_idx
