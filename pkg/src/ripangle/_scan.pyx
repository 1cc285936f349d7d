# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled grid scan over magnitude triples (a, b, d_sq).

Mirrors ``ripangle._scan_py.scan_blocks`` operation for operation so both
backends return identical values and indices.
"""
import numpy as np

from libc.math cimport sqrt, INFINITY


def scan_blocks(const double[::1] a, const double[::1] b, const double[::1] d,
                double dt_min, double dt_max, double tol, int nblk):
    cdef Py_ssize_t na = a.shape[0], nb = b.shape[0], nd = d.shape[0]
    cdef Py_ssize_t i, j, k, bi, bj, blk, nb3 = nblk * nblk * nblk
    cdef long long count = 0
    cdef double ai, bj_val, sa, sb, s_ab, pr, tri_lo, tri_hi, dk, s, c
    cdef double s_lo = dt_min - tol, s_hi = dt_max + tol

    hi_val_arr = np.full(nb3, -np.inf)
    lo_val_arr = np.full(nb3, np.inf)
    hi_idx_arr = np.full((nb3, 3), -1, dtype=np.intp)
    lo_idx_arr = np.full((nb3, 3), -1, dtype=np.intp)
    cdef double[::1] hi_val = hi_val_arr
    cdef double[::1] lo_val = lo_val_arr
    cdef Py_ssize_t[:, ::1] hi_idx = hi_idx_arr
    cdef Py_ssize_t[:, ::1] lo_idx = lo_idx_arr

    cdef Py_ssize_t[::1] kblk = (np.arange(nd) * nblk) // nd

    for i in range(na):
        ai = a[i]
        sa = sqrt(ai)
        bi = (i * nblk) // na
        for j in range(nb):
            bj_val = b[j]
            sb = sqrt(bj_val)
            s_ab = ai + bj_val
            pr = 2.0 * sqrt(ai * bj_val)
            tri_lo = (sa - sb) * (sa - sb) - tol
            tri_hi = (sa + sb) * (sa + sb) + tol
            bj = (j * nblk) // nb
            for k in range(nd):
                dk = d[k]
                s = 2.0 * s_ab - dk
                if s < s_lo or s > s_hi or dk < tri_lo or dk > tri_hi:
                    continue
                c = (s_ab - dk) / pr
                count += 1
                blk = (bi * nblk + bj) * nblk + kblk[k]
                if c > hi_val[blk]:
                    hi_val[blk] = c
                    hi_idx[blk, 0] = i
                    hi_idx[blk, 1] = j
                    hi_idx[blk, 2] = k
                if c < lo_val[blk]:
                    lo_val[blk] = c
                    lo_idx[blk, 0] = i
                    lo_idx[blk, 1] = j
                    lo_idx[blk, 2] = k
    return count, hi_val_arr, hi_idx_arr, lo_val_arr, lo_idx_arr
