# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled table fill for the colorful-subgraph DP (see _pccs_py for the layout)."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, uint8_t

cnp.import_array()

cdef int64_t INF = (<int64_t>1) << 62


cdef inline int64_t compress(int64_t mask, int c) nogil:
    return (mask & (((<int64_t>1) << c) - 1)) | ((mask >> (c + 1)) << c)


def fill_table(Py_ssize_t n, int k, int64_t[::1] col, int64_t[::1] anc_off,
               int64_t[::1] anc_vertex, int64_t[::1] pay, int64_t[::1] grp_end,
               int64_t[::1] pos):
    cdef Py_ssize_t S = pay.shape[0]
    cdef Py_ssize_t R = (<Py_ssize_t>1) << (k - 1)
    D_arr = np.full(R * S, INF, dtype=np.int64)
    alive_arr = np.zeros(R * n, dtype=np.uint8)
    cdef int64_t[::1] D = D_arr
    cdef uint8_t[::1] alive = alive_arr

    cdef Py_ssize_t maxdeg = 0, v
    for v in range(n):
        if anc_off[v + 1] - anc_off[v] > maxdeg:
            maxdeg = anc_off[v + 1] - anc_off[v]
    cand_arr = np.empty(maxdeg + 1, dtype=np.int64)
    out_arr = np.empty(maxdeg + 1, dtype=np.int64)
    cdef int64_t[::1] cand = cand_arr
    cdef int64_t[::1] out = out_arr

    cdef int64_t mask, full = (<int64_t>1) << k, bit, rest, low, others, sub, s1, m1, m2
    cdef int64_t row, r1, r2, x, y, val, best, run, b
    cdef Py_ssize_t base, bu, b1, b2, a0, a1, s, t, i, u
    cdef int c, cu
    cdef bint any_finite

    with nogil:
        mask = 1
        while mask < full:
            for v in range(n):
                c = <int>col[v]
                if c < 0 or not ((mask >> c) & 1):
                    continue
                bit = (<int64_t>1) << c
                row = compress(mask, c)
                base = row * S
                a0 = anc_off[v]
                a1 = anc_off[v + 1]
                if mask == bit:
                    for s in range(a0, a1):
                        D[base + s] = pay[s]
                    alive[row * n + v] = 1
                    continue
                rest = mask ^ bit

                for s in range(a0, a1):
                    cand[s - a0] = INF
                    u = anc_vertex[s]
                    if u == v:
                        continue
                    cu = <int>col[u]
                    if cu < 0 or not ((rest >> cu) & 1):
                        continue
                    r2 = compress(rest, cu)
                    if not alive[r2 * n + u]:
                        continue
                    bu = r2 * S
                    best = INF
                    for t in range(pos[s], anc_off[u + 1]):
                        x = D[bu + t]
                        if x < best:
                            best = x
                    cand[s - a0] = best
                run = INF
                for i in range(a1 - a0):
                    if cand[i] < run:
                        run = cand[i]
                    cand[i] = run
                for s in range(a0, a1):
                    b = cand[grp_end[s] - a0]
                    if b < INF:
                        out[s - a0] = b + pay[s]
                    else:
                        out[s - a0] = INF

                low = rest & -rest
                others = rest ^ low
                sub = others
                while True:
                    sub = (sub - 1) & others
                    if sub == others:
                        break
                    s1 = sub | low
                    m1 = s1 | bit
                    m2 = (rest ^ s1) | bit
                    r1 = compress(m1, c)
                    r2 = compress(m2, c)
                    if alive[r1 * n + v] and alive[r2 * n + v]:
                        b1 = r1 * S
                        b2 = r2 * S
                        for s in range(a0, a1):
                            x = D[b1 + s]
                            y = D[b2 + s]
                            if x < INF and y < INF:
                                val = x + y - pay[s]
                                if val < out[s - a0]:
                                    out[s - a0] = val
                any_finite = False
                for s in range(a0, a1):
                    D[base + s] = out[s - a0]
                    if out[s - a0] < INF:
                        any_finite = True
                if any_finite:
                    alive[row * n + v] = 1
            mask += 1
    return D_arr, alive_arr
