# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; bit-identical mirrors of ``pure.py`` (same operation
order, compiled with -ffp-contract=off so no multiply-adds are fused)."""

from libc.math cimport sqrt, INFINITY

import numpy as np


def minplus_closure(w):
    d_arr = np.array(w, dtype=np.float64, copy=True, order="C")
    cdef double[:, :] d = d_arr
    cdef Py_ssize_t n = d.shape[0]
    cdef Py_ssize_t i, j, k, x, y
    cdef double dik, dkj, cand
    for i in range(n):
        if d[i, i] > 0.0:
            d[i, i] = 0.0
    for k in range(n):
        for i in range(n):
            dik = d[i, k]
            if dik == INFINITY:
                continue
            for j in range(n):
                dkj = d[k, j]
                if dkj == INFINITY:
                    continue
                if dik == -INFINITY or dkj == -INFINITY:
                    cand = -INFINITY
                else:
                    cand = dik + dkj
                if cand < d[i, j]:
                    d[i, j] = cand
    for i in range(n):
        if d[i, i] < 0.0:
            for x in range(n):
                if d[x, i] < INFINITY:
                    for y in range(n):
                        if d[i, y] < INFINITY:
                            d[x, y] = -INFINITY
    for i in range(n):
        if d[i, i] > 0.0:
            d[i, i] = 0.0
    return d_arr


def triangle_violations(m, bint gain):
    a_arr = np.ascontiguousarray(m, dtype=np.float64)
    cdef double[:, :] a = a_arr
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t i, j, k
    cdef double ab, bc, lhs
    out = []
    for i in range(n):
        for j in range(n):
            ab = a[i, j]
            for k in range(n):
                bc = a[j, k]
                if gain:
                    if ab == -INFINITY or bc == -INFINITY:
                        lhs = -INFINITY
                    elif ab == INFINITY or bc == INFINITY:
                        lhs = INFINITY
                    else:
                        lhs = ab + bc
                    if not lhs <= a[i, k]:
                        out.append((i, j, k))
                else:
                    if ab == INFINITY or bc == INFINITY:
                        lhs = INFINITY
                    elif ab == -INFINITY or bc == -INFINITY:
                        lhs = -INFINITY
                    else:
                        lhs = ab + bc
                    if not lhs >= a[i, k]:
                        out.append((i, j, k))
    return out


def minkowski_gain(v, double tol):
    u_arr = np.ascontiguousarray(v, dtype=np.float64)
    cdef double[:] u = u_arr
    cdef Py_ssize_t n = u.shape[0]
    cdef Py_ssize_t i
    cdef double s, q, e, band
    s = u[0] * u[0]
    q = -s
    e = s
    for i in range(1, n):
        s = u[i] * u[i]
        q += s
        e += s
    if e == 0.0:
        return 0.0
    band = tol * e
    if u[0] >= 0.0 and q <= band:
        if q >= -band:
            return 0.0
        return sqrt(-q)
    return -INFINITY


def minkowski_polyline_gain(pts, double tol):
    p_arr = np.ascontiguousarray(pts, dtype=np.float64)
    cdef double[:, :] p = p_arr
    cdef Py_ssize_t m = p.shape[0]
    cdef Py_ssize_t n = p.shape[1]
    cdef Py_ssize_t seg, i
    cdef double c, s, q, e, band, total
    total = 0.0
    for seg in range(m - 1):
        c = p[seg + 1, 0] - p[seg, 0]
        s = c * c
        q = -s
        e = s
        for i in range(1, n):
            c = p[seg + 1, i] - p[seg, i]
            s = c * c
            q += s
            e += s
        if e == 0.0:
            continue
        band = tol * e
        if p[seg + 1, 0] - p[seg, 0] >= 0.0 and q <= band:
            if q < -band:
                total += sqrt(-q)
        else:
            return -INFINITY
    return total
