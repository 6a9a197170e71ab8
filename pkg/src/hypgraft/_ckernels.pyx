# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the kernels in ``_kernels_py``."""
import numpy as np
from libc.math cimport sqrt, hypot, INFINITY


def mvc_map(points, verts, values):
    cdef double[:, ::1] p = np.ascontiguousarray(points, dtype=np.float64)
    cdef double[:, ::1] v = np.ascontiguousarray(verts, dtype=np.float64)
    cdef double[:, ::1] f = np.ascontiguousarray(values, dtype=np.float64)
    cdef Py_ssize_t P = p.shape[0], N = v.shape[0], K = f.shape[1]
    out_arr = np.zeros((P, K))
    cdef double[:, ::1] out = out_arr
    cdef double[::1] t = np.empty(N)
    cdef double[::1] r = np.empty(N)
    cdef Py_ssize_t i, j, jn, k
    cdef double dx, dy, dxn, dyn, w, wsum
    for i in range(P):
        for j in range(N):
            r[j] = hypot(v[j, 0] - p[i, 0], v[j, 1] - p[i, 1])
        for j in range(N):
            jn = j + 1 if j + 1 < N else 0
            dx = v[j, 0] - p[i, 0]
            dy = v[j, 1] - p[i, 1]
            dxn = v[jn, 0] - p[i, 0]
            dyn = v[jn, 1] - p[i, 1]
            t[j] = (dx * dyn - dy * dxn) / (r[j] * r[jn] + dx * dxn + dy * dyn)
        wsum = 0.0
        for j in range(N):
            w = (t[j - 1 if j > 0 else N - 1] + t[j]) / r[j]
            wsum += w
            for k in range(K):
                out[i, k] += w * f[j, k]
        for k in range(K):
            out[i, k] /= wsum
    return out_arr


def directed_hausdorff(a, b, bint signed=True):
    cdef double[:, ::1] x = np.ascontiguousarray(a, dtype=np.float64)
    cdef double[:, ::1] y = np.ascontiguousarray(b, dtype=np.float64)
    cdef Py_ssize_t n = x.shape[0], m = y.shape[0], d = x.shape[1]
    cdef Py_ssize_t i, j, k
    cdef double best = 0.0, cur, dm, dp, e
    if n == 0:
        return 0.0
    if m == 0:
        return INFINITY
    for i in range(n):
        cur = INFINITY
        for j in range(m):
            dm = 0.0
            dp = 0.0
            for k in range(d):
                e = x[i, k] - y[j, k]
                dm += e * e
                e = x[i, k] + y[j, k]
                dp += e * e
            if signed and dp < dm:
                dm = dp
            if dm < cur:
                cur = dm
                # this row can no longer raise the maximum
                if cur <= best:
                    break
        if cur > best:
            best = cur
    return sqrt(best)
