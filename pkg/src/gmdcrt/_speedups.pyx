# cython: language_level=3, boundscheck=False, wraparound=False
"""int64 / complex128 versions of the hot loops in :mod:`gmdcrt._purepy`.

Callers guarantee that no intermediate product overflows int64.
"""

from libc.math cimport cos, sin, M_PI
import numpy as np


def remainders(long long[:, ::1] points, long long[:, ::1] m,
               long long[:, ::1] adj, long long d):
    cdef Py_ssize_t n = points.shape[0], dim = points.shape[1]
    cdef Py_ssize_t i, a, b
    cdef long long q = d if d > 0 else -d
    cdef long long s = 1 if d > 0 else -1
    cdef long long acc
    out_arr = np.empty((n, dim), dtype=np.int64)
    cdef long long[:, ::1] out = out_arr
    cdef long long[::1] k = np.empty(dim, dtype=np.int64)
    for i in range(n):
        for a in range(dim):
            acc = 0
            for b in range(dim):
                acc += adj[a, b] * points[i, b]
            acc = (s * acc) % q
            if acc < 0:
                acc += q
            k[a] = acc
        for a in range(dim):
            acc = 0
            for b in range(dim):
                acc += m[a, b] * k[b]
            out[i, a] = acc // q
    return out_arr


def phase_sum(long long[:, ::1] rows, long long[:, ::1] cols,
              double complex[::1] weights, long long q, int sign):
    cdef Py_ssize_t nr = rows.shape[0], nc = cols.shape[0], dim = rows.shape[1]
    cdef Py_ssize_t r, c, a
    cdef long long ph
    cdef double unit = 2.0 * M_PI / q
    cdef double ang, re, im
    cdef double complex w
    cdef double[::1] ctab = np.empty(q, dtype=np.float64)
    cdef double[::1] stab = np.empty(q, dtype=np.float64)
    for a in range(q):
        ctab[a] = cos(unit * a)
        stab[a] = sin(unit * a) * sign
    out_arr = np.empty(nr, dtype=np.complex128)
    cdef double complex[::1] out = out_arr
    for r in range(nr):
        re = 0.0
        im = 0.0
        for c in range(nc):
            ph = 0
            for a in range(dim):
                ph += rows[r, a] * cols[c, a]
            ph = ph % q
            if ph < 0:
                ph += q
            w = weights[c]
            re += w.real * ctab[ph] - w.imag * stab[ph]
            im += w.real * stab[ph] + w.imag * ctab[ph]
        out[r] = re + 1j * im
    return out_arr
