# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loop: classify weighted points against a pencil of lines.

For every direction (vx[i], vy[i]) through the common anchor, each point
(px[j], py[j]) (already anchor-relative) lands in one of six buckets and
contributes its weight w[j]:

    0: strictly on the open side of the canonical normal (left of direction)
    1: strictly on the opposite side
    2: exactly on the line, forward ray (t > 0)
    3: exactly on the line, backward ray (t < 0)
    4: exactly the anchor
    5: within eps of the line but not exactly on it (unresolved)

Directions must already be canonicalized; weights may be +inf.
"""

import numpy as np

from libc.math cimport hypot


def atom_side_sweep(double[::1] px, double[::1] py, double[::1] w,
                    double[::1] vx, double[::1] vy, double eps):
    cdef Py_ssize_t m = vx.shape[0]
    cdef Py_ssize_t n = px.shape[0]
    out = np.zeros((m, 6), dtype=np.float64)
    cdef double[:, ::1] o = out
    cdef Py_ssize_t i, j
    cdef double a, b, e, s, t
    with nogil:
        for i in range(m):
            a = vx[i]
            b = vy[i]
            e = eps * hypot(a, b)
            for j in range(n):
                s = a * py[j] - b * px[j]
                if s > e:
                    o[i, 0] += w[j]
                elif s < -e:
                    o[i, 1] += w[j]
                elif s == 0.0:
                    t = a * px[j] + b * py[j]
                    if t > 0.0:
                        o[i, 2] += w[j]
                    elif t < 0.0:
                        o[i, 3] += w[j]
                    else:
                        o[i, 4] += w[j]
                else:
                    o[i, 5] += w[j]
    return out
