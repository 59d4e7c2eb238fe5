# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled numeric kernels; same interface as the pure-Python module."""

import numpy as np
from libc.math cimport isfinite, NAN


cdef inline double _horner(const double[::1] c, double t) nogil:
    cdef Py_ssize_t k
    cdef double acc = 0.0
    for k in range(c.shape[0] - 1, -1, -1):
        acc = acc * t + c[k]
    return acc


def iterate_orbit(c1, c2, double x, double y, Py_ssize_t n, bint forward=True):
    cdef const double[::1] a = np.ascontiguousarray(c1, dtype=np.float64)
    cdef const double[::1] b = np.ascontiguousarray(c2, dtype=np.float64)
    xs_arr = np.empty(n + 1)
    ys_arr = np.empty(n + 1)
    cdef double[::1] xs = xs_arr
    cdef double[::1] ys = ys_arr
    cdef Py_ssize_t k, count = 1
    xs[0] = x
    ys[0] = y
    with nogil:
        for k in range(n):
            if forward:
                x = x + _horner(a, y)
                y = y + _horner(b, x)
            else:
                y = y - _horner(b, x)
                x = x - _horner(a, y)
            if not (isfinite(x) and isfinite(y)):
                break
            xs[k + 1] = x
            ys[k + 1] = y
            count += 1
    return xs_arr, ys_arr, count


def iterate_points(c1, c2, xs, ys, Py_ssize_t steps):
    cdef const double[::1] a = np.ascontiguousarray(c1, dtype=np.float64)
    cdef const double[::1] b = np.ascontiguousarray(c2, dtype=np.float64)
    px_arr = np.array(xs, dtype=np.float64)
    py_arr = np.array(ys, dtype=np.float64)
    cdef double[::1] px = px_arr
    cdef double[::1] py = py_arr
    cdef Py_ssize_t i, s
    cdef double x, y
    with nogil:
        for i in range(px.shape[0]):
            x = px[i]
            y = py[i]
            for s in range(steps):
                x = x + _horner(a, y)
                y = y + _horner(b, x)
                if not (isfinite(x) and isfinite(y)):
                    x = NAN
                    y = NAN
                    break
            px[i] = x
            py[i] = y
    return px_arr, py_arr
