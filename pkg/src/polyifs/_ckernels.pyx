# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the kernels in ``_pykernels``; same contracts."""
import numpy as np
cimport numpy as cnp
from libc.math cimport fmod, floor, fabs

cnp.import_array()


def cloud_points(table):
    cdef cnp.complex128_t[:, ::1] tab = np.ascontiguousarray(table, dtype=np.complex128)
    cdef Py_ssize_t depth = tab.shape[0]
    cdef Py_ssize_t n = tab.shape[1] if depth > 0 else 1
    cdef Py_ssize_t total = 1
    cdef Py_ssize_t k, idx, j
    for k in range(depth):
        total *= n
    out = np.empty(total, dtype=np.complex128)
    cdef cnp.complex128_t[::1] pts = out
    cdef Py_ssize_t[::1] digits = np.zeros(max(depth, 1), dtype=np.intp)
    # pre_re[k], pre_im[k]: sum of the first k terms of the current word
    cdef double[::1] pre_re = np.zeros(depth + 1)
    cdef double[::1] pre_im = np.zeros(depth + 1)
    cdef Py_ssize_t start = 0
    # walk words in lexicographic order; only the suffix after the digit
    # that changed is re-summed, in the same left-to-right order
    for idx in range(total):
        for k in range(start, depth):
            pre_re[k + 1] = pre_re[k] + tab[k, digits[k]].real
            pre_im[k + 1] = pre_im[k] + tab[k, digits[k]].imag
        pts[idx].real = pre_re[depth]
        pts[idx].imag = pre_im[depth]
        j = depth - 1
        while j >= 0:
            digits[j] += 1
            if digits[j] < n:
                break
            digits[j] = 0
            j -= 1
        start = j if j >= 0 else 0
    return out


def monotone_chain(xs_in, ys_in, double eps):
    cdef double[::1] xs = np.ascontiguousarray(xs_in, dtype=np.float64)
    cdef double[::1] ys = np.ascontiguousarray(ys_in, dtype=np.float64)
    cdef Py_ssize_t npts = xs.shape[0]
    if npts < 3:
        return np.arange(npts, dtype=np.int64)
    out = np.empty(2 * npts, dtype=np.int64)
    cdef cnp.int64_t[::1] hull = out
    cdef Py_ssize_t top = 0, lower_top, i, a, b
    cdef double cross
    for i in range(npts):
        while top >= 2:
            a = hull[top - 2]
            b = hull[top - 1]
            cross = (xs[b] - xs[a]) * (ys[i] - ys[a]) - (ys[b] - ys[a]) * (xs[i] - xs[a])
            if cross > eps:
                break
            top -= 1
        hull[top] = i
        top += 1
    lower_top = top + 1
    for i in range(npts - 2, -1, -1):
        while top >= lower_top:
            a = hull[top - 2]
            b = hull[top - 1]
            cross = (xs[b] - xs[a]) * (ys[i] - ys[a]) - (ys[b] - ys[a]) * (xs[i] - xs[a])
            if cross > eps:
                break
            top -= 1
        hull[top] = i
        top += 1
    return out[: top - 1].copy()


def float_choices(long n, double phi, double theta, long k0, Py_ssize_t count, double tol):
    low_arr = np.empty(count, dtype=np.int64)
    pair_arr = np.zeros(count, dtype=np.uint8)
    cdef cnp.int64_t[::1] low = low_arr
    cdef cnp.uint8_t[::1] pair = pair_arr
    cdef double half_band = tol * n
    cdef double x, y, f, t
    cdef long k, fi
    cdef Py_ssize_t i
    for i in range(count):
        k = k0 + i
        x = theta - fmod(<double>k * phi, 1.0)
        x -= floor(x)
        y = x * n
        f = floor(y)
        t = y - f
        fi = <long>f
        if fabs(t - 0.5) <= half_band:
            low[i] = fi % n
            pair[i] = 1
        elif t > 0.5:
            low[i] = (fi + 1) % n
        else:
            low[i] = fi % n
    return low_arr, pair_arr
