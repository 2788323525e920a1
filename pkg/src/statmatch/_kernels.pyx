# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled per-pixel kernels (hot loops of the image transforms).

Mirrors :mod:`statmatch._kernels_py`; see there for the contracts.  The
loops fuse passes that the numpy fallback spells out as temporaries.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport floor

cnp.import_array()


def mean_cov(const double[:, ::1] f):
    """Column mean and sample covariance (divisor n-1) of an (n, c) float64 array."""
    cdef Py_ssize_t n = f.shape[0]
    cdef Py_ssize_t c = f.shape[1]
    mean_arr = np.zeros(c, dtype=np.float64)
    cov_arr = np.zeros((c, c), dtype=np.float64)
    cdef double[::1] mean = mean_arr
    cdef double[:, ::1] cov = cov_arr
    cdef Py_ssize_t i, j, k
    cdef double dj

    for i in range(n):
        for j in range(c):
            mean[j] += f[i, j]
    for j in range(c):
        mean[j] /= n

    # second pass over exactly centered data; upper triangle, then mirror
    for i in range(n):
        for j in range(c):
            dj = f[i, j] - mean[j]
            for k in range(j, c):
                cov[j, k] += dj * (f[i, k] - mean[k])
    for j in range(c):
        for k in range(j, c):
            cov[j, k] /= n - 1
            cov[k, j] = cov[j, k]
    return mean_arr, cov_arr


def affine_transform(const double[:, ::1] f, const double[::1] mean_s,
                     const double[:, ::1] t, const double[::1] mean_t):
    """(f - mean_s) @ t + mean_t for an (n, c) float64 array."""
    cdef Py_ssize_t n = f.shape[0]
    cdef Py_ssize_t c = f.shape[1]
    out_arr = np.empty((n, c), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t i, j, k
    cdef double acc

    for i in range(n):
        for j in range(c):
            acc = 0.0
            for k in range(c):
                acc += (f[i, k] - mean_s[k]) * t[k, j]
            out[i, j] = acc + mean_t[j]
    return out_arr


def quantize_u8(const double[:, ::1] x):
    """Clamp to [0, 255] and round half away from zero into uint8."""
    cdef Py_ssize_t n = x.shape[0]
    cdef Py_ssize_t c = x.shape[1]
    out_arr = np.empty((n, c), dtype=np.uint8)
    cdef unsigned char[:, ::1] out = out_arr
    cdef Py_ssize_t i, j
    cdef double v

    for i in range(n):
        for j in range(c):
            v = x[i, j]
            if v < 0.0:
                v = 0.0
            elif v > 255.0:
                v = 255.0
            out[i, j] = <unsigned char>floor(v + 0.5)
    return out_arr


def channel_histograms(const unsigned char[:, ::1] img):
    """Per-channel 256-bin counts of an (n, c) uint8 array, as (c, 256) int64."""
    cdef Py_ssize_t n = img.shape[0]
    cdef Py_ssize_t c = img.shape[1]
    hist_arr = np.zeros((c, 256), dtype=np.int64)
    cdef cnp.int64_t[:, ::1] hist = hist_arr
    cdef Py_ssize_t i, j

    for i in range(n):
        for j in range(c):
            hist[j, img[i, j]] += 1
    return hist_arr


def apply_luts(const unsigned char[:, ::1] img, const unsigned char[:, ::1] luts):
    """Apply per-channel 256-entry uint8 LUTs to an (n, c) uint8 array."""
    cdef Py_ssize_t n = img.shape[0]
    cdef Py_ssize_t c = img.shape[1]
    out_arr = np.empty((n, c), dtype=np.uint8)
    cdef unsigned char[:, ::1] out = out_arr
    cdef Py_ssize_t i, j

    for i in range(n):
        for j in range(c):
            out[i, j] = luts[j, img[i, j]]
    return out_arr
