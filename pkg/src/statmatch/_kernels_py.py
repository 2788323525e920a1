"""Pure numpy implementations of the per-pixel kernels.

This is the fallback backend used when the compiled extension
(:mod:`statmatch._kernels`) is unavailable.  Both backends implement the
same five functions with identical contracts; integer-valued kernels
(histograms, LUT application, quantization) are bit-identical across
backends, float kernels may differ in the last ulp because summation
order differs.
"""

import numpy as np


def mean_cov(f):
    """Column mean and sample covariance (divisor n-1) of an (n, c) float64 array."""
    n = f.shape[0]
    mean = f.mean(axis=0, dtype=np.float64)
    centered = f - mean
    cov = centered.T @ centered / (n - 1)
    # dgemm output may be asymmetric in the last ulp
    cov = (cov + cov.T) * 0.5
    return mean, cov


def affine_transform(f, mean_s, t, mean_t):
    """(f - mean_s) @ t + mean_t for an (n, c) float64 array."""
    return (f - mean_s) @ t + mean_t


def quantize_u8(x):
    """Clamp to [0, 255] and round half away from zero into uint8."""
    return np.floor(np.clip(x, 0.0, 255.0) + 0.5).astype(np.uint8)


def channel_histograms(img):
    """Per-channel 256-bin counts of an (n, c) uint8 array, as (c, 256) int64."""
    c = img.shape[1]
    hist = np.empty((c, 256), dtype=np.int64)
    for ch in range(c):
        hist[ch] = np.bincount(img[:, ch], minlength=256)
    return hist


def apply_luts(img, luts):
    """Apply per-channel 256-entry uint8 LUTs to an (n, c) uint8 array."""
    out = np.empty_like(img)
    for ch in range(img.shape[1]):
        out[:, ch] = luts[ch][img[:, ch]]
    return out
