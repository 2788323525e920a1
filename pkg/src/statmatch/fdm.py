"""Feature Distribution Matching.

Transforms source samples so their mean and covariance equal the
target's while preserving content: center, whiten with the source
spectrum, recolor with the target spectrum, shift by the target mean.
Works on 8-bit images (pixels as c-dimensional samples) and on
real-valued feature tensors (anything whose last axis is channels).
"""

from __future__ import annotations

import numpy as np

from . import backend
from .errors import ChannelMismatch, DegenerateSampleCount
from .stats_core import EPSILON_DEFAULT, ChannelStats, as_feature_matrix, compute_stats


def _transfer_matrix(source: ChannelStats, target: ChannelStats) -> np.ndarray:
    # U_s diag(1/sqrt(l_s)) diag(sqrt(l_t)) U_t^T, spectra index-aligned
    # (both sorted non-increasing)
    scale = np.sqrt(target.eigenvalues) / np.sqrt(source.eigenvalues)
    return (source.eigenvectors * scale) @ target.eigenvectors.T


def fdm_features(f_s, f_t, epsilon: float = EPSILON_DEFAULT) -> np.ndarray:
    """Match the rows of ``f_s`` to the mean and covariance of ``f_t``.

    Parameters
    ----------
    f_s, f_t : array_like
        (n, c) sample matrices; row counts may differ, channel counts must
        agree and both need n >= 2.
    epsilon : float
        Relative floor for the eigenvalue spectra (see ``eig_sym_psd``);
        keeps the whitening bounded when a channel is constant.

    Returns
    -------
    np.ndarray
        (n_s, c) float64 matrix with the target's statistics, rows in
        source order.
    """
    mat_s = as_feature_matrix(f_s)
    mat_t = as_feature_matrix(f_t)
    if mat_s.shape[1] != mat_t.shape[1]:
        raise ChannelMismatch(
            f"source has {mat_s.shape[1]} channels, target has {mat_t.shape[1]}"
        )
    stats_s = compute_stats(mat_s, epsilon)
    stats_t = compute_stats(mat_t, epsilon)
    transfer = _transfer_matrix(stats_s, stats_t)
    return backend.affine_transform(mat_s, stats_s.mean, transfer, stats_t.mean)


def _as_image(x, name: str) -> tuple[np.ndarray, tuple[int, ...]]:
    arr = np.asarray(x)
    if arr.dtype != np.uint8:
        raise ValueError(f"{name} must be uint8, got dtype {arr.dtype}")
    orig_shape = arr.shape
    if arr.ndim == 2:
        arr = arr[:, :, None]
    if arr.ndim != 3:
        raise ValueError(f"{name} must be h x w x c (or h x w), got shape {orig_shape}")
    return arr, orig_shape


def _round_half_away(x: np.ndarray) -> np.ndarray:
    return np.copysign(np.floor(np.abs(x) + 0.5), x)


def fdm_image(x_s, x_t, epsilon: float = EPSILON_DEFAULT, clamp: bool = True):
    """Distribution-match an 8-bit image against a target image.

    Pixels are flattened row-major into (n, c) sample matrices; sizes may
    differ between source and target, channel counts must match.  The
    float result is quantized back to integers: with ``clamp=True``
    (default) values are clipped to [0, 255], rounded half away from zero
    and returned as uint8; with ``clamp=False`` the rounded values keep
    their out-of-range excursions in an int32 array, for analysis.

    Returns
    -------
    (image, floats)
        The quantized image with source dimensions, and the
        pre-quantization (n, c) float64 matrix for verifying statistics.
    """
    arr_s, orig_shape = _as_image(x_s, "source")
    arr_t, _ = _as_image(x_t, "target")
    if arr_s.shape[2] != arr_t.shape[2]:
        raise ChannelMismatch(
            f"source has {arr_s.shape[2]} channels, target has {arr_t.shape[2]}"
        )
    c = arr_s.shape[2]
    if arr_s.shape[0] * arr_s.shape[1] < 2 or arr_t.shape[0] * arr_t.shape[1] < 2:
        raise DegenerateSampleCount("images need at least 2 pixels")
    flat_s = arr_s.reshape(-1, c).astype(np.float64)
    flat_t = arr_t.reshape(-1, c).astype(np.float64)
    matched = fdm_features(flat_s, flat_t, epsilon)
    if clamp:
        quantized = backend.quantize_u8(matched)
    else:
        quantized = _round_half_away(matched).astype(np.int32)
    return quantized.reshape(orig_shape), matched


def fdm_tensor(t_s, t_t, epsilon: float = EPSILON_DEFAULT) -> np.ndarray:
    """Distribution-match a feature tensor along its last (channel) axis.

    All leading axes are flattened into samples; the source shape is
    restored on output.  No clamping or quantization happens here: feature
    space is unbounded.
    """
    arr_s = np.asarray(t_s, dtype=np.float64)
    arr_t = np.asarray(t_t, dtype=np.float64)
    if arr_s.ndim < 1 or arr_t.ndim < 1:
        raise ValueError("tensors must have at least one axis")
    if arr_s.shape[-1] != arr_t.shape[-1]:
        raise ChannelMismatch(
            f"source has {arr_s.shape[-1]} channels, target has {arr_t.shape[-1]}"
        )
    c = arr_s.shape[-1]
    matched = fdm_features(arr_s.reshape(-1, c), arr_t.reshape(-1, c), epsilon)
    return matched.reshape(arr_s.shape)
