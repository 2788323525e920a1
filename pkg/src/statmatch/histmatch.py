"""Per-channel histogram matching (histogram specification).

Each channel of the source image is remapped so its cumulative
distribution lines up with the target's: for a source value v, the new
value is the smallest v' whose target CDF reaches cdf_source(v).  The
mapping is monotone, so intensity order within a channel is never
inverted, and everything is integer-exact and bit-reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import backend
from .errors import BinCountMismatch, ChannelMismatch, ValueOutOfRange

IMAGE_BINS = 256


@dataclass(frozen=True)
class ChannelCdf:
    """Histogram and normalized cumulative distribution of one channel."""

    bins: int
    histogram: np.ndarray
    cdf: np.ndarray
    pixel_count: int

    def __post_init__(self):
        if self.bins < 1:
            raise ValueError("bins must be positive")
        if self.histogram.shape != (self.bins,) or self.cdf.shape != (self.bins,):
            raise ValueError("histogram and cdf must have exactly `bins` entries")
        if int(self.histogram.sum()) != self.pixel_count:
            raise ValueError("histogram counts must sum to pixel_count")
        if self.cdf[-1] != 1.0:
            raise ValueError("cdf must end at exactly 1")
        expected = np.cumsum(self.histogram) / self.pixel_count
        if np.abs(self.cdf - expected).max() > 1e-12:
            raise ValueError("cdf is not the normalized cumulative histogram")


@dataclass(frozen=True)
class IntensityMap:
    """Monotone per-value lookup table from source to target intensities."""

    bins: int
    mapping: np.ndarray

    def __post_init__(self):
        if self.mapping.shape != (self.bins,):
            raise ValueError("mapping must have exactly `bins` entries")
        if np.any(np.diff(self.mapping) < 0):
            raise ValueError("mapping must be monotonically non-decreasing")
        if self.mapping[0] < 0 or self.mapping[-1] >= self.bins:
            raise ValueError("mapping values must lie in [0, bins-1]")


def _cdf_from_histogram(histogram: np.ndarray, m: int) -> ChannelCdf:
    counts = np.asarray(histogram, dtype=np.int64)
    n = int(counts.sum())
    # integer cumulative counts divided once by n: exact, and the final
    # entry is exactly 1.0
    cdf = np.cumsum(counts) / n
    return ChannelCdf(bins=m, histogram=counts, cdf=cdf, pixel_count=n)


def compute_cdf(channel_values, m: int) -> ChannelCdf:
    """Histogram and CDF of integer values over ``m`` bins.

    ``channel_values`` may have any shape (a channel plane is fine); it is
    flattened.  Values must be integers in [0, m-1].
    """
    if m < 1:
        raise ValueError("bin count must be positive")
    values = np.asarray(channel_values).ravel()
    if values.size == 0:
        raise ValueError("need at least one value")
    if not np.issubdtype(values.dtype, np.integer):
        raise ValueOutOfRange(f"values must be integers, got dtype {values.dtype}")
    lo, hi = int(values.min()), int(values.max())
    if lo < 0 or hi >= m:
        raise ValueOutOfRange(f"values span [{lo}, {hi}], outside [0, {m - 1}]")
    hist = np.bincount(values.astype(np.int64, copy=False), minlength=m)
    return _cdf_from_histogram(hist, m)


def build_mapping(cdf_s: ChannelCdf, cdf_t: ChannelCdf) -> IntensityMap:
    """For each source value, the smallest target value whose CDF reaches
    the source CDF."""
    if cdf_s.bins != cdf_t.bins:
        raise BinCountMismatch(f"{cdf_s.bins} source bins vs {cdf_t.bins} target bins")
    # first index where cdf_t >= cdf_s[v]; always < bins because both
    # CDFs end at exactly 1.0
    mapping = np.searchsorted(cdf_t.cdf, cdf_s.cdf, side="left")
    return IntensityMap(bins=cdf_s.bins, mapping=mapping)


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


def hm_image(x_s, x_t) -> np.ndarray:
    """Histogram-match an 8-bit image against a target, channel by channel.

    Channels are processed independently over the full planes (m = 256
    bins).  Output has the source dimensions and dtype uint8.
    """
    arr_s, orig_shape = _as_image(x_s, "source")
    arr_t, _ = _as_image(x_t, "target")
    if arr_s.shape[2] != arr_t.shape[2]:
        raise ChannelMismatch(
            f"source has {arr_s.shape[2]} channels, target has {arr_t.shape[2]}"
        )
    c = arr_s.shape[2]
    flat_s = np.ascontiguousarray(arr_s.reshape(-1, c))
    flat_t = np.ascontiguousarray(arr_t.reshape(-1, c))
    hists_s = backend.channel_histograms(flat_s)
    hists_t = backend.channel_histograms(flat_t)
    luts = np.empty((c, IMAGE_BINS), dtype=np.uint8)
    for ch in range(c):
        cdf_s = _cdf_from_histogram(hists_s[ch], IMAGE_BINS)
        cdf_t = _cdf_from_histogram(hists_t[ch], IMAGE_BINS)
        luts[ch] = build_mapping(cdf_s, cdf_t).mapping
    return backend.apply_luts(flat_s, luts).reshape(orig_shape)
