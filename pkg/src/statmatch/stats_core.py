"""Per-channel statistics and small symmetric spectral primitives.

Sample matrices are plain ``(n, c)`` float64 arrays: one row per sample
(pixel or feature vector), one column per channel.  Accumulation always
happens in double precision; images with millions of pixels lose digits
under float32.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import backend
from .errors import DegenerateSampleCount, NotSymmetric

EPSILON_DEFAULT = 1e-6

# hard floor applied to eigenvalues even when epsilon is 0, so the inverse
# square root stays finite for exactly singular covariances
EIG_ABS_FLOOR = 1e-12

SYMMETRY_RTOL = 1e-10


@dataclass(frozen=True)
class ChannelStats:
    """Mean, covariance and the (floored) spectral decomposition of one image
    or feature tensor.

    ``eigenvalues`` are sorted non-increasing and floored per
    :func:`eig_sym_psd`; ``eigenvectors`` holds the matching orthonormal
    columns.  Treat instances as immutable.
    """

    mean: np.ndarray
    covariance: np.ndarray
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def n_channels(self) -> int:
        return self.mean.shape[0]


def as_feature_matrix(f) -> np.ndarray:
    """Validate and return ``f`` as a C-contiguous (n, c) float64 array.

    Raises
    ------
    DegenerateSampleCount
        If there are fewer than two rows.
    ValueError
        If the array is not 2-D or contains non-finite entries.
    """
    arr = np.asarray(f, dtype=np.float64)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D sample matrix, got shape {arr.shape}")
    if arr.shape[1] < 1:
        raise ValueError("sample matrix needs at least one channel")
    if arr.shape[0] < 2:
        raise DegenerateSampleCount(
            f"need at least 2 samples for the n-1 covariance, got {arr.shape[0]}"
        )
    if not np.isfinite(arr).all():
        raise ValueError("sample matrix contains non-finite values")
    return np.ascontiguousarray(arr)


def compute_mean(f) -> np.ndarray:
    """Arithmetic mean over rows, as a length-c float64 vector."""
    return as_feature_matrix(f).mean(axis=0)


def compute_covariance(f) -> np.ndarray:
    """Sample covariance over rows (divisor n-1), symmetric by construction."""
    return backend.mean_cov(as_feature_matrix(f))[1]


def _check_square_symmetric(m) -> np.ndarray:
    arr = np.asarray(m, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {arr.shape}")
    if not np.isfinite(arr).all():
        raise ValueError("matrix contains non-finite values")
    scale = float(np.abs(arr).max())
    asym = float(np.abs(arr - arr.T).max())
    if asym > SYMMETRY_RTOL * scale:
        raise NotSymmetric(
            f"max asymmetry {asym:.3e} exceeds {SYMMETRY_RTOL:.0e} relative tolerance"
        )
    return arr


def eig_sym(m) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a symmetric matrix with deterministic ordering.

    Eigenvalues come back unmodified (no flooring), sorted non-increasing
    with ties kept in the order the underlying routine produced.  Each
    eigenvector column is flipped so its largest-magnitude entry is
    positive (ties broken by lowest index); signs are mathematically
    arbitrary, the fixed convention is what makes outputs reproducible.

    Raises ``NotSymmetric`` when the asymmetry exceeds the relative
    tolerance.
    """
    arr = _check_square_symmetric(m)
    vals, vecs = np.linalg.eigh(arr)
    order = np.argsort(-vals, kind="stable")
    vals = vals[order]
    vecs = vecs[:, order]
    anchors = np.argmax(np.abs(vecs), axis=0)
    flip = vecs[anchors, np.arange(vecs.shape[1])] < 0
    vecs[:, flip] = -vecs[:, flip]
    return vals, vecs


def eig_sym_psd(m, epsilon: float = EPSILON_DEFAULT) -> tuple[np.ndarray, np.ndarray]:
    """Like :func:`eig_sym` but with the spectrum floored for safe inversion.

    Every eigenvalue is raised to at least
    ``max(epsilon * lambda_max, epsilon, 1e-12)``: relative to the largest
    eigenvalue for well-scaled matrices, absolute for all-zero spectra
    (a constant color channel), with the hard 1e-12 floor guarding
    ``epsilon=0``.
    """
    if epsilon < 0:
        raise ValueError(f"epsilon must be non-negative, got {epsilon}")
    vals, vecs = eig_sym(m)
    floor = max(epsilon * vals[0], epsilon, EIG_ABS_FLOOR)
    return np.maximum(vals, floor), vecs


def compute_stats(f, epsilon: float = EPSILON_DEFAULT) -> ChannelStats:
    """Bundle mean, covariance and the floored eigendecomposition of ``f``."""
    arr = as_feature_matrix(f)
    mean, cov = backend.mean_cov(arr)
    vals, vecs = eig_sym_psd(cov, epsilon)
    return ChannelStats(mean=mean, covariance=cov, eigenvalues=vals, eigenvectors=vecs)
