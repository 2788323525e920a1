"""FMT1 tensor file codec.

Layout, all little-endian, no padding, no checksum::

    bytes 0-3   magic "FMT1"
    byte  4     version (1)
    byte  5     dtype   (1 = IEEE-754 float32)
    byte  6     ndims
    then        ndims dimension sizes, uint32 each
    then        row-major float32 payload

Read errors carry the byte offset at which the violation was detected.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .errors import TensorFormatError

MAGIC = b"FMT1"
VERSION = 1
DTYPE_FLOAT32 = 1

_MAX_DIM = 0xFFFFFFFF


def write_tensor(path, data) -> None:
    """Write an array as an FMT1 file (payload stored as float32)."""
    arr = np.ascontiguousarray(data, dtype="<f4")
    if arr.ndim < 1:
        raise ValueError("FMT1 tensors need at least one dimension")
    if arr.ndim > 255:
        raise ValueError("FMT1 supports at most 255 dimensions")
    for d in arr.shape:
        if d < 1 or d > _MAX_DIM:
            raise ValueError(f"dimension size {d} not representable as uint32 >= 1")
    header = MAGIC + bytes((VERSION, DTYPE_FLOAT32, arr.ndim))
    header += struct.pack(f"<{arr.ndim}I", *arr.shape)
    Path(path).write_bytes(header + arr.tobytes())


def read_tensor(path) -> np.ndarray:
    """Read an FMT1 file into a float32 array.

    Raises ``TensorFormatError`` with a byte offset on any violation.
    """
    blob = Path(path).read_bytes()
    if len(blob) < 4:
        raise TensorFormatError("file truncated before magic", len(blob))
    if blob[:4] != MAGIC:
        raise TensorFormatError(f"bad magic {blob[:4]!r}, expected {MAGIC!r}", 0)
    if len(blob) < 7:
        raise TensorFormatError("file truncated in fixed header", len(blob))
    if blob[4] != VERSION:
        raise TensorFormatError(f"unsupported version {blob[4]}", 4)
    if blob[5] != DTYPE_FLOAT32:
        raise TensorFormatError(f"unsupported dtype code {blob[5]}", 5)
    ndims = blob[6]
    if ndims < 1:
        raise TensorFormatError("ndims must be at least 1", 6)
    dims_end = 7 + 4 * ndims
    if len(blob) < dims_end:
        raise TensorFormatError("file truncated in dimension list", len(blob))
    shape = struct.unpack(f"<{ndims}I", blob[7:dims_end])
    for k, d in enumerate(shape):
        if d == 0:
            raise TensorFormatError(f"dimension {k} is zero", 7 + 4 * k)
    count = 1
    for d in shape:
        count *= d
    expected_end = dims_end + 4 * count
    if len(blob) < expected_end:
        raise TensorFormatError(
            f"payload truncated: expected {4 * count} bytes, got {len(blob) - dims_end}",
            len(blob),
        )
    if len(blob) > expected_end:
        raise TensorFormatError(
            f"{len(blob) - expected_end} trailing bytes after payload", expected_end
        )
    payload = np.frombuffer(blob, dtype="<f4", count=count, offset=dims_end)
    return payload.reshape(shape).copy()
