"""8-bit image loading and PNG writing.

Inputs are PNG or JPEG; outputs are always PNG so byte-identity checks
between runs stay meaningful.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
from PIL import Image

from .errors import ItemLoadError

# modes convertible to plain RGB without depth changes
_CONVERTIBLE = {"P", "RGBA", "LA", "1"}


def load_image(path) -> np.ndarray:
    """Load an 8-bit image as (h, w, c) uint8, c = 1 (grayscale) or 3 (RGB).

    Palette/alpha images are converted to RGB; higher bit depths are
    rejected.
    """
    try:
        with Image.open(path) as im:
            mode = im.mode
            if mode == "L":
                arr = np.asarray(im, dtype=np.uint8)
                return arr[:, :, None]
            if mode != "RGB":
                if mode not in _CONVERTIBLE:
                    raise ItemLoadError(f"{path}: unsupported image mode {mode!r}")
                im = im.convert("RGB")
            return np.asarray(im, dtype=np.uint8)
    except ItemLoadError:
        raise
    except (OSError, ValueError, SyntaxError) as exc:
        raise ItemLoadError(f"{path}: {exc}") from exc


def save_png(arr: np.ndarray, path) -> None:
    """Write a uint8 array ((h, w), (h, w, 1) or (h, w, 3)) as PNG."""
    if arr.dtype != np.uint8:
        raise ValueError(f"PNG output requires uint8, got {arr.dtype}")
    if arr.ndim == 3 and arr.shape[2] == 1:
        arr = arr[:, :, 0]
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Image.fromarray(arr).save(path, format="PNG")
