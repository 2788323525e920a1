"""Fixture builders shared by the test modules."""

import numpy as np
from PIL import Image


def rand_image(rng, h, w, c):
    return rng.integers(0, 256, size=(h, w, c), dtype=np.uint8)


def full_rank_image(rng, h, w, c):
    """Random image whose channel covariance is comfortably non-singular."""
    while True:
        img = rand_image(rng, h, w, c)
        flat = img.reshape(-1, c).astype(np.float64)
        cov = np.atleast_2d(np.cov(flat, rowvar=False, ddof=1))
        vals = np.linalg.eigvalsh(cov)
        if vals[0] > 1e-3 * vals[-1] and vals[-1] > 0:
            return img


def write_png(arr, path):
    a = arr[:, :, 0] if (arr.ndim == 3 and arr.shape[2] == 1) else arr
    Image.fromarray(a).save(path, format="PNG")


def make_dataset(rng, root, n, c=3, lo=6, hi=16, prefix="img"):
    """Write n random PNGs under root; returns the paths in name order."""
    root.mkdir(parents=True, exist_ok=True)
    paths = []
    for i in range(n):
        h = int(rng.integers(lo, hi + 1))
        w = int(rng.integers(lo, hi + 1))
        p = root / f"{prefix}{i:04d}.png"
        write_png(rand_image(rng, h, w, c), p)
        paths.append(p)
    return paths


def read_tree(root):
    """Relative path -> bytes for every file under root."""
    return {
        str(p.relative_to(root)): p.read_bytes()
        for p in sorted(root.rglob("*"))
        if p.is_file()
    }


def low_rank_tensor(rng, shape, rank):
    """Random tensor whose channel-space covariance has rank <= rank."""
    c = shape[-1]
    n = int(np.prod(shape[:-1]))
    data = rng.standard_normal((n, rank)) @ rng.standard_normal((rank, c))
    return (data + 100.0 * rng.standard_normal(c)).reshape(shape)


def rel_frobenius(a, b):
    return float(np.linalg.norm(a - b) / np.linalg.norm(b))


def channel_cov(samples):
    """(n, c) -> c x c sample covariance with divisor n-1, always 2-D."""
    return np.atleast_2d(np.cov(samples, rowvar=False, ddof=1))
