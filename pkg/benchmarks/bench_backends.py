"""Compare the compiled kernels against the numpy fallback.

Runs each kernel on identical inputs and reports best-of-N wall times.
The compiled extension must be built (install the package with a C
compiler available); otherwise only the numpy column is shown.

Usage:
    python3 benchmarks/bench_backends.py [--pixels N] [--channels C] [--repeat R]
"""

import argparse
import time

import numpy as np

from statmatch import _kernels_py

try:
    from statmatch import _kernels
except ImportError:
    _kernels = None


def best_of(fn, args, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--pixels", type=int, default=1 << 20,
                        help="sample count n (default: 1M)")
    parser.add_argument("--channels", type=int, default=3,
                        help="channel count c (default: 3)")
    parser.add_argument("--repeat", type=int, default=5,
                        help="repetitions, best time wins (default: 5)")
    args = parser.parse_args()

    n, c = args.pixels, args.channels
    rng = np.random.default_rng(0)
    f = np.ascontiguousarray(rng.uniform(0.0, 255.0, size=(n, c)))
    mean_s = f.mean(axis=0)
    mean_t = rng.uniform(0.0, 255.0, size=c)
    t = np.ascontiguousarray(rng.standard_normal((c, c)))
    floats = rng.uniform(-20.0, 275.0, size=(n, c))
    img = np.ascontiguousarray(rng.integers(0, 256, size=(n, c), dtype=np.uint8))
    luts = np.ascontiguousarray(rng.integers(0, 256, size=(c, 256), dtype=np.uint8))

    cases = [
        ("mean_cov", "mean_cov", (f,)),
        ("affine_transform", "affine_transform", (f, mean_s, t, mean_t)),
        ("quantize_u8", "quantize_u8", (floats,)),
        ("channel_histograms", "channel_histograms", (img,)),
        ("apply_luts", "apply_luts", (img, luts)),
    ]

    print(f"n={n} c={c} repeat={args.repeat} (best-of times, ms)")
    header = f"{'kernel':<20} {'numpy':>10} {'compiled':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for label, name, call_args in cases:
        t_py = best_of(getattr(_kernels_py, name), call_args, args.repeat)
        if _kernels is not None:
            t_ext = best_of(getattr(_kernels, name), call_args, args.repeat)
            print(f"{label:<20} {t_py * 1e3:>10.2f} {t_ext * 1e3:>10.2f} "
                  f"{t_py / t_ext:>7.2f}x")
        else:
            print(f"{label:<20} {t_py * 1e3:>10.2f} {'n/a':>10} {'':>8}")
    if _kernels is None:
        print("\ncompiled extension not available; showing numpy fallback only")


if __name__ == "__main__":
    main()
