"""Kernel backend selection.

The compiled extension is preferred when importable; otherwise the numpy
fallback is used.  ``STATMATCH_BACKEND=python`` forces the fallback and
``STATMATCH_BACKEND=ext`` makes a missing extension a hard error (useful
for benchmarking and CI).
"""

import os

_requested = os.environ.get("STATMATCH_BACKEND", "").strip().lower()

if _requested in ("", "ext"):
    try:
        from . import _kernels as _impl

        BACKEND = "ext"
    except ImportError:
        if _requested == "ext":
            raise ImportError(
                "STATMATCH_BACKEND=ext but the compiled statmatch._kernels "
                "extension is not available; reinstall with a C compiler"
            )
        from . import _kernels_py as _impl

        BACKEND = "python"
elif _requested == "python":
    from . import _kernels_py as _impl

    BACKEND = "python"
else:
    raise ValueError(
        f"unknown STATMATCH_BACKEND={_requested!r}; expected 'ext' or 'python'"
    )

mean_cov = _impl.mean_cov
affine_transform = _impl.affine_transform
quantize_u8 = _impl.quantize_u8
channel_histograms = _impl.channel_histograms
apply_luts = _impl.apply_luts
