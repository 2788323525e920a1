"""statmatch: match image or feature statistics to a target domain.

Two transforms and their combinations:

* Feature distribution matching (``fdm_*``) aligns mean and covariance
  via PCA whitening and recoloring.
* Histogram matching (``hm_image``) equalizes per-channel CDFs through a
  monotone intensity lookup.

The :mod:`statmatch.pipeline` layer pairs whole datasets deterministically
from a seed and executes in parallel with byte-identical results for any
worker count.  ``BACKEND`` names the kernel implementation selected at
import ("ext" for the compiled extension, "python" for the numpy
fallback); set ``STATMATCH_BACKEND`` to force one.
"""

from .backend import BACKEND
from .errors import (
    BinCountMismatch,
    ChannelMismatch,
    DegenerateSampleCount,
    EmptyDataset,
    ItemLoadError,
    NotSymmetric,
    OutputWriteError,
    StatmatchError,
    TensorFormatError,
    ValueOutOfRange,
)
from .fdm import fdm_features, fdm_image, fdm_tensor
from .fmt1 import read_tensor, write_tensor
from .histmatch import (
    IMAGE_BINS,
    ChannelCdf,
    IntensityMap,
    build_mapping,
    compute_cdf,
    hm_image,
)
from .imgio import load_image, save_png
from .pipeline import (
    GENERATOR_NAME,
    Assignment,
    DatasetRef,
    ItemResult,
    Method,
    PairingPlan,
    RunReport,
    build_plan,
    dump_plan,
    execute_plan,
    plan_from_manifest,
    read_manifest,
    transform_pair,
)
from .stats_core import (
    EPSILON_DEFAULT,
    ChannelStats,
    as_feature_matrix,
    compute_covariance,
    compute_mean,
    compute_stats,
    eig_sym,
    eig_sym_psd,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "EPSILON_DEFAULT",
    "GENERATOR_NAME",
    "IMAGE_BINS",
    "Assignment",
    "BinCountMismatch",
    "ChannelCdf",
    "ChannelMismatch",
    "ChannelStats",
    "DatasetRef",
    "DegenerateSampleCount",
    "EmptyDataset",
    "IntensityMap",
    "ItemLoadError",
    "ItemResult",
    "Method",
    "NotSymmetric",
    "OutputWriteError",
    "PairingPlan",
    "RunReport",
    "StatmatchError",
    "TensorFormatError",
    "ValueOutOfRange",
    "as_feature_matrix",
    "build_mapping",
    "build_plan",
    "compute_cdf",
    "compute_covariance",
    "compute_mean",
    "compute_stats",
    "dump_plan",
    "eig_sym",
    "eig_sym_psd",
    "execute_plan",
    "fdm_features",
    "fdm_image",
    "fdm_tensor",
    "hm_image",
    "load_image",
    "plan_from_manifest",
    "read_manifest",
    "read_tensor",
    "save_png",
    "transform_pair",
    "write_tensor",
    "__version__",
]
