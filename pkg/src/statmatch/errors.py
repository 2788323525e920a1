"""Exception types shared across the package."""


class StatmatchError(Exception):
    """Base class for all errors raised by this package."""


class DegenerateSampleCount(StatmatchError):
    """Fewer than two samples; the sample covariance (divisor n-1) is undefined."""


class NotSymmetric(StatmatchError):
    """Matrix handed to the symmetric eigendecomposition is not symmetric."""


class ChannelMismatch(StatmatchError):
    """Source and target disagree on the number of channels."""


class ValueOutOfRange(StatmatchError):
    """Intensity value outside [0, bins-1]."""


class BinCountMismatch(StatmatchError):
    """CDFs built over different bin counts cannot be matched."""


class EmptyDataset(StatmatchError):
    """A dataset with no items cannot be paired."""


class ItemLoadError(StatmatchError):
    """A single pipeline item failed to load or transform (recorded, not fatal)."""


class OutputWriteError(StatmatchError):
    """Writing a pipeline output failed (fatal for the run)."""


class TensorFormatError(StatmatchError):
    """Malformed FMT1 tensor file.

    ``offset`` is the byte position at which the violation was detected.
    """

    def __init__(self, message, offset):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset
