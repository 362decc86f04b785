"""Exception hierarchy shared by the library and the command line."""


class DepthError(ValueError):
    """Base class for every error raised by gldepth."""


class GridError(DepthError):
    """Evaluation points are not a valid grid."""


class DimensionError(DepthError):
    """A curve or matrix does not conform to its grid."""


class SampleFormatError(DepthError):
    """A CSV file could not be parsed as a functional sample."""


class InsufficientSampleError(DepthError):
    """The sample has too few curves for the requested computation."""


class DegenerateSampleError(DepthError):
    """The sample makes a computation undefined (e.g. zero bandwidth)."""


class UndefinedCorrelationError(DegenerateSampleError):
    """A rank correlation was requested for a constant vector."""
