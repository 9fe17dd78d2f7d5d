"""Exception hierarchy shared by every torsmooth module.

All errors raised on bad data or bad configuration derive from
:class:`TorsmoothError`, so callers can catch one class at a pipeline
boundary while tests assert the specific failure mode.
"""

__all__ = [
    "TorsmoothError",
    "EmptyInputError",
    "LengthMismatchError",
    "EmptyResultError",
    "TooFewPointsError",
    "TooManyBinsError",
    "EmptyWindowError",
    "RankDeficientError",
    "InsufficientDataError",
    "DegreesOfFreedomError",
    "NearSingularWeightError",
    "SpanTooSmallError",
    "AllWeightsZeroError",
    "InvalidSpecError",
    "NonUniformSpacingError",
    "SeriesTooShortError",
    "InvalidKnotsError",
    "WouldEmptyError",
    "ZeroTwistError",
    "StageError",
    "ParseError",
]


class TorsmoothError(Exception):
    """Base class for all errors raised by this package."""


class EmptyInputError(TorsmoothError):
    """No valid data pairs remain after ingestion filtering."""


class LengthMismatchError(TorsmoothError):
    """Abscissa and ordinate columns have different lengths."""


class EmptyResultError(TorsmoothError):
    """A filtering step removed every point."""


class TooFewPointsError(TorsmoothError):
    """The operation needs more samples than the series provides."""


class TooManyBinsError(TorsmoothError):
    """More bins requested than there are samples."""


class EmptyWindowError(TorsmoothError):
    """A local window or kernel support contains no samples."""


class RankDeficientError(TorsmoothError):
    """The least-squares design matrix is numerically singular."""


class InsufficientDataError(TorsmoothError):
    """Fewer positive-weight samples than fitted coefficients."""


class DegreesOfFreedomError(TorsmoothError):
    """Residual variance is undefined: sample count does not exceed the
    basis dimension."""


class NearSingularWeightError(TorsmoothError):
    """Kernel weights nearly cancel, making the weighted average
    numerically meaningless."""


class SpanTooSmallError(TorsmoothError):
    """The loess span selects fewer points than the local fit needs, or
    more points than the series has."""


class AllWeightsZeroError(TorsmoothError):
    """Every point in some loess neighborhood received zero weight."""


class InvalidSpecError(TorsmoothError):
    """A filter specification violates its own constraints."""


class NonUniformSpacingError(TorsmoothError):
    """The series is not uniformly spaced within tolerance."""


class SeriesTooShortError(TorsmoothError):
    """The series has fewer points than the operation requires."""


class InvalidKnotsError(TorsmoothError):
    """A knot vector is not valid for the requested spline degree."""


class WouldEmptyError(TorsmoothError):
    """Removing the flagged points would leave an empty series."""


class ZeroTwistError(TorsmoothError):
    """A twist-normalized quantity is undefined at zero twist angle."""


class StageError(TorsmoothError):
    """Failure inside a named reduction-pipeline stage.

    Wraps the underlying error so the caller can see which stage broke;
    the original exception is chained as ``__cause__``.
    """

    def __init__(self, stage, cause):
        self.stage = stage
        self.cause = cause
        super().__init__(f"{stage}: {cause}")


class ParseError(TorsmoothError):
    """A data file could not be parsed or fails basic validation.

    The message carries the line number and offending field whenever
    they are known.
    """
