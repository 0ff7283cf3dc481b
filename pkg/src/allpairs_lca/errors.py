"""Exception hierarchy shared by every stage of the pipeline."""


class LcaError(ValueError):
    """Base class for all errors raised by :mod:`allpairs_lca`."""

    exit_code = 1


class ParseError(LcaError):
    exit_code = 2


class CycleDetected(LcaError):
    exit_code = 3


class InvalidEll(LcaError):
    exit_code = 4


class EmptyQuerySet(LcaError):
    exit_code = 5


class VerificationFailed(LcaError):
    """A self-check of a computed result failed."""

    exit_code = 6


class DimensionMismatch(LcaError):
    exit_code = 7


class InvalidBucketCount(LcaError):
    exit_code = 7


class NotAntichain(LcaError):
    exit_code = 8


class NotPathRespecting(LcaError):
    exit_code = 8


class LabelMismatch(LcaError):
    exit_code = 8
