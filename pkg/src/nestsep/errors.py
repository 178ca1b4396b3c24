"""Exception hierarchy shared by every module."""

import os


class MatroidError(Exception):
    """Base class for all errors raised by nestsep."""


class NotPrimePower(MatroidError):
    pass


class SizeGuard(MatroidError):
    """An exponential routine was asked to run past its configured limit."""


class InvalidRegion(MatroidError):
    pass


class Overlap(MatroidError):
    pass


class NotPartition(MatroidError):
    pass


class EmptyPart(MatroidError):
    pass


class CutTooLarge(MatroidError):
    def __init__(self, index, value=None):
        self.index = index
        self.value = value
        super().__init__(f"prefix cut {index} has connectivity {value}")


class NotNested(MatroidError):
    pass


class HypothesisFail(MatroidError):
    pass


class AmbientMismatch(MatroidError):
    pass


class DimensionMismatch(MatroidError):
    pass


class NotExactSeparation(MatroidError):
    pass


class DisagreementBug(MatroidError):
    """Two independently computed answers to the same question differ."""


class NotCubic(MatroidError):
    pass


class BadLabelling(MatroidError):
    pass


class NotAPath(MatroidError):
    pass


class ParseError(MatroidError):
    def __init__(self, line, msg):
        self.line = line
        super().__init__(f"line {line}: {msg}")


class ValidationError(MatroidError):
    pass


def guard(name, size, default):
    """Raise SizeGuard when ``size`` exceeds the limit for ``name``.

    The environment variable MATROID_MAX_N, when set, replaces every default.
    """
    override = os.environ.get("MATROID_MAX_N")
    limit = int(override) if override else default
    if size > limit:
        raise SizeGuard(f"{name}: size {size} exceeds limit {limit}")
