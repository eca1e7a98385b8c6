"""Exceptions raised by the covers library.

Library code raises these and never exits; ``covers.run_covers`` maps them to
exit status 2.
"""
import time


class CoversError(Exception):
    """Base class for every error raised by this package."""


class GraphInputError(CoversError, ValueError):
    """Malformed graph input."""


class LoopEdge(GraphInputError):
    pass


class VertexOutOfRange(GraphInputError):
    pass


class DuplicateEdge(GraphInputError):
    pass


class EdgeListFormatError(GraphInputError):
    pass


class InvalidParameter(CoversError, ValueError):
    pass


class OrientationMismatch(CoversError, ValueError):
    pass


class LabelingMismatch(CoversError, ValueError):
    pass


class NotSymmetric(CoversError, ValueError):
    pass


class PreconditionViolated(CoversError, ValueError):
    pass


class SizeLimitExceeded(CoversError):
    pass


class SearchTimeout(CoversError):
    pass


class InexactDivision(CoversError, ArithmeticError):
    pass


class DegreeBoundExceeded(CoversError, ArithmeticError):
    pass


class NonIntegerInterpolation(CoversError, ArithmeticError):
    pass


def check_deadline(deadline, what):
    """Raise SearchTimeout once ``time.monotonic()`` is past ``deadline``; None never expires."""
    if deadline is not None and time.monotonic() > deadline:
        raise SearchTimeout("{} ran past the time budget".format(what))
