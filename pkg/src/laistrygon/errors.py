"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class LaistrygonError(Exception):
    """Base class for all errors raised by this package."""


class DivisionByZero(LaistrygonError, ZeroDivisionError):
    pass


class NonInvertible(LaistrygonError, ZeroDivisionError):
    """Denominator vanishes in a specialised coefficient field."""


class ParseError(LaistrygonError, ValueError):
    def __init__(self, message: str, text: str = "", position: int = -1):
        self.text = text
        self.position = position
        if position >= 0:
            message = f"{message} at position {position}: {text!r}"
        super().__init__(message)


class InvalidSpec(LaistrygonError, ValueError):
    pass


class IndexOutOfRange(LaistrygonError, IndexError):
    pass


class BudgetExceeded(LaistrygonError, RuntimeError):
    """The straightening loop took more rewrite steps than allowed."""


class Unsupported(LaistrygonError, NotImplementedError):
    pass


class PreconditionError(LaistrygonError, ValueError):
    pass


class CheckFailure(LaistrygonError, AssertionError):
    """A verification routine found a counterexample.

    ``report`` carries the full report when the failure came out of one.
    """

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class ConfluenceFailure(CheckFailure):
    pass


class IdentityFailure(CheckFailure):
    pass


class OreFailure(CheckFailure):
    pass


class RelationFailure(CheckFailure):
    pass


class SystemFailure(CheckFailure):
    pass


class NotOnVariety(LaistrygonError, ValueError):
    """The starting point has a0*c0 != 0, so no point module starts there."""
