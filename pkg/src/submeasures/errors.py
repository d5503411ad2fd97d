"""Exception types shared across the package."""
from __future__ import annotations


class SubmeasureError(Exception):
    """Base class for every error raised by this package."""


class UniverseError(SubmeasureError, ValueError):
    """A set lies outside the declared universe of a submeasure."""


class CapExceeded(SubmeasureError):
    """An exact search was asked to work above its configured size cap."""


class BudgetExhausted(SubmeasureError):
    """A budgeted search stopped before reaching a verdict.

    ``progress`` carries whatever partial information the search had,
    e.g. a lower bound on a submeasure value or the largest homogeneous
    set found so far.
    """

    def __init__(self, message: str, progress=None):
        super().__init__(message)
        self.progress = progress


class PreconditionError(SubmeasureError, ValueError):
    """An operation was called outside its stated preconditions."""


class SelectorFailure(SubmeasureError):
    """A selector could not produce a verified certificate."""

    def __init__(self, message: str, report: dict | None = None):
        super().__init__(message)
        self.report = report or {}


class CertificateError(SubmeasureError):
    """An exact certificate failed independent re-verification."""
