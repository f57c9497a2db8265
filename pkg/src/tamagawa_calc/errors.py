"""Exception hierarchy shared by all modules.

The CLI maps each class onto an exit code, so callers that want to
distinguish bad input from a failed cross-check should catch these
rather than ``Exception``.
"""

from __future__ import annotations


class TamagawaError(Exception):
    """Base class for every error raised by this package."""


class InvalidInputError(TamagawaError, ValueError):
    """Input data (type, isogeny, curve, config) is malformed or inconsistent."""


class InvalidCurveError(InvalidInputError):
    """The supplied zeta data cannot come from a curve over a finite field."""


class InvariantViolation(TamagawaError):
    """An internal cross-check between two independent routes disagreed."""


class ResourceBoundError(TamagawaError):
    """A computation would exceed its configured size bound."""
