"""Exception taxonomy.

Domain failures (a query outside the cone, a falsified identity) are kept
apart from usage/budget errors because the CLI maps them to different exit
codes: 1 for domain failures, 2 for bad input or exhausted budgets.
"""

from __future__ import annotations


class ConefanError(Exception):
    """Base class for all errors raised by this package."""


class InputError(ConefanError):
    """Malformed or inconsistent input data."""


class NotInConeError(ConefanError):
    """The target vector admits no nonnegative representation."""


class EmptyPolyhedronError(ConefanError):
    """An operation requiring a nonempty polyhedron received an empty one."""


class NotPointedError(ConefanError):
    """A cone required to be strongly convex contains a line."""

    def __init__(self, line, message=None):
        self.line = tuple(line)
        super().__init__(message or f"cone contains the line through {self.line}")


class NotPointedSupportError(ConefanError):
    """Normal cones are not strongly convex, so no pointed fan exists."""


class CapExceededError(ConefanError):
    """A configured dimension or size cap was exceeded."""


class BudgetExceededError(ConefanError):
    """An enumeration or iteration budget ran out before completion."""


class StabilizationError(ConefanError):
    """No stabilizing exponent below the cap exists for some fan ray."""

    def __init__(self, ray, cap):
        self.ray = tuple(ray)
        self.cap = cap
        super().__init__(
            f"no stabilizing exponent <= {cap} found for ray {self.ray}"
        )
