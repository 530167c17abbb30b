"""Exception types raised by the bermancodes library."""
from __future__ import annotations


class BermanError(ValueError):
    """Base class for invalid inputs to any bermancodes operation."""


class InvalidParameterError(BermanError):
    """Code, group or channel parameters outside their admissible range."""


class DimensionMismatchError(BermanError):
    """Vector or matrix shapes that do not fit together."""


class ZeroSetError(BermanError):
    """A zero-set that is not closed under doubling or is malformed."""


class FieldError(BermanError):
    """A binary extension field that cannot carry the requested transform."""
