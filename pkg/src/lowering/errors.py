"""Exception hierarchy shared by every module of the package."""


class LoweringError(Exception):
    """Base class for all errors raised by this package."""


class InputError(LoweringError, ValueError):
    """Malformed input: wrong lengths, non-dominant weights, bad sequences."""


class DomainError(LoweringError, ValueError):
    """Parameters outside the range where an operation is defined."""


class ConsistencyError(LoweringError, RuntimeError):
    """An internal invariant failed. Always indicates a bug, never bad input."""
