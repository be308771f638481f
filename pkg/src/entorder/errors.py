"""Exception types raised by the library.

Every class name doubles as the error tag printed by the command line tool.
"""


class EntorderError(Exception):
    """Base class for all domain errors."""


class NotHermitian(EntorderError, ValueError):
    pass


class NoConvergence(EntorderError, RuntimeError):
    pass


class DimensionMismatch(EntorderError, ValueError):
    pass


class NotNormalized(EntorderError, ValueError):
    pass


class WrongDimension(EntorderError, ValueError):
    pass


class AngleOutOfRange(EntorderError, ValueError):
    pass


class BadOrder(EntorderError, ValueError):
    pass


class LengthMismatch(EntorderError, ValueError):
    pass


class NotMajorized(EntorderError, ValueError):
    pass


class NotSorted(EntorderError, ValueError):
    pass


class TooLarge(EntorderError, ValueError):
    pass


class OutOfRange(EntorderError, ValueError):
    pass


class InvalidInput(EntorderError, ValueError):
    """Malformed vectors, matrices or files (NaN, negative mass, bad JSON)."""
