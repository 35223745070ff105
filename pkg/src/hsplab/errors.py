"""Exception hierarchy.

Every domain error carries an ``exit_code`` used by the command line front
end, so callers embedding the library can ignore it.
"""


class HSPError(Exception):
    exit_code = 10


class NotInvertible(HSPError, ValueError):
    exit_code = 11


class NotCoprime(HSPError, ValueError):
    exit_code = 12


class NotPrime(HSPError, ValueError):
    exit_code = 4


class UnsupportedGroup(HSPError, ValueError):
    exit_code = 13


class NotUnitary(HSPError, ValueError):
    exit_code = 14


class DimensionMismatch(HSPError, ValueError):
    exit_code = 15


class RangeError(HSPError, ValueError):
    """Oracle value falls outside the output register."""

    exit_code = 16


class PromiseViolation(HSPError):
    """The oracle contradicts the hidden-subgroup promise."""

    exit_code = 7


class BudgetExhausted(HSPError):
    exit_code = 6


class NoFactor(HSPError, ValueError):
    exit_code = 3


class InvalidGenerator(HSPError, ValueError):
    exit_code = 8


class NotConnected(HSPError, ValueError):
    exit_code = 9


class ScaleExceeded(HSPError, ValueError):
    exit_code = 5
