"""Exception types raised by the finespec package.

Every error raised on a contract violation derives from FinespecError so
callers can catch the package's failures with a single except clause.
"""


class FinespecError(Exception):
    """Base class for all finespec errors."""


class EmptyPeriod(FinespecError):
    """Raised when a coefficient specification has period length zero."""


class ZeroB(FinespecError):
    """Raised when a subdiagonal coefficient b_k is (or evaluates to) zero."""


class ZeroQ(FinespecError):
    """Raised when a subdiagonal residue-class limit q_i is zero."""


class WrongPeriod(FinespecError):
    """Raised when an operation requires a specific period length (e.g. m = 2)."""


class RepeatedValue(FinespecError):
    """Raised when a diagonal value recurs after the claimed last occurrence."""


class NearLimitAmbiguous(FinespecError):
    """Raised when a point sits within matching tolerance of a residue-class
    limit, so finite scanning cannot decide whether it equals some a_k."""


class SingularPivot(FinespecError):
    """Raised when a resolvent computation meets a pivot a_k - lambda that is
    zero or below the pivot floor."""


class ConfigError(FinespecError):
    """Base class for run-configuration errors."""


class ParseError(ConfigError):
    """Structured-text config could not be parsed.

    Carries best-effort line/column information when the underlying parser
    provides it.
    """

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + loc)


class ValidationError(ConfigError):
    """Config parsed but a field is missing, unknown, or out of range."""

    def __init__(self, message, field=None):
        self.field = field
        super().__init__(message if field is None else f"{field}: {message}")
