"""Exception and warning types shared across the package."""


class NegativeValueError(ValueError):
    """An observation is negative, violating the positivity assumption."""


class LengthMismatchError(ValueError):
    """A bound vector's length does not match the sample size."""


class DegenerateSampleError(ValueError):
    """The sample is too small for the requested operation."""


class NTooLargeError(ValueError):
    """Exact coverage evaluation requested beyond the precision-safe size."""


class LambdaOutOfRangeError(ValueError):
    """Family parameter lambda is outside [0, 1]."""


class DomainError(ValueError):
    """Special-function argument outside its mathematical domain."""


class IndexOutOfRangeError(IndexError):
    """The published closed-form shortcut addresses a nonexistent order statistic."""


class ParseError(ValueError):
    """Malformed numeric input; carries 1-based line and column of the offending token."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        super().__init__(message)
        self.line = line
        self.column = column


class PrecisionLossWarning(RuntimeWarning):
    """Issued when cancellation in the exact coverage recursion erodes accuracy."""
