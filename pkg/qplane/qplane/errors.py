"""
Exceptions raised by qplane.

Every error is a ValueError so callers that only care about bad input can
catch that; the CLI maps ConfigError to exit code 2.
"""


class QPlaneError(ValueError):
    """Base class for all qplane errors."""


class ZeroQ(QPlaneError):
    """A negative power of q was evaluated at q = 0."""


class BadDim(QPlaneError):
    """A truncation dimension is too small for the requested data."""


class NotNilpotent(QPlaneError):
    """An operator expected to satisfy b^p = 0 does not."""


class IndexOutOfRange(QPlaneError):
    """W_n was requested beyond the end of the polynomial sequence."""


class ModeError(QPlaneError):
    """Scalars from the EXACT and FLOAT modes were mixed."""


class ConfigError(QPlaneError):
    """The run configuration is invalid."""


class ExpressionSyntaxError(QPlaneError):
    """An expression could not be parsed.

    Attributes:
    - column: 1-based position in the source where parsing failed
    """
    column: int

    def __init__(self, message: str, column: int) -> None:
        """Initialize this error with <message> at 1-based <column>."""
        super().__init__(f"{message} (column {column})")
        self.column = column
