"""Root error classes shared by every steinerchase module.

Validation errors mean the caller handed in something malformed; solver errors
mean a numerical routine could not meet its contract. The CLI maps the two
families to different exit codes.
"""


class ChaseError(Exception):
    """Base class for all steinerchase errors."""

    pass


class ValidationError(ChaseError, ValueError):
    """Raised when an input fails validation."""

    def __init__(self, message: str = "Input failed validation.", field: str | None = None) -> None:
        """Initialize the validation error.

        Args:
            message: Human readable diagnostic.
            field: Path of the offending field, when there is one.
        """
        if field is not None:
            message = f"{field}: {message}"
        super().__init__(message)
        self.field = field


class SolverError(ChaseError):
    """Raised when a numerical routine fails to meet its tolerance contract."""

    def __init__(self, message: str = "Numerical solver failed.") -> None:
        """Initialize the solver error with a custom message."""
        super().__init__(message)
