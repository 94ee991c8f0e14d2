"""This file contains custom error classes for instance files and generator specs."""

from ..error import ValidationError


class ParseError(ValidationError):
    """Raised when an instance file is not well-formed JSON."""

    def __init__(
        self,
        message: str = "Instance file is not valid JSON.",
        line: int | None = None,
        column: int | None = None,
        field: str | None = None,
    ) -> None:
        """Initialize the error with the position of the fault.

        Args:
            message: Human readable diagnostic.
            line: 1-based line of the fault, when known.
            column: 1-based column of the fault, when known.
            field: Path of the offending field, when known.
        """
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message, field=field)
        self.line = line
        self.column = column


class InvalidSpec(ValidationError):
    """Raised when a generator specification is malformed."""

    def __init__(self, message: str = "Invalid generator specification.", field: str | None = None) -> None:
        """Initialize the error with a custom message."""
        super().__init__(message, field=field)
