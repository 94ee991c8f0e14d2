"""This file contains custom error classes for the chasers."""

from ..error import ValidationError


class NotNested(ValidationError):
    """Raised when a body is not contained in its predecessor."""

    def __init__(self, message: str = "Request is not nested in the previous body.") -> None:
        """Initialize the error with a custom message."""
        super().__init__(message, field="request")


class UnsupportedRequest(ValidationError):
    """Raised when a chaser receives a request kind it cannot serve."""

    def __init__(self, message: str = "Request kind not supported by this chaser.") -> None:
        """Initialize the error with a custom message."""
        super().__init__(message, field="request")
