"""This file contains custom error classes for geometric primitives."""

from ..error import SolverError, ValidationError


class InfeasibleBodyError(ValidationError):
    """Raised when a set of halfspaces has no common point."""

    def __init__(self, message: str = "Halfspaces have empty intersection.", field: str | None = None) -> None:
        """Initialize the infeasibility error with a custom message."""
        super().__init__(message, field=field)


class UnboundedBodyError(ValidationError):
    """Raised when a body is unbounded, or a support query leaves its certified ball."""

    def __init__(self, message: str = "Body is unbounded.", field: str | None = None) -> None:
        """Initialize the unboundedness error with a custom message."""
        super().__init__(message, field=field)


class MaxIterationsError(SolverError):
    """Raised when an iterative geometric routine fails to converge."""

    def __init__(self, message: str = "Iteration cap reached before convergence.") -> None:
        """Initialize the iteration error with a custom message."""
        super().__init__(message)
