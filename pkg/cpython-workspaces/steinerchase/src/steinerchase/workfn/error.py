"""This file contains custom error classes for work-function evaluation."""

from ..error import SolverError, ValidationError


class SolverFailure(SolverError):
    """Raised when a path program does not reach its gap target."""

    def __init__(self, iterations: int, best_bound: float, message: str = "Path program missed its gap target.") -> None:
        """Initialize the failure with the work done so far.

        Args:
            iterations: Iterations (or LP solves) spent.
            best_bound: Best objective value found.
            message: Human readable diagnostic.
        """
        super().__init__(f"{message} (iterations={iterations}, best_bound={best_bound:.6g})")
        self.iterations = iterations
        self.best_bound = best_bound


class DualNormViolation(ValidationError):
    """Raised when a conjugate is queried outside the dual unit ball."""

    def __init__(self, message: str = "Dual norm of v exceeds one.") -> None:
        """Initialize the violation with a custom message."""
        super().__init__(message, field="v")


class EmptyLevelSet(ValidationError):
    """Raised when a level R lies below the offline optimum."""

    def __init__(self, message: str = "Level set is empty.") -> None:
        """Initialize the error with a custom message."""
        super().__init__(message, field="R")


class DimensionTooLarge(ValidationError):
    """Raised when the grid oracle is asked for more than two dimensions."""

    def __init__(self, message: str = "Grid oracle supports d <= 2 only.") -> None:
        """Initialize the error with a custom message."""
        super().__init__(message, field="dim")
