"""This module provides the SolverConfig class, which holds the settings of the
work-function path solvers.

Two backends share one contract: an exact linear program for the polyhedral
norms and a projected-subgradient method that works for every norm.
"""

from ..geometry.norm import NormTag
from .schema import check_value

LP_DEFAULT_TOL = 1e-6
SUBGRADIENT_DEFAULT_TOL = 1e-4


class SolverConfig:
    """
    Handles work-function solver configuration and validation.

    Attributes:
        mode (str): One of "auto", "lp", "subgradient".
        tol (float | None): Requested tolerance; None picks the backend default.
        max_iterations (int): Iteration cap of the subgradient backend.
        projection_tol (float): Convergence tolerance of Euclidean projections.
        projection_max_iterations (int): Sweep cap of Euclidean projections.
        feasibility_tol (float): Slack allowed on halfspace rows.
        conjugate_perturbation (float): Constant added to solver-backed conjugates (fault injection).
        SOLVER_SCHEMA (dict): Validation schema for solver configuration keys.
    """

    DEFAULTS: dict = {
        "mode": "auto",
        "tol": None,
        "max_iterations": 4000,
        "projection_tol": 1e-9,
        "projection_max_iterations": 20000,
        "feasibility_tol": 1e-7,
        "conjugate_perturbation": 0.0,
    }

    SOLVER_SCHEMA: dict = {
        "mode": {"type": str, "allowed_values": ["auto", "lp", "subgradient"]},
        "tol": {"type": (float, type(None)), "min": 1e-12, "max": 1e-1},
        "max_iterations": {"type": int, "min": 1, "max": 10_000_000},
        "projection_tol": {"type": float, "min": 1e-15, "max": 1e-2},
        "projection_max_iterations": {"type": int, "min": 1, "max": 10_000_000},
        "feasibility_tol": {"type": float, "min": 0.0, "max": 1e-2},
        "conjugate_perturbation": {"type": float, "min": -1e6, "max": 1e6},
    }

    def __init__(self, solver_dict: dict | None = None) -> None:
        """
        Initializes the SolverConfig object with values from a dictionary.

        Args:
            solver_dict (dict | None): Overrides for the defaults.

        Raises:
            KeyError: If the dictionary contains an unknown key.
            TypeError: If a value has the wrong type.
            ValueError: If a value is out of range.
        """
        values = dict(self.DEFAULTS)
        for key, value in (solver_dict or {}).items():
            self.validate(key, value)
            values[key] = value

        self.mode: str = values["mode"]
        self.tol: float | None = values["tol"]
        self.max_iterations: int = values["max_iterations"]
        self.projection_tol: float = values["projection_tol"]
        self.projection_max_iterations: int = values["projection_max_iterations"]
        self.feasibility_tol: float = values["feasibility_tol"]
        self.conjugate_perturbation: float = values["conjugate_perturbation"]

    def validate(self, key: str, value) -> None:
        """
        Validates a solver configuration value against its schema.

        Args:
            key (str): The configuration key to validate.
            value: The value to validate.

        Raises:
            KeyError: If the key is not a solver setting.
            TypeError: If the value is not of the expected type.
            ValueError: If the value is out of the allowed range.
        """
        if key not in self.SOLVER_SCHEMA:
            raise KeyError(key)
        if key == "tol" and value is None:
            return
        check_value(self.SOLVER_SCHEMA[key], value)

    def backend(self, norm: NormTag) -> str:
        """Resolves the backend used for a norm.

        Args:
            norm: The ambient norm.

        Returns:
            "lp" or "subgradient".

        Raises:
            ValueError: If LP mode is requested for the Euclidean norm.
        """
        if self.mode == "auto":
            return "subgradient" if norm is NormTag.EUCLIDEAN else "lp"
        if self.mode == "lp" and norm is NormTag.EUCLIDEAN:
            raise ValueError("LP mode needs a polyhedral norm (l1 or linf)")
        return self.mode

    def tolerance(self, norm: NormTag) -> float:
        """Returns the effective tolerance for a norm.

        Args:
            norm: The ambient norm.

        Returns:
            The configured tolerance, or the backend default when unset.
        """
        if self.tol is not None:
            return self.tol
        if self.backend(norm) == "lp":
            return LP_DEFAULT_TOL
        return SUBGRADIENT_DEFAULT_TOL

    def to_dict(self) -> dict:
        """Convert the settings to a dictionary for JSON serialization."""
        return {key: getattr(self, key) for key in self.DEFAULTS}
