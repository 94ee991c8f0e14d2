"""Per-step records of a chasing run."""

import numpy as np


class StepResult:
    """What one step of a chaser did and what it cost.

    Attributes:
        step: 1-based request index n.
        position: x_n.
        movement: ||x_n - x_{n-1}|| in the ambient norm.
        service: f_n(x_n), zero for bodies.
        fixup_distance: Euclidean distance the estimate moved when projected onto K_n.
        opt: Offline optimum of the first n requests.
        stderr: Standard error of the estimate behind x_n (zero for deterministic chasers).
        solver_gap: Largest solver gap behind x_n.
        flagged: Whether the fix-up exceeded 5 * stderr + tol.
        path_movement: Charged path length; differs from movement only with substeps.
    """

    def __init__(
        self,
        step: int,
        position: np.ndarray,
        movement: float,
        service: float,
        opt: float,
        fixup_distance: float = 0.0,
        stderr: float = 0.0,
        solver_gap: float = 0.0,
        flagged: bool = False,
        path_movement: float | None = None,
    ) -> None:
        self.step = step
        self.position = position
        self.movement = float(movement)
        self.service = max(0.0, float(service))
        self.opt = float(opt)
        self.fixup_distance = float(fixup_distance)
        self.stderr = float(stderr)
        self.solver_gap = float(solver_gap)
        self.flagged = flagged
        self.path_movement = self.movement if path_movement is None else float(path_movement)

    def to_dict(self) -> dict:
        """Convert the record to a dictionary for JSON serialization."""
        return {
            "step": self.step,
            "position": self.position.tolist(),
            "movement": self.movement,
            "service": self.service,
            "opt": self.opt,
            "fixup_distance": self.fixup_distance,
            "stderr": self.stderr,
            "solver_gap": self.solver_gap,
            "flagged": self.flagged,
            "path_movement": self.path_movement,
        }

    def __repr__(self) -> str:
        return f"StepResult(step={self.step}, position={self.position.tolist()}, movement={self.movement:.6g}, service={self.service:.6g})"
