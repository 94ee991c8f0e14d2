"""The greedy baseline: project onto bodies, descend on functions.

For a function request the chaser runs a fixed number of subgradient steps on
f(y) + ||y - x_{n-1}|| starting at x_{n-1}, with steps
phi(x_{n-1}) / (||g||^2 (k + 1)), and keeps the best point seen. The result
never costs more than staying put.
"""

import numpy as np

from ..config.solver import SolverConfig
from ..geometry.norm import NormTag, norm, norm_subgradient
from ..logger import Logger
from ..workfn.request import Body, Func, Request
from .base import Chaser, Move


class GreedyChaser(Chaser):
    """Memoryless baseline chaser."""

    name = "greedy"

    def __init__(
        self,
        logger: Logger,
        dim: int,
        norm_tag: NormTag,
        solver: SolverConfig | None = None,
        greedy_steps: int = 50,
    ) -> None:
        """Initialize the chaser.

        Args:
            logger: Logger for step records.
            dim: Dimension d.
            norm_tag: The ambient norm.
            solver: Projection settings.
            greedy_steps: Subgradient steps per function request.
        """
        super().__init__(logger, dim, norm_tag, solver)
        self.greedy_steps = greedy_steps

    def _move(self, request: Request, previous: np.ndarray) -> Move:
        if isinstance(request, Body):
            position, _ = self.fix_up(previous, request.polytope)
            return Move(position)
        return Move(self._descend(request, previous))

    def _descend(self, request: Func, previous: np.ndarray) -> np.ndarray:
        f = request.function

        def phi(y: np.ndarray) -> float:
            return f(y) + norm(y - previous, self.norm)

        start = phi(previous)
        best, best_value = previous.copy(), start
        y = previous.copy()
        for k in range(self.greedy_steps):
            g = f.eval_subgrad(y)[1] + norm_subgradient(y - previous, self.norm)
            g_sq = float(g @ g)
            if g_sq == 0.0:
                break
            y = y - (start / (g_sq * (k + 1))) * g
            value = phi(y)
            if value < best_value:
                best, best_value = y.copy(), value
        return best
