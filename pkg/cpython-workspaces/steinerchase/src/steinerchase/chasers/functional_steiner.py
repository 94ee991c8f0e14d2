"""The functional Steiner point chaser: x_n = s(W_n).

Body requests are served by the dual estimator followed by a projection onto
K_n; the true point already lies in K_n, so the projection only absorbs Monte
Carlo error and its length is recorded.

Function requests with substeps m > 1 follow the continuous-time path: the
request is served as m copies of f/m, the Steiner point is tracked after each
copy, and the player stops at the tracked point where f is smallest. The
charged path length runs from the previous position along the rest of the
previous sub-path, then along the new sub-path up to the chosen point.
"""

import numpy as np

from ..config.solver import SolverConfig
from ..config.steiner import SteinerConfig
from ..geometry.norm import NormTag, norm
from ..logger import Logger
from ..steiner.estimator import functional_steiner_dual
from ..workfn.handle import WorkFunctionHandle
from ..workfn.request import Body, Func, Instance, Request
from .base import Chaser, Move


class FunctionalSteinerChaser(Chaser):
    """Moves to the functional Steiner point of the current work function."""

    name = "steiner"

    def __init__(
        self,
        logger: Logger,
        dim: int,
        norm_tag: NormTag,
        solver: SolverConfig | None = None,
        steiner: SteinerConfig | None = None,
        substeps: int = 1,
        workers: int | None = None,
    ) -> None:
        """Initialize the chaser.

        Args:
            logger: Logger for step records.
            dim: Dimension d.
            norm_tag: The ambient norm.
            solver: Work-function solver settings.
            steiner: Estimator settings.
            substeps: m >= 1, the number of copies of f/m per function request.
            workers: Thread count for estimators.

        Raises:
            ValueError: If substeps < 1.
        """
        if substeps < 1:
            raise ValueError(f"substeps must be at least 1, got {substeps}")
        super().__init__(logger, dim, norm_tag, solver, steiner, workers)
        self.substeps = substeps
        # the work function the chaser follows, with function requests split into substeps
        self._tracked = WorkFunctionHandle(logger, Instance(dim, norm_tag), 0, self.solver)
        self._path_end = np.zeros(dim)
        self._tail_length = 0.0

    def _move(self, request: Request, previous: np.ndarray) -> Move:
        if isinstance(request, Body) or self.substeps == 1:
            self._tracked = self._tracked.advance(request)
            estimate = functional_steiner_dual(self._tracked, self.steiner, self.workers)
            if isinstance(request, Body):
                position, fixup = self.fix_up(estimate.point, request.polytope)
            else:
                position, fixup = estimate.point, 0.0
            path_movement = self._tail_length + norm(position - self._path_end, self.norm)
            self._path_end = position
            self._tail_length = 0.0
            return Move(position, fixup, estimate.stderr, estimate.solver_gap, path_movement)

        return self._move_substeps(request)

    def _move_substeps(self, request: Func) -> Move:
        share = request.function.scaled(1.0 / self.substeps)
        points: list[np.ndarray] = []
        stderrs: list[float] = []
        gaps: list[float] = []
        for _ in range(self.substeps):
            self._tracked = self._tracked.advance(Func(share))
            estimate = functional_steiner_dual(self._tracked, self.steiner, self.workers)
            points.append(estimate.point)
            stderrs.append(estimate.stderr)
            gaps.append(estimate.solver_gap)

        costs = [request.function(p) for p in points]
        chosen = int(np.argmin(costs))
        legs = [norm(points[0] - self._path_end, self.norm)]
        legs += [norm(points[i + 1] - points[i], self.norm) for i in range(self.substeps - 1)]
        path_movement = self._tail_length + sum(legs[: chosen + 1])
        self._tail_length = sum(legs[chosen + 1 :])
        self._path_end = points[-1]
        self._log.debug("Substep path", step=self.handle.prefix_len, chosen=chosen, costs=costs)
        return Move(points[chosen], 0.0, stderrs[chosen], max(gaps), path_movement)
