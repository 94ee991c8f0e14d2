"""Shared step loop of the online chasers.

Every chaser keeps the work function of the requests seen so far (for the
offline optimum and, in the Steiner chasers, for choosing the next point) and
the current position. ``step`` validates the request, extends the work
function, asks the subclass where to go, and does the accounting.
"""

import numpy as np

from ..config.solver import SolverConfig
from ..config.steiner import SteinerConfig
from ..geometry.norm import NormTag, norm
from ..geometry.polytope import HPolytope, euclid_project
from ..logger import Logger
from ..protos.chaser import ChaserProto
from ..workfn.handle import WorkFunctionHandle
from ..workfn.request import Body, Func, Instance, Request
from .error import UnsupportedRequest
from .result import StepResult

# fix-ups beyond this many standard errors (plus the solver tolerance) flag the step
FIXUP_STDERRS = 5.0


class Move:
    """A subclass's answer for one step."""

    def __init__(
        self,
        position: np.ndarray,
        fixup_distance: float = 0.0,
        stderr: float = 0.0,
        solver_gap: float = 0.0,
        path_movement: float | None = None,
    ) -> None:
        self.position = position
        self.fixup_distance = fixup_distance
        self.stderr = stderr
        self.solver_gap = solver_gap
        self.path_movement = path_movement


class Chaser(ChaserProto):
    """Base class of the chasing algorithms."""

    name = "base"
    accepts: tuple[type, ...] = (Body, Func)

    def __init__(
        self,
        logger: Logger,
        dim: int,
        norm_tag: NormTag,
        solver: SolverConfig | None = None,
        steiner: SteinerConfig | None = None,
        workers: int | None = None,
    ) -> None:
        """Initialize the chaser at the origin.

        Args:
            logger: Logger for step records.
            dim: Dimension d.
            norm_tag: The ambient norm.
            solver: Work-function solver settings.
            steiner: Estimator settings.
            workers: Thread count for estimators.
        """
        self._log = logger
        self.dim = dim
        self.norm = norm_tag
        self.solver = solver if solver is not None else SolverConfig()
        self.steiner = steiner if steiner is not None else SteinerConfig()
        self.workers = workers
        self.handle = WorkFunctionHandle(logger, Instance(dim, norm_tag), 0, self.solver)
        self._position = np.zeros(dim)
        self.trace: list[StepResult] = []

    @property
    def position(self) -> np.ndarray:
        return self._position

    @property
    def instance(self) -> Instance:
        """The requests served so far."""
        return self.handle.instance

    @property
    def tol(self) -> float:
        return self.handle.tol

    def _check(self, request: Request) -> None:
        if not isinstance(request, self.accepts):
            raise UnsupportedRequest(f"{self.name} cannot serve {request.kind} requests")
        if request.dim != self.dim:
            raise UnsupportedRequest(f"request dimension {request.dim} does not match {self.dim}")

    def _move(self, request: Request, previous: np.ndarray) -> Move:
        """Chooses x_n; the work function already includes the request."""
        raise NotImplementedError

    def fix_up(self, point: np.ndarray, body: HPolytope) -> tuple[np.ndarray, float]:
        """Projects an estimate onto the body.

        Returns:
            The projected point and the Euclidean distance moved.
        """
        projected = euclid_project(
            point,
            body,
            tol=self.solver.projection_tol,
            max_iterations=self.solver.projection_max_iterations,
            feasibility_tol=self.solver.feasibility_tol,
        )
        return projected, float(np.linalg.norm(projected - point))

    def step(self, request: Request) -> StepResult:
        """Serves one request.

        Args:
            request: The next request.

        Returns:
            The step record.

        Raises:
            UnsupportedRequest: If the chaser cannot serve the request.
        """
        self._check(request)
        previous = self._position
        self.handle = self.handle.advance(request)
        move = self._move(request, previous)

        position = move.position
        movement = norm(position - previous, self.norm)
        flagged = move.fixup_distance > FIXUP_STDERRS * move.stderr + self.tol
        result = StepResult(
            step=self.handle.prefix_len,
            position=position,
            movement=movement,
            service=request.cost(position),
            opt=self.handle.opt_value(),
            fixup_distance=move.fixup_distance,
            stderr=move.stderr,
            solver_gap=move.solver_gap,
            flagged=flagged,
            path_movement=move.path_movement,
        )
        if flagged:
            self._log.warning(
                "Fix-up exceeds the estimator error budget",
                chaser=self.name,
                step=result.step,
                fixup_distance=result.fixup_distance,
                stderr=result.stderr,
            )
        self._log.debug(
            "Step complete",
            chaser=self.name,
            step=result.step,
            position=position,
            movement=result.movement,
            service=result.service,
            opt=result.opt,
        )
        self._position = position
        self.trace.append(result)
        return result
