"""The level-set Steiner chaser: x_n = s({x : W_n(x) <= R_n}).

Two policies choose the level. ``large`` takes R_n = OPT_n + 2 * (largest
circumradius of a body seen so far) + 1, which puts every K_s inside the level
set so the level-set point agrees with s(W_n). ``small`` takes
R_n = OPT_n + r_slack and tracks the minimizer of W_n instead.
"""

from ..config.solver import SolverConfig
from ..config.steiner import SteinerConfig
from ..geometry.norm import NormTag
from ..logger import Logger
from ..steiner.estimator import level_set_steiner
from ..workfn.request import Body
from .base import Chaser, Move

R_POLICIES = ("large", "small")


class LevelSetSteinerChaser(Chaser):
    """Moves to the Steiner point of a work-function level set."""

    name = "levelset"
    accepts = (Body,)

    def __init__(
        self,
        logger: Logger,
        dim: int,
        norm_tag: NormTag,
        solver: SolverConfig | None = None,
        steiner: SteinerConfig | None = None,
        r_policy: str = "large",
        r_slack: float = 0.01,
        workers: int | None = None,
    ) -> None:
        """Initialize the chaser.

        Args:
            logger: Logger for step records.
            dim: Dimension d.
            norm_tag: The ambient norm.
            solver: Work-function solver settings.
            steiner: Estimator settings.
            r_policy: "large" or "small".
            r_slack: Level above the optimum for the small policy.
            workers: Thread count for estimators.

        Raises:
            ValueError: If the policy is unknown or the slack is not positive.
        """
        if r_policy not in R_POLICIES:
            raise ValueError(f"r_policy must be one of {R_POLICIES}, got {r_policy!r}")
        if not r_slack > 0.0:
            raise ValueError(f"r_slack must be positive, got {r_slack}")
        super().__init__(logger, dim, norm_tag, solver, steiner, workers)
        self.r_policy = r_policy
        self.r_slack = r_slack
        self._max_circumradius = 0.0

    def level(self) -> float:
        """R_n for the current work function."""
        opt = self.handle.opt_value()
        if self.r_policy == "large":
            return opt + 2.0 * self._max_circumradius + 1.0
        return opt + self.r_slack

    def _move(self, request: Body, previous) -> Move:
        self._max_circumradius = max(self._max_circumradius, request.polytope.circumradius(self.norm))
        R = self.level()
        estimate = level_set_steiner(self.handle, R, self.steiner, self.workers)
        position, fixup = self.fix_up(estimate.point, request.polytope)
        self._log.debug("Level chosen", step=self.handle.prefix_len, R=R)
        return Move(position, fixup, estimate.stderr, estimate.solver_gap)
