"""Builds the configured chaser."""

from ..config.config import Config
from ..geometry.norm import NormTag
from ..logger import Logger
from .base import Chaser
from .functional_steiner import FunctionalSteinerChaser
from .greedy import GreedyChaser
from .level_set_steiner import LevelSetSteinerChaser
from .nested_steiner import NestedSteinerChaser


def make_chaser(logger: Logger, config: Config, dim: int, norm_tag: NormTag, workers: int | None = None) -> Chaser:
    """Builds the chaser named by ``config.chaser.algorithm``.

    Args:
        logger: Logger handed to the chaser.
        config: Solver, estimator and chaser settings.
        dim: Dimension d.
        norm_tag: The ambient norm.
        workers: Thread count for estimators.

    Returns:
        A chaser at the origin.

    Raises:
        ValueError: If the algorithm name is unknown.
    """
    settings = config.chaser
    if settings.algorithm == "steiner":
        return FunctionalSteinerChaser(
            logger, dim, norm_tag, config.solver, config.steiner, substeps=settings.substeps, workers=workers
        )
    if settings.algorithm == "levelset":
        return LevelSetSteinerChaser(
            logger,
            dim,
            norm_tag,
            config.solver,
            config.steiner,
            r_policy=settings.r_policy,
            r_slack=settings.r_slack,
            workers=workers,
        )
    if settings.algorithm == "greedy":
        return GreedyChaser(logger, dim, norm_tag, config.solver, greedy_steps=settings.greedy_steps)
    if settings.algorithm == "nested":
        return NestedSteinerChaser(logger, dim, norm_tag, config.solver, config.steiner, workers=workers)
    raise ValueError(f"unknown chasing algorithm {settings.algorithm!r}")
