"""Growth of the competitive ratio with the number of requests.

Every grid cell runs the configured chaser against a fresh adaptive hypercube
adversary in the Euclidean norm. Cells are independent and run concurrently;
each run is sequential and its estimators use one thread.
"""

from steinerchase.config.config import Config
from steinerchase.error import ValidationError
from steinerchase.geometry.norm import NormTag
from steinerchase.instances.adversary import HypercubeAdversary
from steinerchase.logger import Logger
from steinerchase.steiner.parallel import parallel_map, worker_count

from .report import GrowthCell, GrowthReport
from .runner import run_chase

DEFAULT_GRID = (4, 8, 16, 32)


def run_growth(
    logger: Logger,
    config: Config,
    dim: int = 3,
    grid: tuple[int, ...] | list[int] = DEFAULT_GRID,
    workers: int | None = None,
) -> GrowthReport:
    """Runs one adaptive hypercube experiment per request count.

    Args:
        logger: Logger for run summaries.
        config: Solver, estimator and chaser settings.
        dim: Dimension d.
        grid: Strictly increasing request counts.
        workers: Number of cells run at once, defaults to worker_count().

    Returns:
        The per-N ratios and the fitted slope.

    Raises:
        ValidationError: If the grid is empty, not increasing, or d < 1.
    """
    grid = list(grid)
    if not grid:
        raise ValidationError("the N grid is empty", field="grid")
    if any(n < 1 for n in grid) or any(a >= b for a, b in zip(grid, grid[1:])):
        raise ValidationError(f"the N grid must be strictly increasing positive counts, got {grid}", field="grid")
    if dim < 1:
        raise ValidationError(f"dimension must be positive, got {dim}", field="dim")

    norm = NormTag.EUCLIDEAN

    def cell(count: int) -> GrowthCell:
        adversary = HypercubeAdversary(logger, dim, count, norm)
        outcome = run_chase(logger, config, dim, norm, adversary, {"gen": f"hypercube:d={dim},N={count},adaptive=true"}, 1)
        return GrowthCell(count, outcome.report)

    threads = min(len(grid), workers if workers is not None else worker_count())
    cells = parallel_map(cell, grid, threads, chunk_size=1)
    report = GrowthReport(dim, norm, cells, config.to_dict())
    logger.info("Growth experiment complete", dim=dim, grid=grid, slope=report.slope)
    return report
