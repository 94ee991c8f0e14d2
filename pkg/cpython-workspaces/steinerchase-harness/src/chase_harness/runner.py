"""Drives one chaser against a request source."""

from steinerchase.chasers.factory import make_chaser
from steinerchase.chasers.functional_steiner import FunctionalSteinerChaser
from steinerchase.config.config import Config
from steinerchase.geometry.norm import NormTag
from steinerchase.instances.adversary import ReplayAdversary
from steinerchase.logger import Logger
from steinerchase.protos.adversary import AdversaryProto
from steinerchase.steiner.estimator import movement_certificate
from steinerchase.workfn.request import Instance

from .report import RunReport


class RunOutcome:
    """A report together with the request sequence that produced it."""

    def __init__(self, report: RunReport, realized: Instance) -> None:
        self.report = report
        self.realized = realized


def run_chase(
    logger: Logger,
    config: Config,
    dim: int,
    norm: NormTag,
    source: Instance | AdversaryProto,
    source_echo: dict | None = None,
    workers: int | None = None,
) -> RunOutcome:
    """Runs the configured chaser until the source is exhausted.

    Args:
        logger: Logger for the run summary; also handed to the chaser.
        config: Solver, estimator and chaser settings.
        dim: Dimension d.
        norm: The ambient norm.
        source: A fixed instance or an adaptive adversary.
        source_echo: Description of the source recorded in the report.
        workers: Thread count for estimators.

    Returns:
        The report and the realized instance.

    Raises:
        ValidationError: If the chaser cannot serve a request.
        SolverError: If a solver fails.
    """
    adversary = ReplayAdversary(source) if isinstance(source, Instance) else source
    chaser = make_chaser(logger, config, dim, norm, workers)

    while (request := adversary.next_request(chaser.position)) is not None:
        chaser.step(request)

    opt = chaser.handle.opt_result()
    certificate = None
    if isinstance(chaser, FunctionalSteinerChaser) and len(chaser.instance) > 0:
        certificate = movement_certificate(chaser.handle, config.steiner, workers)

    echo = {**config.to_dict(), "source": source_echo or {}}
    report = RunReport.from_trace(chaser.trace, opt.value, dim, norm, echo, opt.endpoint, certificate)
    logger.info(
        "Run complete",
        algorithm=chaser.name,
        steps=len(report.trace),
        alg_total=report.alg_total,
        opt_total=report.opt_total,
        ratio=report.ratio,
        flagged_steps=len(report.flagged_steps),
    )
    return RunOutcome(report, adversary.realized())
