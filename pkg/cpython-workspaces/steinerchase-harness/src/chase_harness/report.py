"""Run and growth reports.

A RunReport holds the step trace of one chasing run together with its totals,
the competitive ratio and the estimator error budget. Reports contain no
timestamps, so the same flags always give byte-identical JSON.

**Usage:**
```python
report = RunReport.from_trace(chaser.trace, opt_total, dim=2, norm=NormTag.LINF, config=config.to_dict())
print(report.to_json())
report.write_csv(sys.stdout)
```
"""

import csv
import json
from typing import TextIO

import numpy as np
from steinerchase.chasers.base import FIXUP_STDERRS
from steinerchase.chasers.result import StepResult
from steinerchase.geometry.norm import NormTag

# ratios are taken against max(OPT, EPS_DIV); 0 / 0 is reported as 0
EPS_DIV = 1e-12


def competitive_ratio(alg_total: float, opt_total: float) -> float:
    """alg / max(opt, EPS_DIV), with runs where both costs vanish reported as 0."""
    if alg_total <= EPS_DIV and opt_total <= EPS_DIV:
        return 0.0
    return alg_total / max(opt_total, EPS_DIV)


class RunReport:
    """Totals and trace of one run.

    Attributes:
        trace: The step records.
        alg_total: Sum of movement and service over all steps.
        movement_total: Sum of movement.
        service_total: Sum of service.
        opt_total: Offline optimum of the whole request sequence.
        ratio: competitive_ratio(alg_total, opt_total).
        estimator_error_budget: Sum over steps of 5 * stderr + solver gap.
        flagged_steps: Steps whose fix-up exceeded the per-step budget.
        movement_certificate: Upper bound on the functional Steiner chaser's movement, if computed.
        opt_position: A final position of an offline optimal path.
        dim: Dimension d.
        norm: The ambient norm.
        config: Echo of every setting that produced the run.
    """

    def __init__(
        self,
        trace: list[StepResult],
        opt_total: float,
        dim: int,
        norm: NormTag,
        config: dict,
        opt_position: np.ndarray | None = None,
        movement_certificate: float | None = None,
    ) -> None:
        self.trace = trace
        self.dim = dim
        self.norm = norm
        self.config = config
        self.opt_total = float(opt_total)
        self.opt_position = np.zeros(dim) if opt_position is None else np.asarray(opt_position, dtype=float)
        self.movement_certificate = movement_certificate
        self.movement_total = float(sum(step.movement for step in trace))
        self.service_total = float(sum(step.service for step in trace))
        self.alg_total = self.movement_total + self.service_total
        self.ratio = competitive_ratio(self.alg_total, self.opt_total)
        self.estimator_error_budget = float(sum(FIXUP_STDERRS * step.stderr + step.solver_gap for step in trace))
        self.flagged_steps = [step.step for step in trace if step.flagged]

    @classmethod
    def from_trace(
        cls,
        trace: list[StepResult],
        opt_total: float,
        dim: int,
        norm: NormTag,
        config: dict,
        opt_position: np.ndarray | None = None,
        movement_certificate: float | None = None,
    ) -> "RunReport":
        """Builds a report from a finished trace."""
        return cls(list(trace), opt_total, dim, norm, config, opt_position, movement_certificate)

    def positions(self) -> np.ndarray:
        """The visited points x_0 = 0, x_1, ..., x_N as rows."""
        return np.vstack([np.zeros(self.dim)] + [step.position for step in self.trace])

    def to_dict(self) -> dict:
        """Convert the report to a dictionary for JSON serialization."""
        return {
            "dim": self.dim,
            "norm": self.norm.value,
            "alg_total": self.alg_total,
            "movement_total": self.movement_total,
            "service_total": self.service_total,
            "opt_total": self.opt_total,
            "ratio": self.ratio,
            "estimator_error_budget": self.estimator_error_budget,
            "movement_certificate": self.movement_certificate,
            "flagged_steps": self.flagged_steps,
            "opt_position": self.opt_position.tolist(),
            "config": self.config,
            "trace": [step.to_dict() for step in self.trace],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def write_csv(self, stream: TextIO) -> None:
        """Writes one row per step with running totals.

        Columns: step, x_0 .. x_{d-1}, movement, service, cum_alg, cum_opt, fixup_distance.
        """
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(
            ["step"] + [f"x_{k}" for k in range(self.dim)] + ["movement", "service", "cum_alg", "cum_opt", "fixup_distance"]
        )
        cum_alg = 0.0
        for step in self.trace:
            cum_alg += step.movement + step.service
            writer.writerow(
                [step.step]
                + [repr(float(x)) for x in step.position]
                + [repr(step.movement), repr(step.service), repr(cum_alg), repr(step.opt), repr(step.fixup_distance)]
            )


class GrowthCell:
    """One grid point of a growth experiment."""

    def __init__(self, count: int, report: RunReport) -> None:
        self.count = count
        self.ratio = report.ratio
        self.alg_total = report.alg_total
        self.opt_total = report.opt_total
        self.estimator_error_budget = report.estimator_error_budget

    def to_dict(self) -> dict:
        return {
            "N": self.count,
            "ratio": self.ratio,
            "alg_total": self.alg_total,
            "opt_total": self.opt_total,
            "estimator_error_budget": self.estimator_error_budget,
        }


class GrowthReport:
    """Competitive ratios across request counts N for a fixed dimension.

    The slope of ratio^2 against log N is fitted by least squares; it is a
    diagnostic of how the ratio grows, not a pass/fail figure.
    """

    def __init__(self, dim: int, norm: NormTag, cells: list[GrowthCell], config: dict) -> None:
        self.dim = dim
        self.norm = norm
        self.cells = cells
        self.config = config
        self.slope = self._fit_slope()

    def _fit_slope(self) -> float:
        if len(self.cells) < 2:
            return 0.0
        counts = np.array([cell.count for cell in self.cells], dtype=float)
        ratios = np.array([cell.ratio for cell in self.cells])
        return float(np.polyfit(np.log(counts), ratios**2, 1)[0])

    def to_dict(self) -> dict:
        """Convert the report to a dictionary for JSON serialization."""
        return {
            "dim": self.dim,
            "norm": self.norm.value,
            "slope": self.slope,
            "cells": [cell.to_dict() for cell in self.cells],
            "config": self.config,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"
