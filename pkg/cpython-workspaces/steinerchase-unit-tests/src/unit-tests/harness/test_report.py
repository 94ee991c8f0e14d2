"""Unit tests for run and growth reports."""

import io
import json
import math

import numpy as np
import pytest
from chase_harness.report import EPS_DIV, GrowthCell, GrowthReport, RunReport, competitive_ratio
from steinerchase.chasers.result import StepResult
from steinerchase.geometry.norm import NormTag


@pytest.fixture
def report():
    """Two planar steps, the second one flagged."""
    trace = [
        StepResult(1, np.array([1.0, 0.0]), movement=1.0, service=0.0, opt=1.0),
        StepResult(
            2,
            np.array([1.0, 0.5]),
            movement=0.5,
            service=0.25,
            opt=1.25,
            fixup_distance=0.125,
            stderr=0.01,
            solver_gap=1e-7,
            flagged=True,
        ),
    ]
    return RunReport.from_trace(trace, 1.25, dim=2, norm=NormTag.LINF, config={"seed": 4}, opt_position=[1.0, 0.25])


def test_competitive_ratio():
    """Tests the ratio, including the 0 / 0 convention."""
    assert competitive_ratio(0.0, 0.0) == 0.0
    assert competitive_ratio(3.0, 1.5) == 2.0
    assert competitive_ratio(1.0, 0.0) == 1.0 / EPS_DIV


def test_totals(report):
    """Tests the totals derived from the trace.

    Args:
        report: Report fixture.
    """
    assert report.movement_total == 1.5
    assert report.service_total == 0.25
    assert report.alg_total == 1.75
    assert report.ratio == pytest.approx(1.4)
    assert report.estimator_error_budget == pytest.approx(0.05 + 1e-7)
    assert report.flagged_steps == [2]
    np.testing.assert_array_equal(report.positions(), [[0.0, 0.0], [1.0, 0.0], [1.0, 0.5]])


def test_json(report):
    """Tests that the JSON carries the totals, the echo and the trace.

    Args:
        report: Report fixture.
    """
    data = json.loads(report.to_json())
    assert data["norm"] == "linf"
    assert data["config"] == {"seed": 4}
    assert data["opt_position"] == [1.0, 0.25]
    assert data["movement_certificate"] is None
    assert [step["step"] for step in data["trace"]] == [1, 2]
    assert data["trace"][1]["flagged"] is True
    assert report.to_json() == report.to_json()


def test_csv(report):
    """Tests the CSV columns and running totals.

    Args:
        report: Report fixture.
    """
    stream = io.StringIO()
    report.write_csv(stream)
    lines = stream.getvalue().splitlines()
    assert lines[0] == "step,x_0,x_1,movement,service,cum_alg,cum_opt,fixup_distance"
    assert lines[1] == "1,1.0,0.0,1.0,0.0,1.0,1.0,0.0"
    assert lines[2] == "2,1.0,0.5,0.5,0.25,1.75,1.25,0.125"


def _cell(count: int, ratio: float) -> GrowthCell:
    step = StepResult(1, np.zeros(1), movement=ratio, service=0.0, opt=1.0)
    return GrowthCell(count, RunReport([step], 1.0, 1, NormTag.EUCLIDEAN, {}))


def test_growth_slope():
    """Tests the least-squares slope of ratio squared against log N."""
    cells = [_cell(n, math.sqrt(1.0 + 2.0 * math.log(n))) for n in (4, 8, 16, 32)]
    growth = GrowthReport(3, NormTag.EUCLIDEAN, cells, {})
    assert growth.slope == pytest.approx(2.0)
    data = json.loads(growth.to_json())
    assert [cell["N"] for cell in data["cells"]] == [4, 8, 16, 32]


def test_growth_single_cell():
    """Tests that a single cell has no slope."""
    assert GrowthReport(2, NormTag.EUCLIDEAN, [_cell(4, 1.0)], {}).slope == 0.0
