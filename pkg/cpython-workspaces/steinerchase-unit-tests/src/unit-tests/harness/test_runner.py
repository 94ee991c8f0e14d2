"""Unit tests for driving chasers against request sources."""

from unittest.mock import MagicMock

import numpy as np
import pytest
from chase_harness.runner import run_chase
from steinerchase.config.config import Config
from steinerchase.geometry.norm import NormTag
from steinerchase.geometry.polytope import HPolytope
from steinerchase.instances.adversary import HypercubeAdversary
from steinerchase.instances.generators import hypercube_faces
from steinerchase.logger import Logger
from steinerchase.workfn.request import Body, Instance


@pytest.fixture
def logger():
    """Mocked logger."""
    return MagicMock(spec=Logger)


@pytest.fixture
def config():
    """Defaults with a small sample count."""
    config = Config()
    config.update_config("samples", 64, temporary=True)
    return config


def test_greedy_on_points(logger, config):
    """Tests that greedy matches OPT on the two points of the line.

    Args:
        logger: Mocked logger.
        config: Config fixture.
    """
    config.update_config("algorithm", "greedy", temporary=True)
    instance = hypercube_faces(1, 2, NormTag.L1)
    outcome = run_chase(logger, config, 1, NormTag.L1, instance, {"gen": "hypercube:d=1,N=2"})
    report = outcome.report
    assert report.alg_total == pytest.approx(3.0)
    assert report.opt_total == pytest.approx(3.0, abs=1e-6)
    assert report.ratio == pytest.approx(1.0, abs=1e-6)
    assert report.movement_certificate is None
    assert report.config["source"] == {"gen": "hypercube:d=1,N=2"}
    assert outcome.realized == instance
    logger.info.assert_called()


def test_steiner_against_adversary(logger, config):
    """Tests a functional Steiner run against the adaptive adversary.

    Args:
        logger: Mocked logger.
        config: Config fixture.
    """
    adversary = HypercubeAdversary(logger, 2, 3, NormTag.EUCLIDEAN)
    outcome = run_chase(logger, config, 2, NormTag.EUCLIDEAN, adversary, workers=1)
    assert len(outcome.realized) == 3
    assert len(outcome.report.trace) == 3
    assert outcome.report.movement_certificate is not None
    assert outcome.report.ratio >= 1.0 - 1e-6
    for step, request in zip(outcome.report.trace, outcome.realized.requests):
        assert request.polytope.contains(step.position, tol=1e-6)


def test_same_seed_same_report(logger, config):
    """Tests that two runs with the same settings give identical JSON.

    Args:
        logger: Mocked logger.
        config: Config fixture.
    """
    instance = hypercube_faces(2, 3, NormTag.LINF)
    first = run_chase(logger, config, 2, NormTag.LINF, instance, workers=2).report.to_json()
    second = run_chase(logger, config, 2, NormTag.LINF, instance, workers=1).report.to_json()
    assert first == second


def test_empty_instance(logger, config):
    """Tests a run without requests.

    Args:
        logger: Mocked logger.
        config: Config fixture.
    """
    outcome = run_chase(logger, config, 2, NormTag.L1, hypercube_faces(2, 0, NormTag.L1))
    assert outcome.report.ratio == 0.0
    np.testing.assert_array_equal(outcome.report.opt_position, [0.0, 0.0])


def test_start_inside_body(logger, config):
    """Tests that a body containing the origin costs nothing and reports ratio 0.

    Args:
        logger: Mocked logger.
        config: Config fixture.
    """
    config.update_config("algorithm", "greedy", temporary=True)
    instance = Instance(2, NormTag.LINF, [Body(HPolytope.box([-1.0, -1.0], [1.0, 1.0]))])
    report = run_chase(logger, config, 2, NormTag.LINF, instance).report
    assert report.alg_total == 0.0
    assert report.opt_total == pytest.approx(0.0, abs=1e-9)
    assert report.ratio == 0.0
