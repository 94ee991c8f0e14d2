"""Unit tests for the greedy baseline chaser."""

from unittest.mock import MagicMock

import numpy as np
import pytest
from steinerchase.chasers.greedy import GreedyChaser
from steinerchase.geometry.maxaffine import MaxAffine
from steinerchase.geometry.norm import NormTag, norm
from steinerchase.geometry.polytope import HPolytope
from steinerchase.logger import Logger
from steinerchase.workfn.request import Body, Func


@pytest.fixture
def logger():
    """Mocked logger."""
    return MagicMock(spec=Logger)


def test_stays_inside(logger):
    """Tests that a body containing the position costs no movement.

    Args:
        logger: Mocked logger.
    """
    chaser = GreedyChaser(logger, 2, NormTag.EUCLIDEAN)
    result = chaser.step(Body(HPolytope.box([-1.0, -1.0], [1.0, 1.0])))
    assert result.movement == 0.0
    np.testing.assert_array_equal(result.position, [0.0, 0.0])


def test_halfspace_projection(logger):
    """Tests projecting onto x_1 >= 3.

    Args:
        logger: Mocked logger.
    """
    chaser = GreedyChaser(logger, 3, NormTag.EUCLIDEAN)
    result = chaser.step(Body(HPolytope.box([3.0, -10.0, -10.0], [10.0, 10.0, 10.0])))
    np.testing.assert_allclose(result.position, [3.0, 0.0, 0.0])
    assert result.movement == pytest.approx(3.0)


def test_function_descent_never_worse(logger):
    """Tests that the descent result costs no more than staying put.

    Args:
        logger: Mocked logger.
    """
    f = MaxAffine.from_pieces([[0.0, 0.0, 0.0], [-1.0, -2.0, 4.0]])
    chaser = GreedyChaser(logger, 2, NormTag.L1, greedy_steps=30)
    result = chaser.step(Func(f))
    assert result.service + norm(result.position, NormTag.L1) <= f(np.zeros(2)) + 1e-12
    assert result.service + result.movement < f(np.zeros(2))


def test_zero_function_stays(logger):
    """Tests that a zero function never moves the chaser.

    Args:
        logger: Mocked logger.
    """
    chaser = GreedyChaser(logger, 2, NormTag.L1)
    result = chaser.step(Func(MaxAffine.from_pieces([[0.0, 0.0, 0.0]])))
    assert result.movement == 0.0


def test_deterministic(logger):
    """Tests that two runs agree exactly.

    Args:
        logger: Mocked logger.
    """
    f = Func(MaxAffine.from_pieces([[0.0, 0.0, 0.0], [1.0, 1.0, 2.0]]))
    body = Body(HPolytope([[1.0, 1.0], [-1.0, 0.0], [0.0, -1.0]], [1.0, 5.0, 5.0]))
    runs = []
    for _ in range(2):
        chaser = GreedyChaser(logger, 2, NormTag.EUCLIDEAN)
        runs.append([chaser.step(r).position for r in (f, body, f)])
    for a, b in zip(*runs):
        np.testing.assert_array_equal(a, b)
