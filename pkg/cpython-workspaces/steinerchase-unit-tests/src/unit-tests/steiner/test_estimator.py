"""Unit tests for the Monte-Carlo Steiner point estimators."""

from unittest.mock import MagicMock

import numpy as np
import pytest
from steinerchase.config.steiner import SteinerConfig
from steinerchase.geometry.norm import NormTag
from steinerchase.geometry.polytope import HPolytope
from steinerchase.logger import Logger
from steinerchase.steiner.estimator import (
    SteinerEstimate,
    dual_ball_average,
    dual_sphere_average,
    functional_steiner_dual,
    functional_steiner_primal,
    level_set_steiner,
    movement_certificate,
    steiner_body,
    steiner_body_primal,
)
from steinerchase.workfn.handle import WorkFunctionHandle
from steinerchase.workfn.request import Body, Instance

# exterior-angle weights 1/4, 3/8, 3/8 of the vertices (0, 0), (1, 0), (0, 1)
TRIANGLE_STEINER = np.array([0.375, 0.375])


@pytest.fixture
def logger():
    """Mocked logger."""
    return MagicMock(spec=Logger)


@pytest.fixture
def square():
    """The square [-1, 1]^2."""
    return HPolytope.box([-1.0, -1.0], [1.0, 1.0])


@pytest.fixture
def triangle():
    """The triangle conv{(0, 0), (1, 0), (0, 1)}."""
    return HPolytope([[-1.0, 0.0], [0.0, -1.0], [1.0, 1.0]], [0.0, 0.0, 1.0])


def _within(estimate: SteinerEstimate, expected: np.ndarray, multiple: float = 4.0) -> bool:
    return bool(np.all(np.abs(estimate.point - expected) <= multiple * estimate.coordinate_stderr + 1e-9))


def test_symmetric_body_is_centered(square):
    """Tests that antithetic pairs cancel exactly on a centrally symmetric body.

    Args:
        square: The square fixture.
    """
    for tag in NormTag:
        estimate = steiner_body(square, tag, SteinerConfig({"samples": 256}))
        np.testing.assert_allclose(estimate.point, [0.0, 0.0], atol=1e-12)
        assert estimate.samples_used == 256


def test_translation(square):
    """Tests translation equivariance within four standard errors.

    Args:
        square: The square fixture.
    """
    shift = np.array([3.0, 5.0])
    estimate = steiner_body(square.translate(shift), NormTag.EUCLIDEAN, SteinerConfig())
    assert _within(estimate, shift)
    assert estimate.stderr > 0.0


def test_triangle_dual_and_primal(triangle):
    """Tests both estimator forms against the exterior-angle formula.

    Args:
        triangle: The triangle fixture.
    """
    cfg = SteinerConfig({"samples": 2048, "seed": 3})
    dual = steiner_body(triangle, NormTag.EUCLIDEAN, cfg)
    primal = steiner_body_primal(triangle, NormTag.EUCLIDEAN, cfg)
    assert _within(dual, TRIANGLE_STEINER)
    assert _within(primal, TRIANGLE_STEINER)
    combined = 4.0 * np.sqrt(dual.coordinate_stderr**2 + primal.coordinate_stderr**2)
    assert np.all(np.abs(dual.point - primal.point) <= combined + 1e-9)


def test_reproducible_and_seeded(triangle):
    """Tests that a seed reproduces an estimate bit for bit.

    Args:
        triangle: The triangle fixture.
    """
    cfg = SteinerConfig({"samples": 64, "seed": 11})
    first = steiner_body(triangle, NormTag.L1, cfg, workers=1)
    again = steiner_body(triangle, NormTag.L1, cfg, workers=4)
    other = steiner_body(triangle, NormTag.L1, SteinerConfig({"samples": 64, "seed": 12}))
    np.testing.assert_array_equal(first.point, again.point)
    assert not np.array_equal(first.point, other.point)


def test_common_random_numbers(triangle):
    """Tests that steps share draws only with common random numbers on.

    Args:
        triangle: The triangle fixture.
    """
    shared = SteinerConfig({"samples": 64})
    np.testing.assert_array_equal(
        steiner_body(triangle, NormTag.LINF, shared, step=0).point,
        steiner_body(triangle, NormTag.LINF, shared, step=5).point,
    )
    fresh = SteinerConfig({"samples": 64, "common_random_numbers": False})
    assert not np.array_equal(
        steiner_body(triangle, NormTag.LINF, fresh, step=0).point,
        steiner_body(triangle, NormTag.LINF, fresh, step=5).point,
    )


def test_plain_sampling(square):
    """Tests estimates without antithetic pairs.

    Args:
        square: The square fixture.
    """
    cfg = SteinerConfig({"samples": 1001, "antithetic": False})
    estimate = steiner_body(square, NormTag.EUCLIDEAN, cfg)
    assert estimate.samples_used == 1001
    assert _within(estimate, np.zeros(2))


def test_empty_prefix_functional(logger):
    """Tests that W_0 has Steiner point zero in both forms.

    Args:
        logger: Mocked logger.
    """
    h = WorkFunctionHandle(logger, Instance(2, NormTag.EUCLIDEAN))
    cfg = SteinerConfig({"samples": 64})
    dual = functional_steiner_dual(h, cfg)
    primal = functional_steiner_primal(h, cfg)
    np.testing.assert_array_equal(dual.point, [0.0, 0.0])
    np.testing.assert_array_equal(primal.point, [0.0, 0.0])
    assert dual.stderr == 0.0
    assert dual_sphere_average(h, cfg) == (0.0, 0.0)
    assert dual_ball_average(h, cfg) == (0.0, 0.0)
    assert movement_certificate(h, cfg) == 0.0


def test_unit_ball_level_set(logger):
    """Tests the Steiner point of the level set of W_0 at R = 1 (the unit ball).

    Args:
        logger: Mocked logger.
    """
    h = WorkFunctionHandle(logger, Instance(2, NormTag.EUCLIDEAN))
    estimate = level_set_steiner(h, 1.0, SteinerConfig({"samples": 128}))
    np.testing.assert_allclose(estimate.point, [0.0, 0.0], atol=1e-12)


def test_large_level_matches_functional(logger):
    """Tests that a large level gives the functional Steiner point on the same draws.

    Args:
        logger: Mocked logger.
    """
    instance = Instance(2, NormTag.LINF, [Body(HPolytope.box([1.0, 0.0], [2.0, 1.0]))])
    h = WorkFunctionHandle(logger, instance)
    cfg = SteinerConfig({"samples": 64, "seed": 2})
    R = h.opt_value() + 2.0 * instance.requests[0].polytope.circumradius(NormTag.LINF) + 1.0
    functional = functional_steiner_dual(h, cfg)
    level = level_set_steiner(h, R, cfg)
    np.testing.assert_allclose(level.point, functional.point, atol=1e-5)
    assert instance.requests[0].polytope.contains(functional.point, tol=5.0 * functional.stderr + 1e-6)


def test_movement_certificate_is_scaled_average(logger):
    """Tests the certificate d times the sphere average of W*.

    Args:
        logger: Mocked logger.
    """
    instance = Instance(2, NormTag.LINF, [Body(HPolytope.box([1.0, 0.0], [2.0, 1.0]))])
    h = WorkFunctionHandle(logger, instance)
    cfg = SteinerConfig({"samples": 32})
    mean, stderr = dual_sphere_average(h, cfg)
    assert movement_certificate(h, cfg) == pytest.approx(2.0 * mean)
    assert stderr >= 0.0
    assert mean >= -1e-6


def test_estimate_repr():
    """Tests the estimate summary."""
    estimate = SteinerEstimate(np.array([1.0, 2.0]), np.array([0.1, 0.3]), 8)
    assert estimate.stderr == pytest.approx(0.3)
    assert "samples=8" in repr(estimate)
    assert SteinerEstimate(np.zeros(0), np.zeros(0), 0).stderr == 0.0
