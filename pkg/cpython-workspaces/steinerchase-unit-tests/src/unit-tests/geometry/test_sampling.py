"""Unit tests for the random streams and dual-ball samplers."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from steinerchase.geometry.norm import NormTag, dual_norm, norm
from steinerchase.geometry.sampling import (
    RandomStream,
    StreamPurpose,
    sample_dual_ball,
    sample_dual_sphere,
)


def test_streams_are_reproducible():
    """Tests that the same key gives the same draws."""
    a = RandomStream(7, StreamPurpose.SPHERE).generator(3).random(4)
    b = RandomStream(7, StreamPurpose.SPHERE).generator(3).random(4)
    np.testing.assert_array_equal(a, b)


def test_streams_are_separated():
    """Tests that purpose, step and index each change the draws."""
    base = RandomStream(7, StreamPurpose.SPHERE).generator(0).random()
    assert RandomStream(7, StreamPurpose.BALL).generator(0).random() != base
    assert RandomStream(7, StreamPurpose.SPHERE, step=1).generator(0).random() != base
    assert RandomStream(7, StreamPurpose.SPHERE).generator(1).random() != base
    assert RandomStream(8, StreamPurpose.SPHERE).generator(0).random() != base


@settings(max_examples=50)
@given(st.integers(min_value=0, max_value=2**32), st.integers(min_value=1, max_value=6))
def test_sphere_draws(seed, dim):
    """Tests that sphere draws have unit dual norm and a matching normal.

    Args:
        seed: Stream seed.
        dim: Dimension.
    """
    for tag in NormTag:
        theta, n = sample_dual_sphere(tag, dim, RandomStream(seed, StreamPurpose.SPHERE).generator(0))
        assert dual_norm(theta, tag) == pytest.approx(1.0)
        assert norm(n, tag) == pytest.approx(1.0)
        assert n @ theta == pytest.approx(1.0)


@settings(max_examples=50)
@given(st.integers(min_value=0, max_value=2**32), st.integers(min_value=1, max_value=6))
def test_ball_draws(seed, dim):
    """Tests that ball draws lie in the dual unit ball.

    Args:
        seed: Stream seed.
        dim: Dimension.
    """
    for tag in NormTag:
        theta = sample_dual_ball(tag, dim, RandomStream(seed, StreamPurpose.BALL).generator(0))
        assert dual_norm(theta, tag) <= 1.0 + 1e-12


def test_euclidean_sphere_mean_is_small():
    """Tests that Euclidean sphere draws are centered."""
    stream = RandomStream(0, StreamPurpose.SPHERE)
    draws = np.array([sample_dual_sphere(NormTag.EUCLIDEAN, 3, stream.generator(j))[0] for j in range(4000)])
    assert np.linalg.norm(draws.mean(axis=0)) < 0.1
