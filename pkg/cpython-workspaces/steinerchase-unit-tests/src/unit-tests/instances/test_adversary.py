"""Unit tests for the adaptive hypercube adversary and the replay source."""

from unittest.mock import MagicMock

import numpy as np
import pytest
from steinerchase.geometry.norm import NormTag
from steinerchase.instances.adversary import HypercubeAdversary, ReplayAdversary, face_body, face_order
from steinerchase.instances.generators import hypercube_faces
from steinerchase.logger import Logger
from steinerchase.protos.adversary import AdversaryProto


@pytest.fixture
def logger():
    """Mocked logger."""
    return MagicMock(spec=Logger)


def _face(request) -> tuple[int, float]:
    lo, hi = request.polytope.bounding_box
    axis = int(np.flatnonzero(lo == hi)[0])
    return axis, float(lo[axis])


def test_face_helpers():
    """Tests face bodies and the round-robin order."""
    assert face_order(2) == [(0, 1.0), (0, -1.0), (1, 1.0), (1, -1.0)]
    lo, hi = face_body(3, 1, -1.0).bounding_box
    np.testing.assert_array_equal(lo, [-1.0, -1.0, -1.0])
    np.testing.assert_array_equal(hi, [1.0, -1.0, 1.0])


def test_farthest_face_from_corner(logger):
    """Tests that a chaser at (1, 1) is sent to x_1 = -1.

    Args:
        logger: Mocked logger.
    """
    adversary = HypercubeAdversary(logger, 2, 3, NormTag.LINF)
    assert isinstance(adversary, AdversaryProto)
    assert _face(adversary.next_request(np.array([1.0, 1.0]))) == (0, -1.0)


def test_no_immediate_repeat(logger):
    """Tests that the last face is never requested twice in a row.

    Args:
        logger: Mocked logger.
    """
    adversary = HypercubeAdversary(logger, 1, 4, NormTag.L1)
    faces = [_face(adversary.next_request(np.zeros(1))) for _ in range(4)]
    assert faces == [(0, 1.0), (0, -1.0), (0, 1.0), (0, -1.0)]
    assert adversary.next_request(np.zeros(1)) is None


def test_realized(logger):
    """Tests that the emitted requests replay as an instance.

    Args:
        logger: Mocked logger.
    """
    adversary = HypercubeAdversary(logger, 2, 2, NormTag.EUCLIDEAN)
    first = adversary.next_request(np.zeros(2))
    second = adversary.next_request(np.array([1.0, 0.0]))
    realized = adversary.realized()
    assert realized.requests == (first, second)
    assert realized.norm is NormTag.EUCLIDEAN
    assert _face(second) == (0, -1.0)


def test_distance(logger):
    """Tests the ambient distance to a face.

    Args:
        logger: Mocked logger.
    """
    adversary = HypercubeAdversary(logger, 2, 1, NormTag.L1)
    assert adversary.distance(np.array([2.0, 3.0]), 1) == pytest.approx(5.0)
    assert adversary.distance(np.array([0.5, 0.5]), 2) == pytest.approx(0.5)


def test_replay():
    """Tests that replay emits the instance in order and tracks the prefix."""
    instance = hypercube_faces(2, 3, NormTag.L1)
    replay = ReplayAdversary(instance)
    assert len(replay.realized()) == 0
    emitted = [replay.next_request(np.zeros(2)) for _ in range(3)]
    assert tuple(emitted) == instance.requests
    assert replay.next_request(np.zeros(2)) is None
    assert replay.realized() == instance
