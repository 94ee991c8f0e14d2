"""Unit tests for max-affine request functions."""

import numpy as np
import pytest
from steinerchase.error import ValidationError
from steinerchase.geometry.maxaffine import MaxAffine, maxaffine_eval_subgrad


@pytest.fixture
def hinge():
    """f(x) = max(0, x_1 - 1)."""
    return MaxAffine.from_pieces([[0.0, 0.0, 0.0], [1.0, 0.0, -1.0]])


def test_evaluate(hinge):
    """Tests pointwise evaluation.

    Args:
        hinge: The hinge fixture.
    """
    assert hinge(np.array([0.0, 5.0])) == 0.0
    assert hinge(np.array([3.0, 0.0])) == pytest.approx(2.0)
    np.testing.assert_allclose(hinge.evaluate_many(np.array([[0.0, 0.0], [2.0, 1.0]])), [0.0, 1.0])


def test_subgradient_lowest_index(hinge):
    """Tests that ties pick the lowest-index active piece.

    Args:
        hinge: The hinge fixture.
    """
    value, g = maxaffine_eval_subgrad(hinge, [1.0, 0.0])
    assert value == 0.0
    np.testing.assert_array_equal(g, [0.0, 0.0])
    value, g = hinge.eval_subgrad([2.0, 0.0])
    assert value == pytest.approx(1.0)
    np.testing.assert_array_equal(g, [1.0, 0.0])


def test_zero_piece_required():
    """Tests that request functions must carry the zero piece."""
    with pytest.raises(ValidationError):
        MaxAffine([[1.0]], [0.0])
    f = MaxAffine([[1.0]], [0.0], require_zero_piece=False)
    assert not f.has_zero_piece


def test_pieces_layout(hinge):
    """Tests the on-disk row layout.

    Args:
        hinge: The hinge fixture.
    """
    np.testing.assert_array_equal(hinge.pieces, [[0.0, 0.0, 0.0], [1.0, 0.0, -1.0]])
    assert hinge.dim == 2


def test_scaled(hinge):
    """Tests positive scaling.

    Args:
        hinge: The hinge fixture.
    """
    double = hinge.scaled(2.0)
    assert double(np.array([3.0, 0.0])) == pytest.approx(4.0)
    with pytest.raises(ValidationError):
        hinge.scaled(0.0)


def test_malformed():
    """Tests shape validation."""
    with pytest.raises(ValidationError):
        MaxAffine([[0.0, 0.0]], [0.0, 1.0])
    with pytest.raises(ValidationError):
        MaxAffine.from_pieces([0.0, 0.0])
