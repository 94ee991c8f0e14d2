"""Unit tests for HPolytope, support functions and Euclidean projection."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from steinerchase.error import ValidationError
from steinerchase.geometry.error import InfeasibleBodyError, UnboundedBodyError
from steinerchase.geometry.norm import NormTag
from steinerchase.geometry.polytope import HPolytope, euclid_project, is_subset, support

coordinate = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False, allow_infinity=False)


@pytest.fixture
def square():
    """The square [-1, 1]^2."""
    return HPolytope.box([-1.0, -1.0], [1.0, 1.0])


@pytest.fixture
def triangle():
    """The triangle x >= 0, y >= 0, x + y <= 1."""
    return HPolytope([[-1.0, 0.0], [0.0, -1.0], [1.0, 1.0]], [0.0, 0.0, 1.0])


def test_box_support(square):
    """Tests the closed-form support of a box.

    Args:
        square: The square fixture.
    """
    value, witness = support(square, np.array([1.0, 1.0]))
    assert value == pytest.approx(2.0)
    np.testing.assert_allclose(witness, [1.0, 1.0])
    assert square.is_box


def test_general_support(triangle):
    """Tests the LP support of a non-box body.

    Args:
        triangle: The triangle fixture.
    """
    assert not triangle.is_box
    value, witness = support(triangle, np.array([2.0, 1.0]))
    assert value == pytest.approx(2.0)
    np.testing.assert_allclose(witness, [1.0, 0.0], atol=1e-9)
    lo, hi = triangle.bounding_box
    np.testing.assert_allclose(lo, [0.0, 0.0], atol=1e-9)
    np.testing.assert_allclose(hi, [1.0, 1.0], atol=1e-9)


def test_chebyshev(triangle):
    """Tests the inscribed ball of the triangle.

    Args:
        triangle: The triangle fixture.
    """
    r = 1.0 / (2.0 + np.sqrt(2.0))
    assert triangle.chebyshev_radius == pytest.approx(r, rel=1e-6)
    np.testing.assert_allclose(triangle.chebyshev_center, [r, r], rtol=1e-6)


def test_infeasible_rejected():
    """Tests that halfspaces with no common point are rejected."""
    with pytest.raises(InfeasibleBodyError):
        HPolytope([[1.0, 1.0], [-1.0, -1.0]], [0.0, -1.0])
    with pytest.raises(InfeasibleBodyError):
        HPolytope.box([1.0], [0.0])


def test_unbounded_rejected():
    """Tests that an unbounded intersection is rejected."""
    with pytest.raises(UnboundedBodyError):
        HPolytope([[1.0, 1.0]], [1.0])


def test_malformed_rejected():
    """Tests shape and zero-normal validation."""
    with pytest.raises(ValidationError):
        HPolytope([[1.0, 0.0]], [1.0, 2.0])
    with pytest.raises(ValidationError):
        HPolytope([[0.0, 0.0], [1.0, 0.0]], [1.0, 1.0])
    with pytest.raises(ValidationError):
        HPolytope([[np.inf, 0.0]], [1.0])


def test_flat_body_is_allowed():
    """Tests that a segment (empty interior) is a valid body."""
    segment = HPolytope.box([0.0, 1.0], [2.0, 1.0])
    assert segment.chebyshev_radius == 0.0
    assert segment.contains(np.array([1.0, 1.0]))


@given(coordinate, coordinate)
def test_projection_of_box_is_clip(x, y):
    """Tests that projecting onto a box clips coordinates.

    Args:
        x: First coordinate.
        y: Second coordinate.
    """
    square = HPolytope.box([-1.0, -1.0], [1.0, 1.0])
    p = euclid_project(np.array([x, y]), square)
    np.testing.assert_allclose(p, np.clip([x, y], -1.0, 1.0))


@given(coordinate, coordinate)
def test_projection_onto_triangle(x, y):
    """Tests that projections land in the body and satisfy the obtuse-angle condition.

    Args:
        x: First coordinate.
        y: Second coordinate.
    """
    triangle = HPolytope([[-1.0, 0.0], [0.0, -1.0], [1.0, 1.0]], [0.0, 0.0, 1.0])
    point = np.array([x, y])
    p = euclid_project(point, triangle)
    assert triangle.contains(p, tol=1e-6)
    for vertex in ([0.0, 0.0], [1.0, 0.0], [0.0, 1.0]):
        assert (point - p) @ (np.array(vertex) - p) <= 1e-5 * (1.0 + np.linalg.norm(point))


def test_projection_onto_equality_slice():
    """Tests the closed-form projection onto a body cut out by opposing row pairs."""
    point = HPolytope([[1.0, 1.0], [-1.0, -1.0], [1.0, -1.0], [-1.0, 1.0]], [1.0, -1.0, 0.0, 0.0])
    p = euclid_project(np.array([3.0, -7.0]), point)
    np.testing.assert_allclose(p, [0.5, 0.5], atol=1e-9)


def test_projection_single_violated_row():
    """Tests projecting across one violated row of a segment."""
    line = HPolytope([[1.0, 1.0], [-1.0, -1.0], [1.0, 0.0], [-1.0, 0.0]], [1.0, -1.0, 5.0, 5.0])
    p = euclid_project(np.array([0.0, 0.0]), line)
    np.testing.assert_allclose(p, [0.5, 0.5], atol=1e-9)


def test_is_subset(square, triangle):
    """Tests containment of bodies.

    Args:
        square: The square fixture.
        triangle: The triangle fixture.
    """
    assert is_subset(triangle, square)
    assert not is_subset(square, triangle)


def test_circumradius(triangle):
    """Tests the norm bounds of the bounding-box corner.

    Args:
        triangle: The triangle fixture.
    """
    assert triangle.circumradius(NormTag.LINF) == pytest.approx(1.0)
    assert triangle.circumradius(NormTag.L1) == pytest.approx(2.0)


def test_polygon_ccw(triangle):
    """Tests that planar vertices come back counter-clockwise.

    Args:
        triangle: The triangle fixture.
    """
    vertices = triangle.polygon()
    assert vertices.shape == (3, 2)
    x, y = vertices[:, 0], vertices[:, 1]
    signed_area = 0.5 * np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y)
    assert signed_area == pytest.approx(0.5)


def test_translate_and_equality(square):
    """Tests translation and row equality.

    Args:
        square: The square fixture.
    """
    moved = square.translate([2.0, 0.0])
    assert moved.contains(np.array([3.0, 0.0]))
    assert not moved.contains(np.array([0.0, 0.0]))
    assert square == HPolytope.box([-1.0, -1.0], [1.0, 1.0])
    assert square != moved
