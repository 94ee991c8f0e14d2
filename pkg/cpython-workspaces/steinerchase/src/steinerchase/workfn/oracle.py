"""Independent oracles for testing the path solvers.

brute_force_work discretizes every path point to a grid over a bounding box
and runs the work-function recursion layer by layer; the last layer is only
evaluated at the query point. finite_diff_conjugate_rate measures how fast
the conjugate grows when the next function request is served for a short time.
"""

import numpy as np

from ..geometry.norm import as_vector, norm
from .error import DimensionTooLarge
from .handle import WorkFunctionHandle
from .request import Body, Func, Instance

_ORDERS = {"l2": 2, "linf": np.inf, "l1": 1}

# rows of the pairwise distance block evaluated at once
_CHUNK = 256


def _grid(lo: np.ndarray, hi: np.ndarray, step: float) -> np.ndarray:
    axes = [np.arange(lo[k], hi[k] + step / 2.0, step) for k in range(lo.shape[0])]
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.column_stack([m.ravel() for m in mesh])


def _relax(values: np.ndarray, sources: np.ndarray, targets: np.ndarray, order) -> np.ndarray:
    """min over sources s of values[s] + ||t - s|| for every target t."""
    out = np.empty(targets.shape[0])
    for start in range(0, targets.shape[0], _CHUNK):
        block = targets[start : start + _CHUNK]
        distances = np.linalg.norm(block[:, None, :] - sources[None, :, :], ord=order, axis=2)
        out[start : start + _CHUNK] = np.min(values[None, :] + distances, axis=1)
    return out


def brute_force_work(
    instance: Instance,
    n: int,
    x,
    grid_step: float,
    margin: float = 1.0,
) -> float:
    """Approximates W_n(x) by dynamic programming over a grid.

    The box covers the origin, x and every body of the prefix, widened by
    ``margin`` on each side. Body layers keep only grid points inside the
    body; function layers keep the whole grid.

    Args:
        instance: The instance.
        n: Prefix length.
        x: The query point.
        grid_step: Grid spacing.
        margin: Extra room around the box for function requests.

    Returns:
        The grid value, within O(grid_step * n) of W_n(x) for well-covered boxes.

    Raises:
        DimensionTooLarge: If d > 2.
        ValueError: If some body contains no grid point.
    """
    if instance.dim > 2:
        raise DimensionTooLarge(f"grid oracle needs d <= 2, got {instance.dim}")
    x = as_vector(x, dim=instance.dim, field="x")
    if n == 0:
        return norm(x, instance.norm)

    requests = instance.requests[:n]
    corners = [np.zeros(instance.dim), x]
    for request in requests:
        if isinstance(request, Body):
            corners.extend(request.polytope.bounding_box)
    lo = np.min(corners, axis=0) - margin
    hi = np.max(corners, axis=0) + margin
    grid = _grid(lo, hi, grid_step)
    order = _ORDERS[instance.norm.value]

    sources = np.zeros((1, instance.dim))
    values = np.zeros(1)
    for k, request in enumerate(requests):
        if isinstance(request, Body):
            points = grid[np.all(grid @ request.polytope.A.T <= request.polytope.b + 1e-12, axis=1)]
            if points.shape[0] == 0:
                raise ValueError(f"request {k} contains no grid point at step {grid_step}")
            values = _relax(values, sources, points, order)
        else:
            points = grid
            values = _relax(values, sources, points, order) + request.function.evaluate_many(points)
        sources = points

    return float(_relax(values, sources, x[None, :], order)[0])


def finite_diff_conjugate_rate(h: WorkFunctionHandle, v, delta: float) -> float:
    """Difference quotient of the conjugate when r_{n+1} is served for time delta.

    The refined prefix appends delta * f_{n+1} to the handle's prefix; the
    quotient (W*_refined(v) - W*_n(v)) / delta should approach f_{n+1}(v*_n).

    Args:
        h: Handle of prefix n; request n + 1 must be a function.
        v: A point with dual norm below one.
        delta: Time step, positive.

    Returns:
        The difference quotient.

    Raises:
        ValueError: If there is no next request, it is a body, or delta is not positive.
    """
    if not delta > 0.0:
        raise ValueError(f"delta must be positive, got {delta}")
    if h.prefix_len >= len(h.instance):
        raise ValueError("the handle has no next request")
    following = h.instance.requests[h.prefix_len]
    if not isinstance(following, Func):
        raise ValueError("the next request must be a function")
    refined = h.advance(Func(following.function.scaled(delta)), share_cache=False)
    return (refined.eval_conjugate(v).value - h.eval_conjugate(v).value) / delta
