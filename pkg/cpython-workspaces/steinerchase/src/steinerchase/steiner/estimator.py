"""Monte-Carlo Steiner point estimators.

Dual forms integrate a support-type function against the outward normal over
the boundary of the dual unit ball (cone measure):

    s(K) = d * E[h_K(theta) n(theta)]
    s(W) = -d * E[W*(theta) n(theta)]

Primal forms average extremal points over the dual unit ball:

    s(K) = E[argmax_{x in K} v . x]
    s(W) = E[v*]

With antithetic sampling every draw theta is paired with -theta (normal -n),
so a pair contributes (g(theta) - g(-theta)) / 2 * n to the dual form and
cancels any constant part of g exactly. Draws come from counter-based streams;
with common random numbers the same directions are used at every step.

**Usage:**
```python
cfg = SteinerConfig({"samples": 1024, "seed": 3})
estimate = functional_steiner_dual(handle, cfg)
estimate.point, estimate.stderr
```
"""

from typing import Callable

import numpy as np

from ..config.steiner import SteinerConfig
from ..geometry.norm import NormTag
from ..geometry.polytope import HPolytope, support
from ..geometry.sampling import RandomStream, StreamPurpose, sample_dual_ball, sample_dual_sphere
from ..workfn.handle import WorkFunctionHandle
from .parallel import parallel_map


class SteinerEstimate:
    """A Monte-Carlo estimate with its standard error."""

    def __init__(
        self,
        point: np.ndarray,
        coordinate_stderr: np.ndarray,
        samples_used: int,
        solver_gap: float = 0.0,
    ) -> None:
        """Initialize the estimate.

        Args:
            point: The estimated point.
            coordinate_stderr: Per-coordinate standard errors.
            samples_used: Number of function evaluations behind the estimate.
            solver_gap: Largest solver gap among the evaluations.
        """
        self.point = point
        self.coordinate_stderr = coordinate_stderr
        self.samples_used = samples_used
        self.solver_gap = solver_gap

    @property
    def stderr(self) -> float:
        """The largest per-coordinate standard error."""
        return float(np.max(self.coordinate_stderr)) if self.coordinate_stderr.size else 0.0

    def __repr__(self) -> str:
        return f"SteinerEstimate(point={self.point.tolist()}, stderr={self.stderr:.3g}, samples={self.samples_used})"


def _stream_step(cfg: SteinerConfig, step: int) -> int:
    return 0 if cfg.common_random_numbers else step


def _sphere_draws(tag: NormTag, dim: int, cfg: SteinerConfig, step: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Base draws of the cone measure; M/2 of them when antithetic, else M."""
    stream = RandomStream(cfg.seed, StreamPurpose.SPHERE, _stream_step(cfg, step))
    count = cfg.samples // 2 if cfg.antithetic else cfg.samples
    return [sample_dual_sphere(tag, dim, stream.generator(j)) for j in range(count)]


def _ball_draws(tag: NormTag, dim: int, cfg: SteinerConfig, step: int) -> list[np.ndarray]:
    """Base uniform draws of the dual ball; M/2 of them when antithetic, else M."""
    stream = RandomStream(cfg.seed, StreamPurpose.BALL, _stream_step(cfg, step))
    count = cfg.samples // 2 if cfg.antithetic else cfg.samples
    return [sample_dual_ball(tag, dim, stream.generator(j)) for j in range(count)]


def _summarize(contributions: np.ndarray, gaps: list[float], samples_used: int) -> SteinerEstimate:
    """Mean and standard error of independent per-draw (or per-pair) contributions."""
    count = contributions.shape[0]
    point = contributions.mean(axis=0)
    if count > 1:
        coordinate_stderr = contributions.std(axis=0, ddof=1) / np.sqrt(count)
    else:
        coordinate_stderr = np.zeros(contributions.shape[1])
    return SteinerEstimate(point, coordinate_stderr, samples_used, max(gaps, default=0.0))


def _dual_form(
    value: Callable[[np.ndarray], tuple[float, float]],
    tag: NormTag,
    dim: int,
    cfg: SteinerConfig,
    step: int,
    sign: float,
    workers: int | None,
) -> SteinerEstimate:
    """sign * d * E[g(theta) n(theta)] for a scalar function g returning (value, gap)."""
    draws = _sphere_draws(tag, dim, cfg, step)
    thetas = [theta for theta, _ in draws]
    if cfg.antithetic:
        thetas = [t for theta in thetas for t in (theta, -theta)]
    evaluations = parallel_map(value, thetas, workers)

    normals = np.array([normal for _, normal in draws])
    values = np.array([v for v, _ in evaluations])
    if cfg.antithetic:
        weights = (values[0::2] - values[1::2]) / 2.0
    else:
        weights = values
    contributions = sign * dim * weights[:, None] * normals
    return _summarize(contributions, [gap for _, gap in evaluations], len(thetas))


def _primal_form(
    point: Callable[[np.ndarray], tuple[np.ndarray, float]],
    tag: NormTag,
    dim: int,
    cfg: SteinerConfig,
    step: int,
    workers: int | None,
) -> SteinerEstimate:
    """E[p(v)] over the dual ball for a point-valued p returning (point, gap)."""
    draws = _ball_draws(tag, dim, cfg, step)
    if cfg.antithetic:
        draws = [w for v in draws for w in (v, -v)]
    evaluations = parallel_map(point, draws, workers)
    points = np.array([p for p, _ in evaluations])
    if cfg.antithetic:
        points = (points[0::2] + points[1::2]) / 2.0
    return _summarize(points, [gap for _, gap in evaluations], len(draws))


def steiner_body(
    P: HPolytope, tag: NormTag, cfg: SteinerConfig, step: int = 0, workers: int | None = None
) -> SteinerEstimate:
    """Estimates the Steiner point of a body from its support function.

    Args:
        P: The body.
        tag: The ambient norm.
        cfg: Sampling settings.
        step: Time step, for runs without common random numbers.
        workers: Thread count.

    Returns:
        The estimate of d * E[h_P(theta) n(theta)].
    """

    def value(theta: np.ndarray) -> tuple[float, float]:
        return support(P, theta)[0], 0.0

    return _dual_form(value, tag, P.dim, cfg, step, 1.0, workers)


def steiner_body_primal(
    P: HPolytope, tag: NormTag, cfg: SteinerConfig, step: int = 0, workers: int | None = None
) -> SteinerEstimate:
    """Estimates the Steiner point of a body as the dual-ball average of support witnesses."""

    def witness(v: np.ndarray) -> tuple[np.ndarray, float]:
        return support(P, v)[1], 0.0

    return _primal_form(witness, tag, P.dim, cfg, step, workers)


def functional_steiner_dual(
    h: WorkFunctionHandle, cfg: SteinerConfig, workers: int | None = None
) -> SteinerEstimate:
    """Estimates s(W_n) = -d * E[W*_n(theta) n(theta)] over the dual sphere.

    Args:
        h: The work function.
        cfg: Sampling settings.
        workers: Thread count.

    Returns:
        The estimate, carrying the largest conjugate gap.
    """

    def value(theta: np.ndarray) -> tuple[float, float]:
        result = h.eval_conjugate(theta)
        return result.value, result.gap

    return _dual_form(value, h.instance.norm, h.dim, cfg, h.prefix_len, -1.0, workers)


def functional_steiner_primal(
    h: WorkFunctionHandle, cfg: SteinerConfig, workers: int | None = None
) -> SteinerEstimate:
    """Estimates s(W_n) as the dual-ball average of conjugate points."""

    def endpoint(v: np.ndarray) -> tuple[np.ndarray, float]:
        result = h.eval_conjugate(v)
        return result.endpoint, result.gap

    return _primal_form(endpoint, h.instance.norm, h.dim, cfg, h.prefix_len, workers)


def level_set_steiner(
    h: WorkFunctionHandle, R: float, cfg: SteinerConfig, workers: int | None = None
) -> SteinerEstimate:
    """Estimates the Steiner point of the level set {x : W_n(x) <= R}.

    Raises:
        EmptyLevelSet: If R is below the offline optimum.
    """

    def value(theta: np.ndarray) -> tuple[float, float]:
        return h.level_set_support(R, theta)[0], 0.0

    return _dual_form(value, h.instance.norm, h.dim, cfg, h.prefix_len, 1.0, workers)


def _conjugate_average(
    h: WorkFunctionHandle, points: list[np.ndarray], antithetic: bool, workers: int | None
) -> tuple[float, float]:
    """Mean of W*_n over the points, averaging each antithetic pair first."""
    if antithetic:
        points = [w for v in points for w in (v, -v)]
    results = parallel_map(h.eval_conjugate, points, workers)
    values = np.array([r.value for r in results])
    if antithetic:
        values = (values[0::2] + values[1::2]) / 2.0
    stderr = float(values.std(ddof=1) / np.sqrt(values.size)) if values.size > 1 else 0.0
    return float(values.mean()), stderr


def dual_sphere_average(h: WorkFunctionHandle, cfg: SteinerConfig, workers: int | None = None) -> tuple[float, float]:
    """Mean of W*_n over the dual sphere (cone measure), with its standard error."""
    thetas = [theta for theta, _ in _sphere_draws(h.instance.norm, h.dim, cfg, h.prefix_len)]
    return _conjugate_average(h, thetas, cfg.antithetic, workers)


def dual_ball_average(h: WorkFunctionHandle, cfg: SteinerConfig, workers: int | None = None) -> tuple[float, float]:
    """Mean of W*_n over the dual unit ball, with its standard error."""
    return _conjugate_average(h, _ball_draws(h.instance.norm, h.dim, cfg, h.prefix_len), cfg.antithetic, workers)


def movement_certificate(h: WorkFunctionHandle, cfg: SteinerConfig, workers: int | None = None) -> float:
    """Upper bound on the functional Steiner chaser's total movement after n steps.

    The movement of the exact chaser is at most d times the sphere average of
    W*_n; the Monte-Carlo average is returned scaled by d.
    """
    mean, _ = dual_sphere_average(h, cfg, workers)
    return h.dim * mean
