"""Invariant suites for the work-function solvers and the Steiner estimators.

Each suite builds small seeded instances, probes one family of identities
that exact solvers must satisfy, and yields one CheckResult per identity and
instance. Every suite covers a polyhedral norm, answered by the LP backend,
and the Euclidean norm, answered by the subgradient backend. Suites run in
the order of SUITES; the command line stops at the first failure.

**Usage:**
```python
runner = CheckRunner(logger, config, seed=1)
for result in runner.run(["fenchel", "workfn"]):
    print(result.line())
```
"""

from typing import Callable, Iterator

import numpy as np
from steinerchase.config.config import Config
from steinerchase.config.solver import SolverConfig
from steinerchase.config.steiner import SteinerConfig
from steinerchase.error import ChaseError, ValidationError
from steinerchase.geometry.norm import NormTag, norm
from steinerchase.geometry.polytope import HPolytope
from steinerchase.geometry.sampling import RandomStream, StreamPurpose, sample_dual_ball, sample_dual_sphere
from steinerchase.instances.generators import RandomBodies, RandomMaxAffine, random_bodies, random_max_affine
from steinerchase.logger import Logger
from steinerchase.steiner.estimator import (
    dual_ball_average,
    functional_steiner_dual,
    functional_steiner_primal,
    level_set_steiner,
    steiner_body,
    steiner_body_primal,
)
from steinerchase.workfn.handle import WorkFunctionHandle
from steinerchase.workfn.oracle import brute_force_work, finite_diff_conjugate_rate
from steinerchase.workfn.request import Body, Func, Instance

SUITES = ("fenchel", "workfn", "dual-bound", "oracle", "derivative", "steiner", "unification")

# estimator agreement is tested at this many combined standard errors
STDERR_MULTIPLE = 4.0

ORACLE_TOLERANCE = 0.05
ORACLE_GRID_STEP = 0.01
ORACLE_REQUESTS = 3
DERIVATIVE_TOLERANCE = 0.05
DERIVATIVE_DELTA = 1.0 / 64.0

# Euclidean conjugates are iterative solves; estimator suites cap their samples there
EUCLIDEAN_SAMPLES = 64
# solver tolerance for difference quotients, which divide solver errors by the time step
DERIVATIVE_SOLVER_TOL = 1e-5


class CheckResult:
    """Outcome of one identity on one instance."""

    def __init__(self, name: str, passed: bool, worst: float, bound: float) -> None:
        self.name = name
        self.passed = passed
        self.worst = worst
        self.bound = bound

    def line(self) -> str:
        """The pass/fail line printed by the command line."""
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name} worst={self.worst:.3e} bound={self.bound:.3e}"


class CheckFailed(ChaseError):
    """Raised by the command line when a check fails."""

    def __init__(self, result: CheckResult | None = None) -> None:
        message = "A check failed." if result is None else f"check {result.name} failed: {result.line()}"
        super().__init__(message)
        self.result = result


def _verdict(name: str, excesses: list[float], bound: float) -> CheckResult:
    """Passes when every measured error stays within its bound (excess <= 0)."""
    worst = max(excesses, default=-bound)
    return CheckResult(name, worst <= 0.0, worst + bound, bound)


def lattice_boxes(dim: int, count: int, tag: NormTag, rng: np.random.Generator) -> Instance:
    """Axis-aligned boxes with corners on the 0.1 lattice inside [-1, 1.4]^d.

    Every oracle grid with a step dividing 0.1 and a lattice-aligned origin
    contains the corners, so the grid error comes from path points alone.
    """
    requests = []
    for _ in range(count):
        lo = rng.integers(-10, 7, dim) / 10.0
        hi = lo + rng.integers(2, 8, dim) / 10.0
        requests.append(Body(HPolytope.box(lo, hi)))
    return Instance(dim, tag, requests)


class CheckRunner:
    """Runs the invariant suites on seeded desk-scale instances."""

    def __init__(
        self,
        logger: Logger,
        config: Config,
        seed: int = 1,
        probes: int = 20,
        samples: int = 512,
        oracle_grid_step: float = ORACLE_GRID_STEP,
        workers: int | None = None,
    ) -> None:
        """Initialize the runner.

        Args:
            logger: Logger for handles and suite summaries.
            config: Solver settings; conjugate_perturbation injects faults.
            seed: Seed of the instances and probes.
            probes: Random probes per identity and instance.
            samples: Monte-Carlo sample count for estimator suites.
            oracle_grid_step: Grid spacing of the brute-force oracle; must divide 0.1.
            workers: Thread count for estimators.

        Raises:
            ValueError: If probes < 1, the grid step does not divide 0.1, or
                samples is not a positive even number.
        """
        if probes < 1:
            raise ValueError(f"probes must be positive, got {probes}")
        if not oracle_grid_step > 0.0 or abs(0.1 / oracle_grid_step - round(0.1 / oracle_grid_step)) > 1e-9:
            raise ValueError(f"oracle grid step must divide 0.1, got {oracle_grid_step}")
        self._log = logger
        self.config = config
        self.seed = seed
        self.probes = probes
        self.oracle_grid_step = oracle_grid_step
        self.workers = workers
        self.steiner = SteinerConfig({"samples": samples, "seed": seed, "antithetic": True, "common_random_numbers": True})
        self._bodies = {
            "bodies": random_bodies(RandomBodies(2, 3, NormTag.LINF, seed=seed, scale=1.0)),
            "bodies-l2": random_bodies(RandomBodies(2, 2, NormTag.EUCLIDEAN, seed=seed, scale=1.0)),
        }
        self._functions = {
            "functions": random_max_affine(RandomMaxAffine(2, 3, NormTag.L1, seed=seed, pieces=2)),
            "functions-l2": random_max_affine(RandomMaxAffine(2, 2, NormTag.EUCLIDEAN, seed=seed, pieces=2)),
        }
        boxes = self._rng(40)
        self._boxes = {
            "boxes": lattice_boxes(2, ORACLE_REQUESTS, NormTag.LINF, boxes),
            "boxes-l2": lattice_boxes(2, ORACLE_REQUESTS, NormTag.EUCLIDEAN, boxes),
        }

    @property
    def _instances(self) -> dict[str, Instance]:
        return {**self._bodies, **self._functions}

    def _handle(self, instance: Instance, n: int | None = None, solver: SolverConfig | None = None) -> WorkFunctionHandle:
        return WorkFunctionHandle(self._log, instance, n, solver or self.config.solver)

    def _rng(self, step: int) -> np.random.Generator:
        return RandomStream(self.seed, StreamPurpose.CHECK, step).generator(0)

    def _slack(self, h: WorkFunctionHandle, scale: float = 0.0) -> float:
        return 10.0 * h.tol * (1.0 + abs(scale))

    def _estimator(self, instance: Instance) -> SteinerConfig:
        """The sample configuration for estimators on an instance."""
        if instance.norm is NormTag.EUCLIDEAN and self.steiner.samples > EUCLIDEAN_SAMPLES:
            return self.steiner.with_samples(EUCLIDEAN_SAMPLES)
        return self.steiner

    def _precise_solver(self, instance: Instance) -> SolverConfig:
        """The configured solver with its tolerance tightened to DERIVATIVE_SOLVER_TOL."""
        values = self.config.solver.to_dict()
        values["tol"] = min(self.config.solver.tolerance(instance.norm), DERIVATIVE_SOLVER_TOL)
        return SolverConfig(values)

    def run(self, suites: list[str] | tuple[str, ...] = SUITES) -> Iterator[CheckResult]:
        """Yields results suite by suite, in the order of SUITES.

        Raises:
            ValidationError: If a suite name is unknown.
        """
        unknown = [s for s in suites if s not in SUITES]
        if unknown:
            raise ValidationError(f"unknown suite {unknown[0]!r}; expected one of {list(SUITES)}", field="suite")
        table: dict[str, Callable[[], Iterator[CheckResult]]] = {
            "fenchel": self.fenchel,
            "workfn": self.workfn,
            "dual-bound": self.dual_bound,
            "oracle": self.oracle,
            "derivative": self.derivative,
            "steiner": self.steiner_suite,
            "unification": self.unification,
        }
        for suite in SUITES:
            if suite in suites:
                self._log.info("Running check suite", suite=suite)
                yield from table[suite]()

    def fenchel(self) -> Iterator[CheckResult]:
        """The conjugate value matches W at the conjugate point, and Fenchel-Young holds."""
        for label, instance in self._instances.items():
            h = self._handle(instance)
            rng = self._rng(1)
            consistency, young = [], []
            for _ in range(self.probes):
                v = sample_dual_ball(instance.norm, instance.dim, rng)
                result = h.eval_conjugate(v)
                back = h.eval_work(result.endpoint) - float(v @ result.endpoint)
                consistency.append(abs(result.value - back) - self._slack(h, back) - result.gap)
                x = rng.uniform(-2.0, 2.0, instance.dim)
                young.append(result.value - (h.eval_work(x) - float(v @ x)) - self._slack(h, result.value))
            yield _verdict(f"fenchel.consistency[{label}]", consistency, self._slack(h))
            yield _verdict(f"fenchel.young[{label}]", young, self._slack(h))

    def workfn(self) -> Iterator[CheckResult]:
        """W_n grows with n, is convex and 1-Lipschitz; W_0 is the norm and W*_0 vanishes."""
        for label, instance in self._instances.items():
            rng = self._rng(2)
            handles = [self._handle(instance, n) for n in range(len(instance) + 1)]
            h = handles[-1]
            monotone, convex, lipschitz, base, base_conjugate = [], [], [], [], []
            for _ in range(self.probes):
                a = rng.uniform(-2.0, 2.0, instance.dim)
                b = rng.uniform(-2.0, 2.0, instance.dim)
                values = [g.eval_work(a) for g in handles]
                monotone.extend(values[n - 1] - values[n] - self._slack(h, values[n]) for n in range(1, len(values)))
                wa, wb, wm = values[-1], h.eval_work(b), h.eval_work((a + b) / 2.0)
                convex.append(wm - (wa + wb) / 2.0 - self._slack(h, wa + wb))
                lipschitz.append(abs(wa - wb) - norm(a - b, instance.norm) - self._slack(h, wa + wb))
                base.append(abs(values[0] - norm(a, instance.norm)))
                v = sample_dual_ball(instance.norm, instance.dim, rng)
                base_conjugate.append(abs(handles[0].eval_conjugate(v).value))
            yield _verdict(f"workfn.monotone[{label}]", monotone, self._slack(h))
            yield _verdict(f"workfn.convex[{label}]", convex, self._slack(h))
            yield _verdict(f"workfn.lipschitz[{label}]", lipschitz, self._slack(h))
            yield _verdict(f"workfn.base[{label}]", base, 0.0)
            yield _verdict(f"workfn.base_conjugate[{label}]", base_conjugate, 0.0)

    def dual_bound(self) -> Iterator[CheckResult]:
        """W*_n(theta) <= 2 OPT on the dual sphere; the dual-ball average stays below OPT.

        Both sides carry the solver tolerance, 3 tol (1 + OPT).
        """
        for label, instance in self._instances.items():
            h = self._handle(instance)
            rng = self._rng(3)
            opt = h.opt_value()
            bound = 3.0 * h.tol * (1.0 + abs(opt))
            pointwise = []
            for _ in range(self.probes):
                theta, _ = sample_dual_sphere(instance.norm, instance.dim, rng)
                pointwise.append(h.eval_conjugate(theta).value - 2.0 * opt - bound)
            average, _ = dual_ball_average(h, self.steiner.with_samples(2 * self.probes), self.workers)
            yield _verdict(f"dual-bound.pointwise[{label}]", pointwise, bound)
            yield _verdict(f"dual-bound.ball_average[{label}]", [average - opt - bound], bound)

    def oracle(self) -> Iterator[CheckResult]:
        """The path solver agrees with grid dynamic programming within ORACLE_TOLERANCE.

        Instances are lattice boxes and query points sit on the 0.1 lattice, so
        every grid contains the box corners and the queries. Grid paths are
        feasible, so the grid value never undercuts W_n by more than the solver slack.
        """
        for label, instance in self._boxes.items():
            h = self._handle(instance)
            rng = self._rng(4)
            above, below = [], []
            for _ in range(max(1, self.probes // 4)):
                x = rng.integers(-15, 16, instance.dim) / 10.0
                exact = h.eval_work(x)
                grid = brute_force_work(instance, len(instance), x, self.oracle_grid_step)
                above.append(grid - exact - ORACLE_TOLERANCE)
                below.append(exact - grid - self._slack(h, exact))
            yield _verdict(f"oracle.grid_upper[{label}]", above, ORACLE_TOLERANCE)
            yield _verdict(f"oracle.grid_lower[{label}]", below, self._slack(h))

    def derivative(self) -> Iterator[CheckResult]:
        """Serving f_{n+1} for a short time raises W*_n(v) at rate f_{n+1}(v*).

        The allowance adds the solver error of two conjugates divided by the time step.
        """
        for label, instance in self._functions.items():
            rng = self._rng(5)
            solver = self._precise_solver(instance)
            errors = []
            worst_bound = DERIVATIVE_TOLERANCE
            for n in range(len(instance)):
                h = self._handle(instance, n, solver)
                following = instance.requests[n]
                if not isinstance(following, Func):
                    continue
                for _ in range(max(1, self.probes // 4)):
                    v = 0.5 * sample_dual_ball(instance.norm, instance.dim, rng)
                    rate = finite_diff_conjugate_rate(h, v, DERIVATIVE_DELTA)
                    result = h.eval_conjugate(v)
                    bound = DERIVATIVE_TOLERANCE + 4.0 * h.tol * (1.0 + abs(result.value)) / DERIVATIVE_DELTA
                    worst_bound = max(worst_bound, bound)
                    errors.append(abs(rate - following.function(result.endpoint)) - bound)
            yield _verdict(f"derivative.rate[{label}]", errors, worst_bound)

    def steiner_suite(self) -> Iterator[CheckResult]:
        """Dual and primal estimators agree; body Steiner points respect symmetry and translation."""
        for label, bodies in self._bodies.items():
            yield from self._body_steiner(label, bodies)
        for label, functions in self._functions.items():
            h = self._handle(functions)
            cfg = self._estimator(functions)
            dual = functional_steiner_dual(h, cfg, self.workers)
            primal = functional_steiner_primal(h, cfg, self.workers)
            slack = self._slack(h) * functions.dim
            gap = float(np.max(np.abs(dual.point - primal.point)))
            yield _verdict(
                f"steiner.functional_primal_dual[{label}]",
                [gap - STDERR_MULTIPLE * (dual.stderr + primal.stderr) - slack],
                slack,
            )

    def _body_steiner(self, label: str, bodies: Instance) -> Iterator[CheckResult]:
        tag = bodies.norm
        polytopes = [r.polytope for r in bodies.requests if isinstance(r, Body)]
        agreement = []
        for polytope in polytopes:
            dual = steiner_body(polytope, tag, self.steiner, workers=self.workers)
            primal = steiner_body_primal(polytope, tag, self.steiner, workers=self.workers)
            gap = float(np.max(np.abs(dual.point - primal.point)))
            agreement.append(gap - STDERR_MULTIPLE * (dual.stderr + primal.stderr) - 1e-9)
        yield _verdict(f"steiner.body_primal_dual[{label}]", agreement, 1e-9)

        cube = HPolytope.box(-np.ones(bodies.dim), np.ones(bodies.dim))
        center = steiner_body(cube, tag, self.steiner, workers=self.workers)
        yield _verdict(f"steiner.symmetry[cube-{tag.value}]", [float(np.max(np.abs(center.point))) - 1e-9], 1e-9)

        shift = np.array([0.5, -0.25])
        equivariance = []
        for polytope in polytopes:
            base = steiner_body(polytope, tag, self.steiner, workers=self.workers)
            moved = steiner_body(polytope.translate(shift), tag, self.steiner, workers=self.workers)
            error = float(np.max(np.abs(moved.point - base.point - shift)))
            equivariance.append(error - STDERR_MULTIPLE * (base.stderr + moved.stderr) - 1e-9)
        yield _verdict(f"steiner.translation[{label}]", equivariance, 1e-9)

    def unification(self) -> Iterator[CheckResult]:
        """For a large level, the level-set Steiner point equals the functional Steiner point."""
        for label, instance in self._bodies.items():
            cfg = self._estimator(instance)
            errors = []
            bound = 0.0
            circumradius = 0.0
            for n in range(1, len(instance) + 1):
                request = instance.requests[n - 1]
                if isinstance(request, Body):
                    circumradius = max(circumradius, request.polytope.circumradius(instance.norm))
                h = self._handle(instance, n)
                R = h.opt_value() + 2.0 * circumradius + 1.0
                level = level_set_steiner(h, R, cfg, self.workers)
                functional = functional_steiner_dual(h, cfg, self.workers)
                bound = self._slack(h, R) * instance.dim
                gap = float(np.max(np.abs(level.point - functional.point)))
                errors.append(gap - STDERR_MULTIPLE * (level.stderr + functional.stderr) - bound)
            yield _verdict(f"unification.level_set[{label}]", errors, bound)
