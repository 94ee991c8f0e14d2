"""Work-function handles.

A WorkFunctionHandle pins an instance prefix of length n and a solver
configuration, and evaluates on demand:

* W_n(x), the cheapest cost of serving the prefix from the origin and ending at x;
* W*_n(v) = min_w W_n(w) - v . w for v in the dual unit ball, with the conjugate point;
* the offline optimum W*_n(0);
* support functions of the level sets {x : W_n(x) <= R}.

n = 0 is closed form. Longer prefixes go to the LP backend (l1, l-infinity)
or the projected-subgradient backend (Euclidean), as chosen by SolverConfig.

**Usage:**
```python
handle = WorkFunctionHandle(logger, instance, 2, SolverConfig())
handle.eval_work(np.zeros(2))
handle.eval_conjugate(np.array([0.5, 0.0])).endpoint
handle.advance(next_request).opt_value()
```
"""

import threading

import numpy as np
from scipy.optimize import minimize_scalar

from ..config.solver import SolverConfig
from ..geometry.norm import as_vector, dual_maximizer, dual_norm, norm
from ..logger import Logger
from .error import DualNormViolation, EmptyLevelSet, SolverFailure
from .linear import PathProgram
from .request import Instance, Request
from .result import ConjugateResult
from .subgradient import SubgradientPath

# slack on the dual norm before a conjugate query is rejected
DUAL_NORM_SLACK = 1e-9


class WarmStartCache:
    """Optimal paths keyed by (prefix length, v), shared by the handles of one request sequence.

    Writers never coordinate: the last writer of a key wins. Lookups only
    read the previous prefix, so a value never depends on which thread wrote
    the current one. Storing a path for prefix n drops every path of a
    prefix below n - 1; those are never read again while the chase moves forward.
    """

    def __init__(self) -> None:
        self._paths: dict[tuple[int, bytes], np.ndarray] = {}
        self._newest = 0
        self._lock = threading.Lock()

    def get(self, n: int, v: np.ndarray) -> np.ndarray | None:
        return self._paths.get((n, v.tobytes()))

    def put(self, n: int, v: np.ndarray, path: np.ndarray) -> None:
        with self._lock:
            if n > self._newest:
                self._newest = n
                self._paths = {key: p for key, p in self._paths.items() if key[0] >= n - 1}
            self._paths[(n, v.tobytes())] = path

    def prefixes(self) -> set[int]:
        """Prefix lengths with at least one stored path."""
        return {key[0] for key in self._paths}

    def __len__(self) -> int:
        return len(self._paths)


class WorkFunctionHandle:
    """The work function of an instance prefix."""

    def __init__(
        self,
        logger: Logger,
        instance: Instance,
        prefix_len: int | None = None,
        solver: SolverConfig | None = None,
        cache: WarmStartCache | None = None,
    ) -> None:
        """Initialize the handle.

        Args:
            logger: Logger for solver summaries.
            instance: The instance.
            prefix_len: n, defaults to the whole instance.
            solver: Solver settings, defaults to SolverConfig().
            cache: Warm-start cache to share; a fresh one by default.

        Raises:
            ValueError: If n is outside [0, N] or the solver mode does not fit the norm.
        """
        n = len(instance) if prefix_len is None else prefix_len
        if not 0 <= n <= len(instance):
            raise ValueError(f"prefix length {n} outside [0, {len(instance)}]")
        self._log = logger
        self.instance = instance
        self.prefix_len = n
        self.solver = solver if solver is not None else SolverConfig()
        self.backend = self.solver.backend(instance.norm)
        self.tol = self.solver.tolerance(instance.norm)
        self._cache = cache if cache is not None else WarmStartCache()
        self._program: PathProgram | None = None
        self._subgradient: SubgradientPath | None = None
        self._opt: ConjugateResult | None = None
        self._lock = threading.Lock()

    @property
    def dim(self) -> int:
        return self.instance.dim

    @property
    def requests(self) -> tuple[Request, ...]:
        """The prefix r_1, ..., r_n."""
        return self.instance.requests[: self.prefix_len]

    @property
    def cache(self) -> WarmStartCache:
        return self._cache

    def advance(self, request: Request, share_cache: bool = True) -> "WorkFunctionHandle":
        """The handle of this prefix followed by one more request.

        Args:
            request: r_{n+1}.
            share_cache: Share the warm-start cache; pass False when the new
                request is not the instance's own r_{n+1}.

        Returns:
            A handle with prefix n + 1.
        """
        extended = self.instance.prefix(self.prefix_len).append(request)
        cache = self._cache if share_cache else None
        return WorkFunctionHandle(self._log, extended, self.prefix_len + 1, self.solver, cache)

    def with_prefix(self, n: int) -> "WorkFunctionHandle":
        """The handle of a shorter (or equal) prefix of the same instance."""
        if n > self.prefix_len:
            raise ValueError(f"prefix length {n} exceeds {self.prefix_len}")
        return WorkFunctionHandle(self._log, self.instance, n, self.solver, self._cache)

    def _lp(self) -> PathProgram:
        with self._lock:
            if self._program is None:
                self._program = PathProgram(self.requests, self.instance.norm, self.dim)
                self._log.debug(
                    "Built path program",
                    prefix=self.prefix_len,
                    variables=self._program.num_vars,
                    rows=self._program.num_rows,
                )
            return self._program

    def _sg(self) -> SubgradientPath:
        with self._lock:
            if self._subgradient is None:
                self._subgradient = SubgradientPath(self._log, self.requests, self.instance.norm, self.dim, self.solver)
            return self._subgradient

    def work_result(self, x) -> ConjugateResult:
        """Evaluates W_n(x) with the last path point and the gap."""
        x = as_vector(x, dim=self.dim, field="x")
        if self.prefix_len == 0:
            return ConjugateResult(norm(x, self.instance.norm), np.zeros(self.dim), 0.0)
        if self.backend == "lp":
            return self._lp().work(x)
        result, _ = self._sg().work(x)
        return result

    def eval_work(self, x) -> float:
        """Evaluates W_n(x).

        Args:
            x: The point.

        Returns:
            W_n(x), exact for n = 0.

        Raises:
            SolverFailure: If the backend misses its gap target.
        """
        return self.work_result(x).value

    def eval_conjugate(self, v) -> ConjugateResult:
        """Evaluates the concave conjugate W*_n(v) and the conjugate point.

        Args:
            v: A point with dual norm at most one.

        Returns:
            The conjugate value, its endpoint v* and the optimality gap.

        Raises:
            DualNormViolation: If the dual norm of v exceeds one.
            SolverFailure: If the backend misses its gap target.
        """
        v = as_vector(v, dim=self.dim, field="v")
        size = dual_norm(v, self.instance.norm)
        if size > 1.0 + DUAL_NORM_SLACK:
            raise DualNormViolation(f"dual norm of v is {size:.12g}")
        if size > 1.0:
            v = v / size
        if self.prefix_len == 0:
            return ConjugateResult(0.0, np.zeros(self.dim), 0.0)

        if self.backend == "lp":
            result = self._lp().conjugate(v)
        else:
            warm = self._cache.get(self.prefix_len - 1, v)
            result, path = self._sg().conjugate(v, warm)
            self._cache.put(self.prefix_len, v, path)

        if self.solver.conjugate_perturbation:
            result = ConjugateResult(result.value + self.solver.conjugate_perturbation, result.endpoint, result.gap)
        return result

    def opt_result(self) -> ConjugateResult:
        """The offline optimum W*_n(0) with an optimal final position (cached)."""
        if self._opt is None:
            self._opt = self.eval_conjugate(np.zeros(self.dim))
        return self._opt

    def opt_value(self) -> float:
        """Returns the offline optimum min_x W_n(x) = W*_n(0)."""
        return self.opt_result().value

    def level_set_support(self, R: float, theta) -> tuple[float, np.ndarray]:
        """Support function of the level set {x : W_n(x) <= R}.

        Args:
            R: The level, at least the offline optimum.
            theta: The direction.

        Returns:
            The support value and a maximizing point of the level set.

        Raises:
            EmptyLevelSet: If R is below the offline optimum by more than tol.
            SolverFailure: If a backend misses its gap target.
        """
        theta = as_vector(theta, dim=self.dim, field="theta")
        tag = self.instance.norm
        if self.prefix_len == 0:
            if R < -self.tol:
                raise EmptyLevelSet(f"R = {R} is negative")
            R = max(R, 0.0)
            witness = R * dual_maximizer(theta, tag)
            return float(theta @ witness), witness

        if self.backend == "lp":
            result = self._lp().level_set_support(R, theta)
            if result is None:
                opt = self.opt_value()
                if R < opt - self.tol:
                    raise EmptyLevelSet(f"R = {R} below the optimum {opt}")
                result = self._lp().level_set_support(opt + self.tol, theta)
                if result is None:
                    raise SolverFailure(1, opt, "level-set program infeasible at the optimum")
            return result.value, result.endpoint

        return self._level_set_support_dual(R, theta)

    def _level_set_support_dual(self, R: float, theta: np.ndarray) -> tuple[float, np.ndarray]:
        """Support of the level set through the conjugate.

        h(theta) = min over lambda >= ||theta||_dual of lambda * (R - W*(theta / lambda)),
        a convex one-dimensional problem. The optimum multiplier is bracketed
        using W*(u) <= OPT - u . x_opt and ||x_opt|| <= OPT.
        """
        tag = self.instance.norm
        opt = self.opt_value()
        if R < opt - self.tol:
            raise EmptyLevelSet(f"R = {R} below the optimum {opt}")
        size = dual_norm(theta, tag)
        if size == 0.0:
            return 0.0, self.opt_result().endpoint.copy()

        def g(lam: float) -> float:
            return lam * (R - self.eval_conjugate(theta / lam).value)

        lam_min = size
        slack = max(R - opt, self.tol)
        lam_max = max(lam_min * (1.0 + 1e-9), (g(lam_min) + size * opt) / slack)
        search = minimize_scalar(g, bounds=(lam_min, lam_max), method="bounded", options={"xatol": self.tol * lam_min})
        lam = float(search.x)
        if g(lam_min) <= search.fun:
            lam = lam_min
        result = self.eval_conjugate(theta / lam)
        return lam * (R - result.value), result.endpoint
