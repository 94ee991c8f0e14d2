"""Projected-subgradient backend, used for the Euclidean norm.

The path Y = (y_1, ..., y_n) is optimized directly: body requests are kept as
hard constraints by projecting each y_i onto K_i after every step, function
requests contribute their max-affine subgradients, and movement terms
contribute norm subgradients to both endpoints of each leg.

Steps follow Polyak's rule against the moving target f_best - delta. When
patience runs out without reaching f_best - delta / 2, the iterate average of
the epoch is tried, delta halves, and the search restarts from the best path.
The solve ends once delta falls below tol * (1 + |f_best|); that final delta is
reported as the (estimated) gap.

A body whose projection does not converge is switched to an exact-penalty
term, three times its largest normalized row violation.
"""

import numpy as np

from ..config.solver import SolverConfig
from ..geometry.error import MaxIterationsError
from ..geometry.norm import NormTag, norm_subgradient
from ..geometry.polytope import euclid_project
from ..logger import Logger
from .error import SolverFailure
from .request import Body, Func, Request
from .result import ConjugateResult

PATIENCE = 25
PENALTY_WEIGHT = 3.0

_ORDERS = {NormTag.EUCLIDEAN: 2, NormTag.LINF: np.inf, NormTag.L1: 1}


def _row_subgradients(D: np.ndarray, norm: NormTag) -> np.ndarray:
    """Subgradients of ||.|| at every row of D (zero rows get zero)."""
    if norm is NormTag.EUCLIDEAN:
        lengths = np.linalg.norm(D, axis=1)
        safe = np.where(lengths > 0.0, lengths, 1.0)
        return np.where(lengths[:, None] > 0.0, D / safe[:, None], 0.0)
    if norm is NormTag.L1:
        return np.sign(D)
    U = np.zeros_like(D)
    rows = np.arange(D.shape[0])
    k = np.argmax(np.abs(D), axis=1)
    U[rows, k] = np.sign(D[rows, k])
    return U


class SubgradientPath:
    """Minimizes path objectives over one prefix."""

    def __init__(
        self,
        logger: Logger,
        requests: tuple[Request, ...] | list[Request],
        norm: NormTag,
        dim: int,
        solver: SolverConfig,
    ) -> None:
        """Initialize the solver.

        Args:
            logger: Logger for solve summaries.
            requests: The prefix r_1, ..., r_n with n >= 1.
            norm: The ambient norm.
            dim: Dimension d.
            solver: Tolerances and iteration caps.
        """
        self._log = logger
        self._requests = tuple(requests)
        self._norm = norm
        self._dim = dim
        self._solver = solver
        self._tol = solver.tolerance(norm)
        self._penalized: set[int] = set()

    @property
    def penalized(self) -> frozenset[int]:
        """Indices of bodies handled by the penalty fallback."""
        return frozenset(self._penalized)

    def initial_path(self, warm: np.ndarray | None = None) -> np.ndarray:
        """Builds a feasible starting path.

        A warm start from this prefix or a shorter one is kept and extended by
        the greedy rule: project the previous point onto each body and stay
        put on functions.
        """
        n = len(self._requests)
        Y = np.zeros((n, self._dim))
        start = 0
        if warm is not None and warm.ndim == 2 and warm.shape[1] == self._dim and warm.shape[0] <= n:
            start = warm.shape[0]
            Y[:start] = warm
        for i in range(start, n):
            Y[i] = self._project_block(i, Y[i - 1] if i > 0 else np.zeros(self._dim))
        return self._project(Y)

    def _project_block(self, i: int, y: np.ndarray) -> np.ndarray:
        """Projects one path point onto its body, if it has one."""
        request = self._requests[i]
        if not isinstance(request, Body) or i in self._penalized:
            return y
        try:
            return euclid_project(
                y,
                request.polytope,
                tol=self._solver.projection_tol,
                max_iterations=self._solver.projection_max_iterations,
                feasibility_tol=self._solver.feasibility_tol,
            )
        except MaxIterationsError as e:
            self._log.warning("Projection failed, switching body to penalty", request=i, err=e)
            self._penalized.add(i)
            return y

    def _project(self, Y: np.ndarray) -> np.ndarray:
        """Projects every body coordinate block onto its body."""
        return np.vstack([self._project_block(i, Y[i]) for i in range(Y.shape[0])])

    def _path_cost(self, Y: np.ndarray) -> float:
        """Movement plus service plus penalties; the terminal term is added by callers."""
        D = np.diff(Y, axis=0, prepend=np.zeros((1, self._dim)))
        total = float(np.sum(np.linalg.norm(D, ord=_ORDERS[self._norm], axis=1)))
        for i, request in enumerate(self._requests):
            if isinstance(request, Func):
                total += request.function(Y[i])
            elif i in self._penalized:
                total += PENALTY_WEIGHT * self._normalized_violation(request, Y[i])[0]
        return total

    def _path_gradient(self, Y: np.ndarray) -> np.ndarray:
        D = np.diff(Y, axis=0, prepend=np.zeros((1, self._dim)))
        U = _row_subgradients(D, self._norm)
        G = U.copy()
        G[:-1] -= U[1:]
        for i, request in enumerate(self._requests):
            if isinstance(request, Func):
                G[i] += request.function.eval_subgrad(Y[i])[1]
            elif i in self._penalized:
                violation, row = self._normalized_violation(request, Y[i])
                if violation > 0.0:
                    G[i] += PENALTY_WEIGHT * row
        return G

    @staticmethod
    def _normalized_violation(request: Body, y: np.ndarray) -> tuple[float, np.ndarray]:
        """Largest (a.y - b)/||a|| over the rows, clipped at zero, with its unit row."""
        P = request.polytope
        lengths = np.linalg.norm(P.A, axis=1)
        scaled = (P.A @ y - P.b) / lengths
        k = int(np.argmax(scaled))
        return max(0.0, float(scaled[k])), P.A[k] / lengths[k]

    def conjugate(self, v: np.ndarray, warm: np.ndarray | None = None) -> tuple[ConjugateResult, np.ndarray]:
        """Minimizes cost - v . y_n.

        Returns:
            The result and the optimal path (for warm starts).
        """

        def value(Y: np.ndarray) -> float:
            return self._path_cost(Y) - float(v @ Y[-1])

        def gradient(Y: np.ndarray) -> np.ndarray:
            G = self._path_gradient(Y)
            G[-1] -= v
            return G

        return self._minimize(value, gradient, self.initial_path(warm), "conjugate")

    def work(self, x: np.ndarray, warm: np.ndarray | None = None) -> tuple[ConjugateResult, np.ndarray]:
        """Minimizes cost + ||x - y_n||."""
        order = _ORDERS[self._norm]

        def value(Y: np.ndarray) -> float:
            return self._path_cost(Y) + float(np.linalg.norm(x - Y[-1], ord=order))

        def gradient(Y: np.ndarray) -> np.ndarray:
            G = self._path_gradient(Y)
            G[-1] += norm_subgradient(Y[-1] - x, self._norm)
            return G

        return self._minimize(value, gradient, self.initial_path(warm), "work")

    def _minimize(self, value, gradient, Y: np.ndarray, kind: str) -> tuple[ConjugateResult, np.ndarray]:
        f = value(Y)
        best_f, best_Y = f, Y.copy()
        delta = 0.5 * (1.0 + abs(f))
        stall = 0
        epoch_sum = np.zeros_like(Y)
        epoch_count = 0

        for iteration in range(1, self._solver.max_iterations + 1):
            g = gradient(Y)
            g_sq = float(np.sum(g * g))
            if g_sq == 0.0:
                self._log.debug("Subgradient vanished", kind=kind, iterations=iteration, value=best_f)
                return ConjugateResult(best_f, best_Y[-1].copy(), 0.0), best_Y

            step = (f - (best_f - delta)) / g_sq
            Y = self._project(Y - step * g)
            f = value(Y)
            epoch_sum += Y
            epoch_count += 1

            if f < best_f - delta / 2.0:
                stall = 0
            else:
                stall += 1
            if f < best_f:
                best_f, best_Y = f, Y.copy()

            if stall < PATIENCE:
                continue

            # the epoch average stays feasible for every projected body
            average = epoch_sum / epoch_count
            f_average = value(average)
            if f_average < best_f:
                best_f, best_Y = f_average, average
            delta /= 2.0
            stall = 0
            epoch_sum[:] = 0.0
            epoch_count = 0
            Y, f = best_Y.copy(), best_f
            if delta <= self._tol * (1.0 + abs(best_f)):
                self._log.debug("Subgradient solve converged", kind=kind, iterations=iteration, value=best_f, gap=delta)
                return ConjugateResult(best_f, best_Y[-1].copy(), delta), best_Y

        raise SolverFailure(self._solver.max_iterations, best_f)
