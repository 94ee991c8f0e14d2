"""Exact linear-programming backend for the polyhedral norms.

The path y_1, ..., y_n of a prefix becomes n*d free variables. Each movement
||y_i - y_{i-1}|| gets either one absolute-value split per coordinate (l1) or
a single bound variable with two rows per coordinate (l-infinity). Function
requests add one epigraph variable above every affine piece; body requests
add their halfspace rows. All variables are free, so the HiGHS row marginals
alone give the dual objective and the gap is certified as
|primal - dual|.

**Usage:**
```python
program = PathProgram(instance.requests[:n], NormTag.LINF, instance.dim)
result = program.conjugate(np.array([0.5, 0.0]))
```
"""

import numpy as np
from scipy.optimize import linprog
from scipy.sparse import csr_matrix

from ..geometry.norm import NormTag
from .error import SolverFailure
from .request import Body, Func, Request
from .result import ConjugateResult

_LP_OPTIMAL = 0
_LP_INFEASIBLE = 2


class PathProgram:
    """Constraint rows of a prefix path, reusable across objectives."""

    def __init__(self, requests: tuple[Request, ...] | list[Request], norm: NormTag, dim: int) -> None:
        """Builds the rows shared by every query on the prefix.

        Args:
            requests: The prefix r_1, ..., r_n with n >= 1.
            norm: l1 or l-infinity.
            dim: Dimension d.

        Raises:
            ValueError: For the Euclidean norm, which has no LP encoding.
        """
        if norm is NormTag.EUCLIDEAN:
            raise ValueError("the Euclidean norm has no linear-programming encoding")
        self.norm = norm
        self.dim = dim
        self.length = len(requests)
        self._rows: list[int] = []
        self._cols: list[int] = []
        self._vals: list[float] = []
        self._rhs: list[float] = []
        self._num_vars = self.length * dim
        self._cost_cols: list[int] = []

        zero = np.zeros(dim)
        previous = (None, zero)
        for i, request in enumerate(requests):
            current = (self.path_cols(i + 1), zero)
            self._cost_cols += self.add_movement(current, previous)
            if isinstance(request, Body):
                self._add_body(self.path_cols(i + 1), request)
            elif isinstance(request, Func):
                self._cost_cols.append(self._add_epigraph(self.path_cols(i + 1), request))
            previous = current

    @property
    def num_vars(self) -> int:
        return self._num_vars

    @property
    def num_rows(self) -> int:
        return len(self._rhs)

    def path_cols(self, i: int) -> np.ndarray:
        """Columns of y_i, 1 <= i <= n."""
        start = (i - 1) * self.dim
        return np.arange(start, start + self.dim)

    def new_vars(self, count: int) -> np.ndarray:
        """Allocates free variables and returns their columns."""
        cols = np.arange(self._num_vars, self._num_vars + count)
        self._num_vars += count
        return cols

    def add_row(self, cols, vals, rhs: float) -> None:
        """Adds the row sum(vals * x[cols]) <= rhs."""
        row = len(self._rhs)
        for col, val in zip(cols, vals):
            self._rows.append(row)
            self._cols.append(int(col))
            self._vals.append(float(val))
        self._rhs.append(float(rhs))

    def add_movement(self, u: tuple[np.ndarray | None, np.ndarray], w: tuple[np.ndarray | None, np.ndarray]) -> list[int]:
        """Encodes ||u - w|| for two affine points.

        A point is (cols, const): the variables at ``cols`` plus the constant
        vector, or just the constant when cols is None.

        Returns:
            The columns whose sum bounds the movement from above.
        """
        u_cols, u_const = u
        w_cols, w_const = w
        offset = u_const - w_const
        if self.norm is NormTag.L1:
            bounds = self.new_vars(self.dim)
        else:
            bounds = np.repeat(self.new_vars(1), self.dim)
        for k in range(self.dim):
            cols: list[int] = []
            vals: list[float] = []
            if u_cols is not None:
                cols.append(u_cols[k])
                vals.append(1.0)
            if w_cols is not None:
                cols.append(w_cols[k])
                vals.append(-1.0)
            for sign in (1.0, -1.0):
                self.add_row(cols + [bounds[k]], [sign * v for v in vals] + [-1.0], -sign * offset[k])
        return sorted(set(int(c) for c in bounds))

    def _add_body(self, cols: np.ndarray, request: Body) -> None:
        P = request.polytope
        for a, b in zip(P.A, P.b):
            nonzero = np.flatnonzero(a)
            self.add_row(cols[nonzero], a[nonzero], b)

    def _add_epigraph(self, cols: np.ndarray, request: Func) -> int:
        f = request.function
        epigraph = int(self.new_vars(1)[0])
        for a, c in zip(f.gradients, f.intercepts):
            nonzero = np.flatnonzero(a)
            self.add_row(list(cols[nonzero]) + [epigraph], list(a[nonzero]) + [-1.0], -c)
        return epigraph

    def _solve(self, objective: np.ndarray) -> tuple[object, np.ndarray]:
        """Runs HiGHS on the accumulated rows.

        Returns:
            The scipy result and the right-hand side used.
        """
        A = csr_matrix((self._vals, (self._rows, self._cols)), shape=(self.num_rows, self._num_vars))
        b = np.array(self._rhs)
        res = linprog(objective, A_ub=A, b_ub=b, bounds=(None, None), method="highs")
        return res, b

    def _objective(self) -> np.ndarray:
        c = np.zeros(self._num_vars)
        c[self._cost_cols] += 1.0
        return c

    @staticmethod
    def _certified(res, b: np.ndarray, cols: np.ndarray, sign: float = 1.0) -> ConjugateResult:
        """Packs an optimal HiGHS result with its primal-dual gap.

        Raises:
            SolverFailure: If HiGHS did not report an optimum.
        """
        if res.status != _LP_OPTIMAL:
            raise SolverFailure(int(getattr(res, "nit", 0)), float("nan"), f"path program failed: {res.message}")
        dual_objective = float(b @ res.ineqlin.marginals)
        return ConjugateResult(sign * float(res.fun), np.array(res.x[cols]), abs(float(res.fun) - dual_objective))

    def conjugate(self, v: np.ndarray) -> ConjugateResult:
        """Solves min over paths of cost - v . y_n.

        Args:
            v: A point of the dual unit ball.

        Returns:
            W*_n(v) with the conjugate point as endpoint.
        """
        c = self._objective()
        last = self.path_cols(self.length)
        c[last] -= v
        res, b = self._solve(c)
        return self._certified(res, b, last)

    def work(self, x: np.ndarray) -> ConjugateResult:
        """Solves min over paths of cost + ||x - y_n||.

        The trailing movement rows go into a copy so the prefix rows can be
        reused.
        """
        program = self._copy()
        last = program.path_cols(program.length)
        program._cost_cols += program.add_movement((None, x), (last, np.zeros(self.dim)))
        res, b = program._solve(program._objective())
        return self._certified(res, b, last)

    def level_set_support(self, R: float, theta: np.ndarray) -> ConjugateResult | None:
        """Solves max theta . x subject to a path of total cost <= R ending at x.

        Returns:
            The support value with the maximizing x as endpoint, or None when
            no path is cheap enough.
        """
        program = self._copy()
        x_cols = program.new_vars(self.dim)
        trailing = program.add_movement((x_cols, np.zeros(self.dim)), (program.path_cols(program.length), np.zeros(self.dim)))
        budget = program._cost_cols + trailing
        program.add_row(budget, [1.0] * len(budget), R)
        c = np.zeros(program._num_vars)
        c[x_cols] = -theta
        res, b = program._solve(c)
        if res.status == _LP_INFEASIBLE:
            return None
        return self._certified(res, b, x_cols, sign=-1.0)

    def _copy(self) -> "PathProgram":
        clone = object.__new__(PathProgram)
        clone.norm = self.norm
        clone.dim = self.dim
        clone.length = self.length
        clone._rows = list(self._rows)
        clone._cols = list(self._cols)
        clone._vals = list(self._vals)
        clone._rhs = list(self._rhs)
        clone._num_vars = self._num_vars
        clone._cost_cols = list(self._cost_cols)
        return clone
