"""Convex bodies as finite intersections of halfspaces.

An HPolytope is certified at construction: a Chebyshev-center linear program
proves it is nonempty and one support program per axis direction proves it is
bounded, giving a bounding box and an enclosing radius. Support functions and
Euclidean projections are then well defined.

Axis-aligned boxes skip the programs and get closed-form support and
projection.

**Usage:**
```python
square = HPolytope.box([-1.0, -1.0], [1.0, 1.0])
value, witness = support(square, np.array([1.0, 1.0]))   # 2.0, (1, 1)
euclid_project(np.array([3.0, 0.0]), square)             # (1, 0)
```
"""

from functools import cached_property

import numpy as np
from scipy.optimize import linprog

from ..error import SolverError, ValidationError
from .error import InfeasibleBodyError, MaxIterationsError, UnboundedBodyError
from .norm import NormTag, as_vector, norm

# LP status codes reported by scipy.optimize.linprog
_LP_OPTIMAL = 0
_LP_INFEASIBLE = 2
_LP_UNBOUNDED = 3

# relative slack allowed on the certified radius before a support query is rejected
_RADIUS_SLACK = 1e-6


class Halfspace:
    """The halfspace {x : normal . x <= offset}."""

    def __init__(self, normal, offset: float) -> None:
        """Initialize the halfspace.

        Args:
            normal: The outward normal a; must be nonzero.
            offset: The offset b.

        Raises:
            ValidationError: If the normal is zero or an entry is not finite.
        """
        self._normal = as_vector(normal, field="normal")
        if not np.any(self._normal):
            raise ValidationError("halfspace normal must be nonzero", field="normal")
        if not np.isfinite(offset):
            raise ValidationError("halfspace offset must be finite", field="offset")
        self._offset = float(offset)

    @property
    def normal(self) -> np.ndarray:
        """The outward normal a."""
        return self._normal

    @property
    def offset(self) -> float:
        """The offset b."""
        return self._offset

    def contains(self, x: np.ndarray, tol: float = 0.0) -> bool:
        """Whether a . x <= b + tol."""
        return float(self._normal @ x) <= self._offset + tol


class HPolytope:
    """A feasible, bounded polytope {x : A x <= b}."""

    def __init__(self, A, b, field: str = "body") -> None:
        """Build and certify the polytope.

        Args:
            A: Row-stacked normals, shape (m, d), m >= 1.
            b: Offsets, shape (m,).
            field: Name used in diagnostics.

        Raises:
            ValidationError: If the arrays are malformed, a normal is zero, or an entry is not finite.
            InfeasibleBodyError: If the halfspaces have no common point.
            UnboundedBodyError: If the intersection is unbounded.
        """
        A = np.array(A, dtype=np.float64)
        b = np.array(b, dtype=np.float64)
        if A.ndim != 2 or A.shape[0] == 0 or A.shape[1] == 0:
            raise ValidationError(f"A must be a nonempty matrix, got shape {A.shape}", field=f"{field}.A")
        if b.shape != (A.shape[0],):
            raise ValidationError(f"b must have length {A.shape[0]}, got shape {b.shape}", field=f"{field}.b")
        if not (np.all(np.isfinite(A)) and np.all(np.isfinite(b))):
            raise ValidationError("entries must be finite", field=field)
        if np.any(~np.any(A, axis=1)):
            raise ValidationError("halfspace normals must be nonzero", field=f"{field}.A")

        self._A = A
        self._b = b
        self._A.setflags(write=False)
        self._b.setflags(write=False)
        self._box = self._axis_bounds()
        if self._box is not None:
            lo, hi = self._box
            if np.any(lo > hi):
                raise InfeasibleBodyError(field=field)
            self._cheb_center = (lo + hi) / 2.0
            self._cheb_radius = float(np.min(hi - lo) / 2.0)
            self._lo, self._hi = lo, hi
        else:
            self._cheb_radius, self._cheb_center = self._certify_feasible(field)
            self._lo, self._hi = self._certify_bounded(field)
        self._lo.setflags(write=False)
        self._hi.setflags(write=False)

    @classmethod
    def box(cls, lo, hi) -> "HPolytope":
        """Builds the axis-aligned box [lo, hi].

        Args:
            lo: Lower corner.
            hi: Upper corner; lo <= hi coordinate-wise (equality gives a flat box).

        Returns:
            The box as an HPolytope.
        """
        lo = as_vector(lo, field="lo")
        hi = as_vector(hi, dim=lo.shape[0], field="hi")
        eye = np.eye(lo.shape[0])
        return cls(np.vstack([eye, -eye]), np.concatenate([hi, -lo]))

    @classmethod
    def from_halfspaces(cls, halfspaces: list[Halfspace]) -> "HPolytope":
        """Builds the intersection of a list of halfspaces."""
        if not halfspaces:
            raise ValidationError("need at least one halfspace", field="halfspaces")
        A = np.vstack([h.normal for h in halfspaces])
        b = np.array([h.offset for h in halfspaces])
        return cls(A, b)

    def _axis_bounds(self) -> tuple[np.ndarray, np.ndarray] | None:
        """Reads box bounds off the rows when every normal is a scaled basis vector.

        Returns:
            (lo, hi) when the polytope is an axis-aligned box, else None. Boxes
            missing a bound on some axis are left to the LP certificate.
        """
        nonzero = self._A != 0.0
        if np.any(nonzero.sum(axis=1) != 1):
            return None
        d = self._A.shape[1]
        lo = np.full(d, -np.inf)
        hi = np.full(d, np.inf)
        for row, offset in zip(self._A, self._b):
            k = int(np.flatnonzero(row)[0])
            scaled = offset / row[k]
            if row[k] > 0:
                hi[k] = min(hi[k], scaled)
            else:
                lo[k] = max(lo[k], scaled)
        if not (np.all(np.isfinite(lo)) and np.all(np.isfinite(hi))):
            return None
        return lo, hi

    def _certify_feasible(self, field: str) -> tuple[float, np.ndarray]:
        """Solves the Chebyshev-center program max r s.t. a.c + r||a|| <= b.

        Returns:
            The Chebyshev radius (0 for bodies with empty interior) and center.
        """
        d = self.dim
        row_norms = np.linalg.norm(self._A, axis=1)
        c = np.zeros(d + 1)
        c[-1] = -1.0
        res = linprog(
            c,
            A_ub=np.column_stack([self._A, row_norms]),
            b_ub=self._b,
            bounds=[(None, None)] * d + [(0.0, None)],
            method="highs",
        )
        if res.status == _LP_INFEASIBLE:
            raise InfeasibleBodyError(field=field)
        if res.status == _LP_UNBOUNDED:
            raise UnboundedBodyError("contains arbitrarily large balls", field=field)
        if res.status != _LP_OPTIMAL:
            raise SolverError(f"Chebyshev-center program failed: {res.message}")
        return float(res.x[-1]), np.array(res.x[:-1])

    def _certify_bounded(self, field: str) -> tuple[np.ndarray, np.ndarray]:
        """Solves one support program per signed axis direction.

        Returns:
            The bounding box (lo, hi).
        """
        d = self.dim
        lo = np.empty(d)
        hi = np.empty(d)
        for k in range(d):
            for sign in (1.0, -1.0):
                c = np.zeros(d)
                c[k] = -sign
                res = linprog(c, A_ub=self._A, b_ub=self._b, bounds=[(None, None)] * d, method="highs")
                if res.status == _LP_UNBOUNDED:
                    raise UnboundedBodyError(f"unbounded along axis {k}", field=field)
                if res.status != _LP_OPTIMAL:
                    raise SolverError(f"bounding program failed: {res.message}")
                if sign > 0:
                    hi[k] = res.x[k]
                else:
                    lo[k] = res.x[k]
        return lo, hi

    @property
    def A(self) -> np.ndarray:
        """Row-stacked halfspace normals (read-only)."""
        return self._A

    @property
    def b(self) -> np.ndarray:
        """Halfspace offsets (read-only)."""
        return self._b

    @property
    def dim(self) -> int:
        """Ambient dimension d."""
        return self._A.shape[1]

    @property
    def halfspaces(self) -> list[Halfspace]:
        """The halfspaces as objects."""
        return [Halfspace(a, b) for a, b in zip(self._A, self._b)]

    @property
    def is_box(self) -> bool:
        """Whether every normal is a scaled basis vector."""
        return self._box is not None

    @property
    def bounding_box(self) -> tuple[np.ndarray, np.ndarray]:
        """The certified bounding box (lo, hi)."""
        return self._lo, self._hi

    @property
    def radius(self) -> float:
        """Euclidean radius of a ball about the origin containing the body."""
        return float(np.linalg.norm(np.maximum(np.abs(self._lo), np.abs(self._hi))))

    @property
    def chebyshev_center(self) -> np.ndarray:
        """Center of a largest inscribed Euclidean ball."""
        return self._cheb_center

    @property
    def chebyshev_radius(self) -> float:
        """Radius of a largest inscribed Euclidean ball (0 for flat bodies)."""
        return self._cheb_radius

    def circumradius(self, tag: NormTag) -> float:
        """Upper bound on max ||x|| over the body, in the given norm.

        All three norms are monotone in the coordinate magnitudes, so the
        farthest bounding-box corner bounds every point.
        """
        return norm(np.maximum(np.abs(self._lo), np.abs(self._hi)), tag)

    def violation(self, x: np.ndarray) -> float:
        """Largest row violation max_i (a_i . x - b_i), clipped at zero."""
        return float(max(0.0, np.max(self._A @ x - self._b)))

    def contains(self, x: np.ndarray, tol: float = 0.0) -> bool:
        """Whether every row holds within tol."""
        return bool(np.all(self._A @ x <= self._b + tol))

    def translate(self, shift) -> "HPolytope":
        """Returns the body moved by a vector."""
        shift = as_vector(shift, dim=self.dim, field="shift")
        return HPolytope(self._A, self._b + self._A @ shift)

    def polygon(self) -> np.ndarray:
        """Vertices of a planar body in counter-clockwise order.

        Flat bodies give two vertices (a segment) or one (a point).

        Returns:
            Array of shape (k, 2).

        Raises:
            ValidationError: If the body is not two-dimensional.
        """
        if self.dim != 2:
            raise ValidationError(f"polygon needs d = 2, got {self.dim}", field="body")
        points = []
        m = self._A.shape[0]
        for i in range(m):
            for j in range(i + 1, m):
                M = self._A[[i, j]]
                if abs(np.linalg.det(M)) < 1e-12:
                    continue
                p = np.linalg.solve(M, self._b[[i, j]])
                if self.contains(p, tol=1e-9):
                    points.append(p)
        if not points:
            return self._cheb_center.reshape(1, 2)
        pts = np.unique(np.round(np.array(points), 12), axis=0)
        centroid = pts.mean(axis=0)
        angles = np.arctan2(pts[:, 1] - centroid[1], pts[:, 0] - centroid[0])
        return pts[np.argsort(angles, kind="stable")]

    @cached_property
    def _equality_slice(self) -> tuple[np.ndarray, np.ndarray] | None:
        """Detects bodies that are affine slices given by at most two opposing row pairs.

        Returns:
            (E, f) with the body equal to {x : E x = f}, else None.
        """
        m = self._A.shape[0]
        if m % 2 != 0 or m > 4:
            return None
        unit = self._A / np.linalg.norm(self._A, axis=1)[:, None]
        scaled_b = self._b / np.linalg.norm(self._A, axis=1)
        unused = list(range(m))
        rows, rhs = [], []
        while unused:
            i = unused.pop(0)
            partner = None
            for j in unused:
                if np.allclose(unit[i], -unit[j], atol=1e-12) and abs(scaled_b[i] + scaled_b[j]) <= 1e-12:
                    partner = j
                    break
            if partner is None:
                return None
            unused.remove(partner)
            rows.append(unit[i])
            rhs.append(scaled_b[i])
        E = np.array(rows)
        if np.linalg.matrix_rank(E) != E.shape[0]:
            return None
        return E, np.array(rhs)

    def __eq__(self, other: object) -> bool:
        """Equal when the halfspace rows are identical, in order."""
        if not isinstance(other, HPolytope):
            return NotImplemented
        return np.array_equal(self._A, other._A) and np.array_equal(self._b, other._b)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        """Short description with the bounding box."""
        return f"HPolytope(dim={self.dim}, rows={self._A.shape[0]}, lo={self._lo.tolist()}, hi={self._hi.tolist()})"


def support(P: HPolytope, theta: np.ndarray) -> tuple[float, np.ndarray]:
    """Computes the support function h_P(theta) = max_{x in P} theta . x.

    Args:
        P: The body.
        theta: The direction.

    Returns:
        The value and a maximizing point of P.

    Raises:
        UnboundedBodyError: If the maximizer leaves the certified ball.
        SolverError: If the linear program fails.
    """
    theta = np.asarray(theta, dtype=np.float64)
    if P.is_box:
        lo, hi = P.bounding_box
        witness = np.where(theta >= 0.0, hi, lo)
        return float(theta @ witness), witness

    res = linprog(-theta, A_ub=P.A, b_ub=P.b, bounds=[(None, None)] * P.dim, method="highs")
    if res.status == _LP_UNBOUNDED:
        raise UnboundedBodyError("support program is unbounded")
    if res.status != _LP_OPTIMAL:
        raise SolverError(f"support program failed: {res.message}")
    witness = np.array(res.x)
    if np.linalg.norm(witness) > P.radius * (1.0 + _RADIUS_SLACK) + _RADIUS_SLACK:
        raise UnboundedBodyError("support witness outside the certified radius")
    return float(theta @ witness), witness


def euclid_project(
    x: np.ndarray,
    P: HPolytope,
    tol: float = 1e-9,
    max_iterations: int = 20000,
    feasibility_tol: float = 1e-7,
) -> np.ndarray:
    """Euclidean projection of x onto P.

    Members come back unchanged. Boxes are clipped, affine slices of at most
    two opposing row pairs are projected in closed form, a single violated row
    whose projection lands in P is used directly, and everything else goes
    through Dykstra's alternating projections over the rows.

    Args:
        x: The point.
        P: The body.
        tol: Stop when a full sweep moves the iterate less than this.
        max_iterations: Cap on Dykstra sweeps.
        feasibility_tol: Slack allowed on every row of the result.

    Returns:
        The projected point.

    Raises:
        MaxIterationsError: If Dykstra's method does not converge.
    """
    x = np.asarray(x, dtype=np.float64)
    if P.contains(x):
        return x.copy()
    if P.is_box:
        lo, hi = P.bounding_box
        return np.clip(x, lo, hi)

    slice_ = P._equality_slice
    if slice_ is not None:
        E, f = slice_
        return x - E.T @ np.linalg.solve(E @ E.T, E @ x - f)

    A, b = P.A, P.b
    row_sq = np.einsum("ij,ij->i", A, A)
    excess = A @ x - b
    for i in np.argsort(-excess, kind="stable"):
        if excess[i] <= 0.0:
            break
        candidate = x - (excess[i] / row_sq[i]) * A[i]
        if P.contains(candidate, tol=feasibility_tol):
            return candidate

    return _dykstra(x, A, b, row_sq, tol, max_iterations, feasibility_tol)


def _dykstra(
    x: np.ndarray,
    A: np.ndarray,
    b: np.ndarray,
    row_sq: np.ndarray,
    tol: float,
    max_iterations: int,
    feasibility_tol: float,
) -> np.ndarray:
    """Dykstra's alternating projection onto the intersection of halfspaces."""
    y = x.copy()
    increments = np.zeros_like(A)
    for _ in range(max_iterations):
        previous = y.copy()
        for i in range(A.shape[0]):
            z = y + increments[i]
            excess = A[i] @ z - b[i]
            y = z - (excess / row_sq[i]) * A[i] if excess > 0.0 else z
            increments[i] = z - y
        if np.linalg.norm(y - previous) <= tol and np.max(A @ y - b) <= feasibility_tol:
            return y
    raise MaxIterationsError(f"projection did not converge in {max_iterations} sweeps")


def is_subset(inner: HPolytope, outer: HPolytope, tol: float = 1e-9) -> bool:
    """Whether inner lies in outer, checked as h_inner(a) <= b + tol for every row a . x <= b of outer."""
    return all(support(inner, a)[0] <= b + tol for a, b in zip(outer.A, outer.b))
