"""Norms on R^d and their duals.

Three ambient norms are supported natively: Euclidean, l-infinity and l1.
Vectors are 1-D float64 numpy arrays throughout the package.

**Usage:**
```python
norm(np.array([3.0, -4.0]), NormTag.LINF)   # 4.0
NormTag.LINF.dual                            # NormTag.L1
```
"""

from enum import Enum

import numpy as np

from ..error import ValidationError


class NormTag(Enum):
    """The ambient norm of an instance. Values are the on-disk names."""

    EUCLIDEAN = "l2"
    LINF = "linf"
    L1 = "l1"

    @property
    def dual(self) -> "NormTag":
        """The dual norm: l2 is self-dual, linf and l1 are dual to each other."""
        return _DUALS[self]

    @classmethod
    def parse(cls, name: str) -> "NormTag":
        """Parses an on-disk or CLI norm name.

        Args:
            name: "l2", "linf" or "l1" (case-insensitive).

        Returns:
            The matching tag.

        Raises:
            ValidationError: If the name is not a supported norm.
        """
        try:
            return cls(name.lower())
        except ValueError as e:
            raise ValidationError(f"unknown norm {name!r}", field="norm") from e


_DUALS = {
    NormTag.EUCLIDEAN: NormTag.EUCLIDEAN,
    NormTag.LINF: NormTag.L1,
    NormTag.L1: NormTag.LINF,
}

_ORDERS = {NormTag.EUCLIDEAN: 2, NormTag.LINF: np.inf, NormTag.L1: 1}


def as_vector(values, dim: int | None = None, field: str = "vector") -> np.ndarray:
    """Converts input to a finite 1-D float64 vector.

    Args:
        values: Anything numpy can turn into a 1-D array.
        dim: Required length, if any.
        field: Name used in diagnostics.

    Returns:
        A new float64 array.

    Raises:
        ValidationError: If the input is not 1-D, has the wrong length, or is not finite.
    """
    vector = np.array(values, dtype=np.float64)
    if vector.ndim != 1:
        raise ValidationError(f"expected a 1-D vector, got shape {vector.shape}", field=field)
    if dim is not None and vector.shape[0] != dim:
        raise ValidationError(f"expected dimension {dim}, got {vector.shape[0]}", field=field)
    if not np.all(np.isfinite(vector)):
        raise ValidationError("entries must be finite", field=field)
    return vector


def norm(v: np.ndarray, tag: NormTag) -> float:
    """Evaluates ||v|| under the given norm.

    Args:
        v: The vector.
        tag: The norm.

    Returns:
        The norm, nonnegative and zero only at the origin.
    """
    return float(np.linalg.norm(v, ord=_ORDERS[tag]))


def dual_norm(v: np.ndarray, tag: NormTag) -> float:
    """Evaluates the dual norm of v, i.e. the norm of ``tag.dual``."""
    return norm(v, tag.dual)


def norm_subgradient(u: np.ndarray, tag: NormTag) -> np.ndarray:
    """Returns a subgradient of ||.|| at u.

    The result has dual norm at most one. At the origin it is the zero vector;
    on l-infinity ties the lowest index wins.

    Args:
        u: The point.
        tag: The norm.

    Returns:
        A subgradient vector.
    """
    g = np.zeros_like(u, dtype=np.float64)
    if not np.any(u):
        return g
    if tag is NormTag.EUCLIDEAN:
        return u / np.linalg.norm(u)
    if tag is NormTag.L1:
        return np.sign(u).astype(np.float64)
    k = int(np.argmax(np.abs(u)))
    g[k] = np.sign(u[k])
    return g


def dual_maximizer(theta: np.ndarray, tag: NormTag) -> np.ndarray:
    """Returns u with ||u|| = 1 and theta . u = ||theta||_dual.

    This is the support point of the unit ball in direction theta. At theta = 0
    every unit vector works; the first basis vector is returned.

    Args:
        theta: The direction.
        tag: The ambient norm.

    Returns:
        A unit vector of the ambient norm.
    """
    u = np.zeros_like(theta, dtype=np.float64)
    if not np.any(theta):
        u[0] = 1.0
        return u
    if tag is NormTag.EUCLIDEAN:
        return theta / np.linalg.norm(theta)
    if tag is NormTag.LINF:
        # theta = 0 coordinates may take any value in [-1, 1]; pick +1
        return np.where(theta >= 0.0, 1.0, -1.0)
    k = int(np.argmax(np.abs(theta)))
    u[k] = np.sign(theta[k])
    return u
