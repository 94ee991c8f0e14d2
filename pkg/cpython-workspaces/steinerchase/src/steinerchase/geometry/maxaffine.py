"""Convex functions given as the pointwise maximum of affine pieces.

f(x) = max_i (a_i . x + c_i). As a chasing request the function must be
nonnegative, which is guaranteed by carrying the zero piece (a = 0, c = 0).
"""

import numpy as np

from ..error import ValidationError
from .norm import as_vector


class MaxAffine:
    """A max-affine function with pieces stored as a gradient matrix and intercepts."""

    def __init__(self, gradients, intercepts, require_zero_piece: bool = True, field: str = "func") -> None:
        """Initialize the function.

        Args:
            gradients: Piece gradients, shape (k, d), k >= 1.
            intercepts: Piece intercepts, shape (k,).
            require_zero_piece: Reject functions without the (0, 0) piece.
            field: Name used in diagnostics.

        Raises:
            ValidationError: If the arrays are malformed, not finite, or the zero piece is missing.
        """
        G = np.array(gradients, dtype=np.float64)
        c = np.array(intercepts, dtype=np.float64)
        if G.ndim != 2 or G.shape[0] == 0 or G.shape[1] == 0:
            raise ValidationError(f"gradients must be a nonempty matrix, got shape {G.shape}", field=f"{field}.pieces")
        if c.shape != (G.shape[0],):
            raise ValidationError(f"need {G.shape[0]} intercepts, got shape {c.shape}", field=f"{field}.pieces")
        if not (np.all(np.isfinite(G)) and np.all(np.isfinite(c))):
            raise ValidationError("entries must be finite", field=f"{field}.pieces")
        G.setflags(write=False)
        c.setflags(write=False)
        self._gradients = G
        self._intercepts = c
        if require_zero_piece and not self.has_zero_piece:
            raise ValidationError("request functions need the zero piece (0, 0) to stay nonnegative", field=f"{field}.pieces")

    @classmethod
    def from_pieces(cls, pieces, require_zero_piece: bool = True) -> "MaxAffine":
        """Builds a function from rows [a_1, ..., a_d, c]."""
        rows = np.array(pieces, dtype=np.float64)
        if rows.ndim != 2 or rows.shape[1] < 2:
            raise ValidationError(f"pieces must be rows of length d + 1, got shape {rows.shape}", field="pieces")
        return cls(rows[:, :-1], rows[:, -1], require_zero_piece=require_zero_piece)

    @property
    def gradients(self) -> np.ndarray:
        return self._gradients

    @property
    def intercepts(self) -> np.ndarray:
        return self._intercepts

    @property
    def dim(self) -> int:
        return self._gradients.shape[1]

    @property
    def pieces(self) -> np.ndarray:
        """Rows [a_1, ..., a_d, c], the on-disk layout."""
        return np.column_stack([self._gradients, self._intercepts])

    @property
    def has_zero_piece(self) -> bool:
        """Whether some piece is identically zero."""
        zero_rows = ~np.any(self._gradients, axis=1) & (self._intercepts == 0.0)
        return bool(np.any(zero_rows))

    def __call__(self, x: np.ndarray) -> float:
        return float(np.max(self._gradients @ x + self._intercepts))

    def evaluate_many(self, X: np.ndarray) -> np.ndarray:
        """Evaluates f at every row of X."""
        return np.max(X @ self._gradients.T + self._intercepts, axis=1)

    def eval_subgrad(self, x) -> tuple[float, np.ndarray]:
        """Evaluates f and a subgradient at x.

        Args:
            x: The point.

        Returns:
            The value and the gradient of the lowest-index active piece.
        """
        x = as_vector(x, dim=self.dim, field="x")
        values = self._gradients @ x + self._intercepts
        i = int(np.argmax(values))
        return float(values[i]), self._gradients[i].copy()

    def scaled(self, weight: float) -> "MaxAffine":
        """Returns weight * f; weight must be positive."""
        if not weight > 0.0:
            raise ValidationError(f"weight must be positive, got {weight}", field="weight")
        return MaxAffine(
            weight * self._gradients,
            weight * self._intercepts,
            require_zero_piece=False,
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MaxAffine):
            return NotImplemented
        return np.array_equal(self._gradients, other._gradients) and np.array_equal(self._intercepts, other._intercepts)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"MaxAffine(dim={self.dim}, pieces={self._gradients.shape[0]})"


def maxaffine_eval_subgrad(f: MaxAffine, x) -> tuple[float, np.ndarray]:
    """Module-level form of MaxAffine.eval_subgrad."""
    return f.eval_subgrad(x)
