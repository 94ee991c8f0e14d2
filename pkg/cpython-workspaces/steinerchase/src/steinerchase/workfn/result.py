"""Result type shared by the path-program backends."""

import numpy as np


class ConjugateResult:
    """The value, optimal endpoint and optimality gap of one path program.

    For a conjugate query the value is W*_n(v) and the endpoint is the
    conjugate point v*; for a work query the value is W_n(x) and the endpoint
    is the last path point y_n.
    """

    __slots__ = ("value", "endpoint", "gap")

    def __init__(self, value: float, endpoint: np.ndarray, gap: float) -> None:
        self.value = float(value)
        self.endpoint = endpoint
        self.gap = max(0.0, float(gap))

    def __repr__(self) -> str:
        return f"ConjugateResult(value={self.value:.9g}, endpoint={self.endpoint.tolist()}, gap={self.gap:.3g})"
