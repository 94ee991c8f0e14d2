"""This protocol specifies the interface that every online chasing algorithm
must adhere to, so the harness can drive any of them the same way.
"""

import numpy as np

from ..chasers.result import StepResult
from ..workfn.request import Request


class ChaserProto:
    """Protocol defining the interface for a chaser."""

    @property
    def position(self) -> np.ndarray:
        """The current position x_n (the origin before the first request)."""
        ...

    def step(self, request: Request) -> StepResult:
        """Serves one request.

        Args:
            request: The next body or function.

        Returns:
            The step record, with movement and service accounted.
        """
        ...
