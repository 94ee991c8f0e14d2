"""This protocol specifies the interface that adaptive request generators must
adhere to. An adversary sees the chaser's position before emitting the next
request.
"""

import numpy as np

from ..workfn.request import Instance, Request


class AdversaryProto:
    """Protocol defining the interface for an adaptive adversary."""

    def next_request(self, position: np.ndarray) -> Request | None:
        """Emits the next request.

        Args:
            position: The chaser's current position.

        Returns:
            The next request, or None once the sequence is exhausted.
        """
        ...

    def realized(self) -> Instance:
        """Returns the requests emitted so far as a replayable instance."""
        ...
