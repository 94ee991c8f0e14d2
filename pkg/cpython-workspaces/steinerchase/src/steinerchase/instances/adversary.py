"""Adaptive and replaying request sources.

The adaptive hypercube adversary looks at the chaser's position and requests
the face of [-1, 1]^d that is farthest away in the ambient norm. It never
repeats the face it requested last, so a chaser that sits still on a face is
always moved.
"""

import numpy as np

from ..geometry.norm import NormTag, norm
from ..geometry.polytope import HPolytope
from ..logger import Logger
from ..protos.adversary import AdversaryProto
from ..workfn.request import Body, Instance, Request


def face_body(d: int, axis: int, sign: float) -> HPolytope:
    """The face {x in [-1, 1]^d : x_axis = sign} as a flat box."""
    lo = -np.ones(d)
    hi = np.ones(d)
    lo[axis] = hi[axis] = sign
    return HPolytope.box(lo, hi)


def face_order(d: int) -> list[tuple[int, float]]:
    """Faces in round-robin order (0, +1), (0, -1), (1, +1), ..."""
    return [(i, s) for i in range(d) for s in (1.0, -1.0)]


class HypercubeAdversary(AdversaryProto):
    """Requests the cube face farthest from the chaser."""

    def __init__(self, logger: Logger, d: int, N: int, norm_tag: NormTag) -> None:
        """Initialize the adversary.

        Args:
            logger: Logger for emitted faces.
            d: Dimension.
            N: Number of requests to emit.
            norm_tag: The ambient norm used to measure distance.
        """
        self._log = logger
        self.dim = d
        self.count = N
        self.norm = norm_tag
        self._faces = face_order(d)
        self._last: int | None = None
        self._emitted: list[Request] = []

    def distance(self, position: np.ndarray, face: int) -> float:
        """Ambient distance from the position to a face."""
        axis, sign = self._faces[face]
        nearest = np.clip(position, -1.0, 1.0)
        nearest[axis] = sign
        return norm(position - nearest, self.norm)

    def next_request(self, position: np.ndarray) -> Request | None:
        if len(self._emitted) >= self.count:
            return None
        position = np.asarray(position, dtype=float)
        candidates = [k for k in range(len(self._faces)) if k != self._last]
        # max() keeps the first maximum, which is the lowest round-robin index
        face = max(candidates, key=lambda k: self.distance(position, k))
        self._last = face
        axis, sign = self._faces[face]
        request = Body(face_body(self.dim, axis, sign))
        self._emitted.append(request)
        self._log.debug("Face requested", step=len(self._emitted), axis=axis, sign=sign)
        return request

    def realized(self) -> Instance:
        return Instance(self.dim, self.norm, self._emitted)


class ReplayAdversary(AdversaryProto):
    """Replays a fixed instance, ignoring the chaser."""

    def __init__(self, instance: Instance) -> None:
        self.instance = instance
        self._next = 0

    def next_request(self, position: np.ndarray) -> Request | None:
        if self._next >= len(self.instance):
            return None
        request = self.instance.requests[self._next]
        self._next += 1
        return request

    def realized(self) -> Instance:
        return self.instance.prefix(self._next)
