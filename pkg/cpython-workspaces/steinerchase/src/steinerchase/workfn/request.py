"""Requests and instances.

A request is either a convex body the player must enter (Body) or a
nonnegative convex function the player pays at its position (Func). An
instance fixes the dimension, the ambient norm and the ordered requests; the
player always starts at the origin.
"""

import numpy as np

from ..error import ValidationError
from ..geometry.maxaffine import MaxAffine
from ..geometry.norm import NormTag
from ..geometry.polytope import HPolytope


class Body:
    """A body request K_n."""

    kind = "body"

    def __init__(self, polytope: HPolytope) -> None:
        self.polytope = polytope

    @property
    def dim(self) -> int:
        return self.polytope.dim

    def cost(self, x: np.ndarray) -> float:
        """Service cost: zero (membership is a hard constraint)."""
        return 0.0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Body):
            return NotImplemented
        return self.polytope == other.polytope

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"Body({self.polytope!r})"


class Func:
    """A function request f_n."""

    kind = "func"

    def __init__(self, function: MaxAffine) -> None:
        self.function = function

    @property
    def dim(self) -> int:
        return self.function.dim

    def cost(self, x: np.ndarray) -> float:
        """Service cost f_n(x)."""
        return self.function(x)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Func):
            return NotImplemented
        return self.function == other.function

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"Func({self.function!r})"


Request = Body | Func


class Instance:
    """An ordered request sequence in a normed space, starting at the origin."""

    def __init__(self, dim: int, norm: NormTag, requests: list[Request] | tuple[Request, ...] = ()) -> None:
        """Initialize the instance.

        Args:
            dim: Dimension d >= 1.
            norm: The ambient norm.
            requests: The requests in order.

        Raises:
            ValidationError: If d < 1 or a request has the wrong dimension.
        """
        if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
            raise ValidationError(f"dimension must be a positive integer, got {dim!r}", field="dim")
        self.dim = dim
        self.norm = norm
        for i, request in enumerate(requests):
            if not isinstance(request, (Body, Func)):
                raise ValidationError(f"not a request: {request!r}", field=f"requests[{i}]")
            if request.dim != dim:
                raise ValidationError(f"dimension {request.dim} does not match {dim}", field=f"requests[{i}]")
        self.requests: tuple[Request, ...] = tuple(requests)

    def __len__(self) -> int:
        return len(self.requests)

    @property
    def origin(self) -> np.ndarray:
        """The starting position x_0 = 0."""
        return np.zeros(self.dim)

    @property
    def is_body_instance(self) -> bool:
        """Whether every request is a body."""
        return all(isinstance(r, Body) for r in self.requests)

    def prefix(self, n: int) -> "Instance":
        """The first n requests as an instance."""
        return Instance(self.dim, self.norm, self.requests[:n])

    def append(self, request: Request) -> "Instance":
        """A new instance with one more request."""
        return Instance(self.dim, self.norm, self.requests + (request,))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Instance):
            return NotImplemented
        return self.dim == other.dim and self.norm is other.norm and self.requests == other.requests

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"Instance(dim={self.dim}, norm={self.norm.value}, requests={len(self.requests)})"
