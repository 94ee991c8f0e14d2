"""The nested baseline: move to the Steiner point of each new body.

Only valid for nested sequences K_1 ⊇ K_2 ⊇ ...; nesting is checked online,
before the request is accepted, by comparing the new body's support against
every halfspace of its predecessor.
"""

from ..geometry.polytope import is_subset
from ..steiner.estimator import steiner_body
from ..workfn.request import Body, Request
from .base import Chaser, Move
from .error import NotNested


class NestedSteinerChaser(Chaser):
    """Moves to the Steiner point of the latest body."""

    name = "nested"
    accepts = (Body,)

    def _check(self, request: Request) -> None:
        super()._check(request)
        if len(self.instance) == 0:
            return
        outer = self.instance.requests[-1]
        if not is_subset(request.polytope, outer.polytope, self.tol):
            raise NotNested(f"request {len(self.instance) + 1} is not inside request {len(self.instance)}")

    def _move(self, request: Body, previous) -> Move:
        estimate = steiner_body(request.polytope, self.norm, self.steiner, len(self.instance), self.workers)
        position, fixup = self.fix_up(estimate.point, request.polytope)
        return Move(position, fixup, estimate.stderr)
