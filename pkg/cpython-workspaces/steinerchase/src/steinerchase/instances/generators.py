"""Instance generators.

Four families are available:

* HypercubeFaces: faces {x_i = s} of [-1, 1]^d, round-robin or chosen adaptively;
* NestedCuts: [-1, 1]^d cut repeatedly by halfspaces near its Chebyshev center;
* RandomBodies: random boxes and slabs inside [-scale, scale]^d;
* RandomMaxAffine: random nonnegative max-affine functions carrying the zero piece.

Randomized families draw from counter-based streams keyed by (seed, request
index), so the k-th request does not depend on how many were generated.

**Usage:**
```python
spec = parse_generator_spec("bodies:d=2,N=8,seed=3,scale=2", NormTag.EUCLIDEAN)
instance = gen(spec, logger)
```
"""

import numpy as np

from ..geometry.maxaffine import MaxAffine
from ..geometry.norm import NormTag
from ..geometry.polytope import HPolytope, is_subset
from ..geometry.sampling import RandomStream, StreamPurpose
from ..logger import Logger
from ..workfn.request import Body, Func, Instance
from .adversary import HypercubeAdversary, face_body, face_order
from .error import InvalidSpec

# share of the Chebyshev radius a cut may keep beyond the center
_CUT_OFFSET = 0.5


class GeneratorSpec:
    """Common fields of every generator family."""

    name = "base"

    def __init__(self, dim: int, count: int, norm: NormTag) -> None:
        self.dim = dim
        self.count = count
        self.norm = norm

    def validate(self) -> None:
        """Checks the common fields.

        Raises:
            InvalidSpec: If d or N is not a positive integer.
        """
        for field, value in (("d", self.dim), ("N", self.count)):
            if isinstance(value, bool) or not isinstance(value, int) or value < 1:
                raise InvalidSpec(f"must be a positive integer, got {value!r}", field=field)

    def to_dict(self) -> dict:
        """Convert the spec to a dictionary for JSON serialization."""
        return {"name": self.name, "d": self.dim, "N": self.count, "norm": self.norm.value}


class HypercubeFaces(GeneratorSpec):
    """Faces of the cube [-1, 1]^d; adaptive mode chases the player away."""

    name = "hypercube"

    def __init__(self, dim: int, count: int, norm: NormTag, adaptive: bool = False) -> None:
        super().__init__(dim, count, norm)
        self.adaptive = adaptive

    def to_dict(self) -> dict:
        return {**super().to_dict(), "adaptive": self.adaptive}


class NestedCuts(GeneratorSpec):
    """A decreasing sequence of polytopes starting from the cube."""

    name = "nested"

    def __init__(self, dim: int, count: int, norm: NormTag, seed: int = 0) -> None:
        super().__init__(dim, count, norm)
        self.seed = seed

    def to_dict(self) -> dict:
        return {**super().to_dict(), "seed": self.seed}


class RandomBodies(GeneratorSpec):
    """Random boxes and slabs inside [-scale, scale]^d."""

    name = "bodies"

    def __init__(self, dim: int, count: int, norm: NormTag, seed: int = 0, scale: float = 1.0) -> None:
        super().__init__(dim, count, norm)
        self.seed = seed
        self.scale = scale

    def validate(self) -> None:
        super().validate()
        if not self.scale > 0.0:
            raise InvalidSpec(f"must be positive, got {self.scale!r}", field="scale")

    def to_dict(self) -> dict:
        return {**super().to_dict(), "seed": self.seed, "scale": self.scale}


class RandomMaxAffine(GeneratorSpec):
    """Random nonnegative max-affine functions."""

    name = "maxaffine"

    def __init__(self, dim: int, count: int, norm: NormTag, seed: int = 0, pieces: int = 2) -> None:
        super().__init__(dim, count, norm)
        self.seed = seed
        self.pieces = pieces

    def validate(self) -> None:
        super().validate()
        if isinstance(self.pieces, bool) or not isinstance(self.pieces, int) or self.pieces < 1:
            raise InvalidSpec(f"must be a positive integer, got {self.pieces!r}", field="pieces")

    def to_dict(self) -> dict:
        return {**super().to_dict(), "seed": self.seed, "pieces": self.pieces}


_FAMILIES: dict[str, type[GeneratorSpec]] = {
    "hypercube": HypercubeFaces,
    "nested": NestedCuts,
    "bodies": RandomBodies,
    "maxaffine": RandomMaxAffine,
}

_KEY_TYPES: dict[str, type] = {"d": int, "N": int, "seed": int, "adaptive": bool, "scale": float, "pieces": int}

_KEY_ARGS = {"d": "dim", "N": "count"}


def _parse_value(key: str, raw: str):
    kind = _KEY_TYPES[key]
    if kind is bool:
        lowered = raw.lower()
        if lowered in ("1", "true", "yes"):
            return True
        if lowered in ("0", "false", "no"):
            return False
        raise InvalidSpec(f"expected a boolean, got {raw!r}", field=key)
    try:
        return kind(raw)
    except ValueError as e:
        raise InvalidSpec(f"expected {kind.__name__}, got {raw!r}", field=key) from e


def parse_generator_spec(text: str, norm: NormTag) -> GeneratorSpec:
    """Parses the CLI form ``name:key=value,...``.

    Args:
        text: For example ``hypercube:d=2,N=8,adaptive=true``.
        norm: The ambient norm of the generated instance.

    Returns:
        The validated spec.

    Raises:
        InvalidSpec: On an unknown family, an unknown or malformed key, or invalid values.
    """
    name, _, body = text.partition(":")
    family = _FAMILIES.get(name.strip())
    if family is None:
        raise InvalidSpec(f"unknown generator {name!r}; expected one of {sorted(_FAMILIES)}", field="gen")

    kwargs: dict = {}
    for item in filter(None, (part.strip() for part in body.split(","))):
        key, sep, raw = item.partition("=")
        key = key.strip()
        if not sep or key not in _KEY_TYPES:
            raise InvalidSpec(f"cannot read {item!r}", field="gen")
        kwargs[_KEY_ARGS.get(key, key)] = _parse_value(key, raw.strip())
    for required in ("dim", "count"):
        if required not in kwargs:
            raise InvalidSpec("is required", field="d" if required == "dim" else "N")

    try:
        spec = family(norm=norm, **kwargs)
    except TypeError as e:
        raise InvalidSpec(f"{name} does not take these keys: {sorted(kwargs)}", field="gen") from e
    spec.validate()
    return spec


def hypercube_faces(d: int, N: int, norm: NormTag) -> Instance:
    """Round-robin faces (0, +1), (0, -1), (1, +1), ... of [-1, 1]^d."""
    order = face_order(d)
    return Instance(d, norm, [Body(face_body(d, *order[k % len(order)])) for k in range(N)])


def nested_cuts(spec: NestedCuts) -> Instance:
    """Cuts the cube N - 1 times through a point near the current Chebyshev center."""
    current = HPolytope.box(-np.ones(spec.dim), np.ones(spec.dim))
    bodies = [current]
    for k in range(1, spec.count):
        rng = RandomStream(spec.seed, StreamPurpose.GENERATOR, k).generator(0)
        direction = rng.standard_normal(spec.dim)
        direction /= np.linalg.norm(direction)
        offset = rng.uniform(0.0, _CUT_OFFSET) * current.chebyshev_radius
        cut = direction @ current.chebyshev_center + offset
        current = HPolytope(np.vstack([current.A, direction]), np.append(current.b, cut), field=f"requests[{k}]")
        if not is_subset(current, bodies[-1]):
            raise InvalidSpec(f"cut {k} is not nested", field="nested")
        bodies.append(current)
    return Instance(spec.dim, spec.norm, [Body(b) for b in bodies])


def random_bodies(spec: RandomBodies) -> Instance:
    """Alternating random boxes and slabs, each containing a random anchor point."""
    d, scale = spec.dim, spec.scale
    requests = []
    for k in range(spec.count):
        rng = RandomStream(spec.seed, StreamPurpose.GENERATOR, k).generator(0)
        anchor = rng.uniform(-scale / 2.0, scale / 2.0, d)
        if rng.random() < 0.5:
            half = rng.uniform(0.05, 0.5, d) * scale
            lo = np.maximum(anchor - half, -scale)
            hi = np.minimum(anchor + half, scale)
            body = HPolytope.box(lo, hi)
        else:
            direction = rng.standard_normal(d)
            direction /= np.linalg.norm(direction)
            width = rng.uniform(0.05, 0.5) * scale
            center = direction @ anchor
            eye = np.eye(d)
            A = np.vstack([eye, -eye, direction, -direction])
            b = np.concatenate([np.full(2 * d, scale), [center + width, width - center]])
            body = HPolytope(A, b, field=f"requests[{k}]")
        requests.append(Body(body))
    return Instance(d, spec.norm, requests)


def random_max_affine(spec: RandomMaxAffine) -> Instance:
    """Functions max(0, a_j . (x - p_j)) with random slopes a_j in [-1, 1]^d and kinks p_j in [-2, 2]^d."""
    d = spec.dim
    requests = []
    for k in range(spec.count):
        rng = RandomStream(spec.seed, StreamPurpose.GENERATOR, k).generator(0)
        gradients = rng.uniform(-1.0, 1.0, (spec.pieces, d))
        kinks = rng.uniform(-2.0, 2.0, (spec.pieces, d))
        intercepts = -np.einsum("ij,ij->i", gradients, kinks)
        function = MaxAffine(np.vstack([np.zeros(d), gradients]), np.append(0.0, intercepts))
        requests.append(Func(function))
    return Instance(d, spec.norm, requests)


def gen(spec: GeneratorSpec, logger: Logger) -> Instance | HypercubeAdversary:
    """Generates an instance, or an adaptive adversary for adaptive hypercube specs.

    Args:
        spec: The generator specification.
        logger: Logger handed to adversaries.

    Returns:
        The instance or adversary.

    Raises:
        InvalidSpec: If the spec is invalid.
    """
    spec.validate()
    logger.debug("Generating instance", **spec.to_dict())
    if isinstance(spec, HypercubeFaces):
        if spec.adaptive:
            return HypercubeAdversary(logger, spec.dim, spec.count, spec.norm)
        return hypercube_faces(spec.dim, spec.count, spec.norm)
    if isinstance(spec, NestedCuts):
        return nested_cuts(spec)
    if isinstance(spec, RandomBodies):
        return random_bodies(spec)
    if isinstance(spec, RandomMaxAffine):
        return random_max_affine(spec)
    raise InvalidSpec(f"unknown generator family {spec.name!r}", field="gen")
