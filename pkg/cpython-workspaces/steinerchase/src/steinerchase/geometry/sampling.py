"""Counter-based random streams and cone-measure samplers for dual unit balls.

Every sample j of every step gets its own Philox generator keyed by
(seed, purpose, step, j), so a draw never depends on which worker evaluated
which other draw.

The cone measure on the boundary of the dual ball is sampled by drawing a
uniform point of the ball and scaling it to the boundary; the accompanying
outward normal n has unit ambient norm and n . theta = 1.

**Usage:**
```python
stream = RandomStream(seed=7, purpose=StreamPurpose.SPHERE)
theta, normal = sample_dual_sphere(NormTag.LINF, 3, stream.generator(0))
```
"""

from enum import IntEnum

import numpy as np

from .norm import NormTag


class StreamPurpose(IntEnum):
    """Separates the random streams used for different jobs."""

    SPHERE = 1
    BALL = 2
    GENERATOR = 3
    CHECK = 4


class RandomStream:
    """A family of independent generators indexed by sample number."""

    def __init__(self, seed: int, purpose: StreamPurpose, step: int = 0) -> None:
        """Initialize the stream.

        Args:
            seed: 64-bit root seed.
            purpose: Which job the draws are for.
            step: Time step; callers using common random numbers pass 0.
        """
        self.seed = seed
        self.purpose = purpose
        self.step = step

    def generator(self, index: int) -> np.random.Generator:
        """Returns the generator of sample ``index``."""
        sequence = np.random.SeedSequence(self.seed, spawn_key=(int(self.purpose), self.step, index))
        return np.random.Generator(np.random.Philox(sequence))


def sample_dual_sphere(tag: NormTag, dim: int, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """Draws theta on the boundary of the dual unit ball under the cone measure.

    Args:
        tag: The ambient norm; theta lives on the unit sphere of its dual.
        dim: Dimension d.
        rng: Source of randomness.

    Returns:
        (theta, n) with dual_norm(theta) = 1, norm(n) = 1 and n . theta = 1.
    """
    while True:
        if tag is NormTag.EUCLIDEAN:
            g = rng.standard_normal(dim)
            length = np.linalg.norm(g)
            if length < 1e-12:
                continue
            theta = g / length
            return theta, theta.copy()

        if tag is NormTag.LINF:
            # dual ball is the cross-polytope: exponential magnitudes give a uniform face point
            magnitudes = rng.standard_exponential(dim)
            signs = np.where(rng.random(dim) < 0.5, -1.0, 1.0)
            if np.any(magnitudes == 0.0):
                continue
            theta = signs * magnitudes / np.sum(magnitudes)
            return theta, signs

        # dual ball is the cube; draws on an edge or corner have no unique normal
        z = rng.uniform(-1.0, 1.0, dim)
        magnitudes = np.abs(z)
        k = int(np.argmax(magnitudes))
        if magnitudes[k] == 0.0 or np.count_nonzero(magnitudes == magnitudes[k]) > 1:
            continue
        theta = z / magnitudes[k]
        theta[k] = np.sign(z[k])
        normal = np.zeros(dim)
        normal[k] = np.sign(z[k])
        return theta, normal


def sample_dual_ball(tag: NormTag, dim: int, rng: np.random.Generator) -> np.ndarray:
    """Draws a uniform point of the dual unit ball."""
    theta, _ = sample_dual_sphere(tag, dim, rng)
    return theta * rng.random() ** (1.0 / dim)
