"""
SnCharLab Sampler Models

Configuration of the uniform random partition sampler.
"""

from dataclasses import dataclass

from app.constants import DEFAULT_MAX_REJECTIONS, DEFAULT_SEED


@dataclass(frozen=True)
class SamplerConfig:
    """
    Settings for drawing uniform random partitions of n.

    Attributes:
        n: Size of the partitions, >= 1
        seed: Unsigned 64-bit seed
        max_rejections: Consecutive rejected draws tolerated, >= 1
    """

    n: int
    seed: int = DEFAULT_SEED
    max_rejections: int = DEFAULT_MAX_REJECTIONS

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"Sampler needs n >= 1, got {self.n}")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"Seed must be an unsigned 64-bit integer, got {self.seed}")
        if self.max_rejections < 1:
            raise ValueError(f"max_rejections must be positive, got {self.max_rejections}")
