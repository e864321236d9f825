"""
SnCharLab Partition Models

Integer partitions and the Young-diagram data derived from them.
A Partition indexes both rows (irreducible characters) and columns
(cycle types) of a character table.
"""

from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterator, Tuple


@dataclass(frozen=True)
class Partition:
    """
    A weakly decreasing sequence of positive integers.

    Attributes:
        parts: Parts in weakly decreasing order (empty for n = 0)
    """

    parts: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        parts = tuple(int(p) for p in self.parts)
        for i, part in enumerate(parts):
            if part < 1:
                raise ValueError(f"Partition parts must be positive, got {parts}")
            if i and parts[i - 1] < part:
                raise ValueError(f"Partition parts must be weakly decreasing, got {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def trusted(cls, parts: Tuple[int, ...]) -> "Partition":
        """Wrap an already-valid parts tuple without re-checking it."""
        instance = object.__new__(cls)
        object.__setattr__(instance, "parts", parts)
        return instance

    @classmethod
    def from_multiplicities(cls, multiplicities: Dict[int, int]) -> "Partition":
        """
        Create a Partition from a part-size -> count map.

        Args:
            multiplicities: Map of part size to multiplicity (zero counts allowed)

        Returns:
            Partition instance
        """
        parts = []
        for size in sorted(multiplicities, reverse=True):
            parts.extend([size] * multiplicities[size])
        return cls(tuple(parts))

    @property
    def n(self) -> int:
        """Size of the partition (sum of parts)."""
        return sum(self.parts)

    @property
    def length(self) -> int:
        """Number of parts."""
        return len(self.parts)

    @property
    def largest(self) -> int:
        """Largest part (0 for the empty partition)."""
        return self.parts[0] if self.parts else 0

    def multiplicities(self) -> Dict[int, int]:
        """Map of part size to number of occurrences."""
        return dict(Counter(self.parts))

    def has_part(self, size: int) -> bool:
        """Check whether size occurs as a part."""
        return size in self.parts

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __getitem__(self, index: int) -> int:
        return self.parts[index]

    def __str__(self) -> str:
        return "(" + ",".join(str(p) for p in self.parts) + ")"

    def to_list(self) -> list:
        """Parts as a plain list (JSON friendly)."""
        return list(self.parts)


@dataclass(frozen=True)
class HookTable:
    """
    Hook lengths of every box of a Young diagram.

    Attributes:
        shape: The partition whose diagram is labelled
        hooks: One tuple per row, one hook length per box
    """

    shape: Partition
    hooks: Tuple[Tuple[int, ...], ...]

    def all_hooks(self) -> Tuple[int, ...]:
        """All hook lengths in row order."""
        return tuple(h for row in self.hooks for h in row)

    def has_hook(self, length: int) -> bool:
        """Check whether some box has exactly this hook length."""
        return any(length in row for row in self.hooks)

    def has_hook_divisible_by(self, t: int) -> bool:
        """Check whether some hook length is a multiple of t."""
        return any(h % t == 0 for row in self.hooks for h in row)

    def product(self) -> int:
        """Product of all hook lengths."""
        result = 1
        for h in self.all_hooks():
            result *= h
        return result


@dataclass(frozen=True)
class StripRemoval:
    """
    The outcome of removing one border strip.

    Attributes:
        result: Partition left after the removal
        height: Number of rows the strip meets
        sign: (-1)^(height-1), the Murnaghan-Nakayama sign
    """

    result: Partition
    height: int
    sign: int
