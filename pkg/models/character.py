"""
SnCharLab Character Models

Character values, columns and full tables of the symmetric group.
"""

from dataclasses import dataclass
from typing import List, Optional, Tuple

from models.partition import Partition


@dataclass(frozen=True)
class CharValue:
    """
    A character value, exact or reduced modulo a prime.

    Attributes:
        value: Exact integer, or residue in [0, modulus) when modulus is set
        modulus: Prime the value is reduced by (None = exact)
    """

    value: int
    modulus: Optional[int] = None

    def __post_init__(self) -> None:
        if self.modulus is not None:
            object.__setattr__(self, "value", self.value % self.modulus)

    @property
    def is_exact(self) -> bool:
        """True if the value is an exact integer."""
        return self.modulus is None

    def reduce(self, p: int) -> "CharValue":
        """
        Reduce this value modulo p.

        Raises:
            ValueError: If the value is already a residue modulo a different prime
        """
        if self.modulus is not None and self.modulus != p:
            raise ValueError(f"Cannot reduce a residue mod {self.modulus} modulo {p}")
        return CharValue(self.value, p)

    def divisible_by(self, p: int) -> bool:
        """Check whether the value is 0 modulo p."""
        if self.modulus is not None and self.modulus != p:
            raise ValueError(f"Residue mod {self.modulus} says nothing modulo {p}")
        return self.value % p == 0

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        if self.modulus is None:
            return str(self.value)
        return f"{self.value} (mod {self.modulus})"


@dataclass(frozen=True)
class CharColumn:
    """
    One column of a character table: all chi^lambda_mu for a fixed mu.

    Attributes:
        n: Size of the symmetric group
        mu: Cycle type indexing the column
        values: Plain integers in canonical lambda order
        modulus: Prime the values are reduced by (None = exact)
    """

    n: int
    mu: Partition
    values: Tuple[int, ...]
    modulus: Optional[int] = None

    def __len__(self) -> int:
        return len(self.values)

    def value(self, index: int) -> CharValue:
        """Tagged value at a canonical lambda index."""
        return CharValue(self.values[index], self.modulus)


@dataclass(frozen=True)
class CharTable:
    """
    A full p(n) x p(n) character table.

    Attributes:
        n: Size of the symmetric group
        modulus: Prime the values are reduced by (None = exact)
        partitions: Canonical order shared by rows (lambda) and columns (mu)
        columns: One CharColumn per mu, in canonical order
    """

    n: int
    modulus: Optional[int]
    partitions: Tuple[Partition, ...]
    columns: Tuple[CharColumn, ...]

    @property
    def size(self) -> int:
        """Number of rows (and of columns)."""
        return len(self.partitions)

    @property
    def total_entries(self) -> int:
        """Number of entries, p(n)^2."""
        return self.size * self.size

    def index_of(self, lam: Partition) -> int:
        """
        Canonical position of a partition.

        Raises:
            ValueError: If lam is not a partition of n
        """
        try:
            return self.partitions.index(lam)
        except ValueError:
            raise ValueError(f"{lam} is not a partition of {self.n}")

    def value(self, lam: Partition, mu: Partition) -> CharValue:
        """Tagged value chi^lam_mu."""
        return self.columns[self.index_of(mu)].value(self.index_of(lam))

    def row(self, lam: Partition) -> Tuple[int, ...]:
        """All values of the character lam, in canonical mu order."""
        i = self.index_of(lam)
        return tuple(column.values[i] for column in self.columns)

    def divisible_count(self, p: int) -> int:
        """
        Count entries that are 0 modulo p.

        Raises:
            ValueError: If the table holds residues modulo a different prime
        """
        if self.modulus is not None and self.modulus != p:
            raise ValueError(f"Table is reduced mod {self.modulus}, not {p}")
        return sum(1 for column in self.columns for v in column.values if v % p == 0)

    def zero_count(self) -> int:
        """
        Count entries equal to 0.

        Raises:
            ValueError: If the table holds residues
        """
        if self.modulus is not None:
            raise ValueError("Zero count needs an exact table")
        return sum(1 for column in self.columns for v in column.values if v == 0)

    def reduce(self, p: int) -> "CharTable":
        """Reduce every entry modulo p."""
        if self.modulus is not None and self.modulus != p:
            raise ValueError(f"Cannot reduce a table mod {self.modulus} modulo {p}")
        columns = tuple(
            CharColumn(self.n, c.mu, tuple(v % p for v in c.values), p) for c in self.columns
        )
        return CharTable(self.n, p, self.partitions, columns)

    def to_rows(self) -> List[List[int]]:
        """Values as a row-major list of lists (rows lambda, columns mu)."""
        return [list(self.row(lam)) for lam in self.partitions]
