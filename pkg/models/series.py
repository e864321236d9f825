"""
SnCharLab Power Series Model

Truncated power series with arbitrary-precision integer coefficients.
"""

from dataclasses import dataclass
from typing import List, Tuple


@dataclass(frozen=True)
class PSeries:
    """
    c_0 + c_1 x + ... + c_N x^N, exact under truncation at N.

    Attributes:
        coeffs: Coefficients c_0 ... c_N
    """

    coeffs: Tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.coeffs:
            raise ValueError("A series needs at least the constant coefficient")
        object.__setattr__(self, "coeffs", tuple(self.coeffs))

    @classmethod
    def zero(cls, truncation: int) -> "PSeries":
        """The zero series truncated at N."""
        return cls((0,) * (truncation + 1))

    @classmethod
    def one(cls, truncation: int) -> "PSeries":
        """The constant series 1 truncated at N."""
        return cls.monomial(0, 1, truncation)

    @classmethod
    def monomial(cls, degree: int, coeff: int, truncation: int) -> "PSeries":
        """coeff * x^degree truncated at N (zero if degree > N)."""
        coeffs = [0] * (truncation + 1)
        if degree <= truncation:
            coeffs[degree] = coeff
        return cls(tuple(coeffs))

    @property
    def truncation(self) -> int:
        """Largest exponent kept, N."""
        return len(self.coeffs) - 1

    def __getitem__(self, index: int) -> int:
        return self.coeffs[index]

    def __len__(self) -> int:
        return len(self.coeffs)

    def to_list(self) -> List[int]:
        """Coefficients as a plain list."""
        return list(self.coeffs)

    def add(self, other: "PSeries") -> "PSeries":
        """Coefficient-wise sum, truncated at the smaller N."""
        return PSeries(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def mul(self, other: "PSeries") -> "PSeries":
        """
        Cauchy product, truncated at the smaller N.

        Zero coefficients of the left factor are skipped, so sparse
        factors cost proportionally less.
        """
        truncation = min(self.truncation, other.truncation)
        result = [0] * (truncation + 1)
        right = other.coeffs
        for i in range(truncation + 1):
            a = self.coeffs[i]
            if not a:
                continue
            for j in range(truncation + 1 - i):
                b = right[j]
                if b:
                    result[i + j] += a * b
        return PSeries(tuple(result))

    def mul_one_minus(self, a: int) -> "PSeries":
        """Multiply by (1 - x^a) in O(N)."""
        if a < 1:
            raise ValueError(f"Exponent must be positive, got {a}")
        c = list(self.coeffs)
        for i in range(len(c) - 1, a - 1, -1):
            c[i] -= c[i - a]
        return PSeries(tuple(c))

    def div_one_minus(self, a: int) -> "PSeries":
        """Multiply by 1/(1 - x^a) = 1 + x^a + x^{2a} + ... in O(N)."""
        if a < 1:
            raise ValueError(f"Exponent must be positive, got {a}")
        c = list(self.coeffs)
        for i in range(a, len(c)):
            c[i] += c[i - a]
        return PSeries(tuple(c))

    def __add__(self, other: "PSeries") -> "PSeries":
        return self.add(other)

    def __mul__(self, other: "PSeries") -> "PSeries":
        return self.mul(other)
