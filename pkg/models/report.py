"""
SnCharLab Experiment Report Models

Densities of divisible, certified and zero entries, moment cross-checks,
and trend rows. Densities are exact rationals with a fixed-precision
decimal rendering.
"""

from dataclasses import dataclass, field
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from typing import List, Optional

from app.constants import DENSITY_DECIMAL_PLACES, DensityMethod


def fraction_to_decimal(value: Optional[Fraction], places: int = DENSITY_DECIMAL_PLACES) -> str:
    """
    Render a rational with a fixed number of decimal places.

    Returns:
        Decimal string, or "" for None
    """
    if value is None:
        return ""
    with localcontext() as ctx:
        ctx.prec = 60
        decimal = Decimal(value.numerator) / Decimal(value.denominator)
        return str(decimal.quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_EVEN))


def _cell(value) -> str:
    return "" if value is None else str(value)


@dataclass
class DensityReport:
    """
    Entry counts of the character table of S_n for one prime.

    Attributes:
        n: Size of the symmetric group
        p: Prime (None for zero counts only)
        total_entries: p(n)^2
        method: How the counts were obtained
        divisible_count: Entries divisible by p (None if not measured)
        certified_count: Entries certified divisible by a t-core argument
        zero_count: Entries equal to 0
        estimate: Sampled certified density (sampled method only)
        stderr: Standard error of the estimate
    """

    n: int
    p: Optional[int]
    total_entries: int
    method: DensityMethod
    divisible_count: Optional[int] = None
    certified_count: Optional[int] = None
    zero_count: Optional[int] = None
    estimate: Optional[float] = None
    stderr: Optional[float] = None

    def __post_init__(self) -> None:
        for name in ("divisible_count", "certified_count", "zero_count"):
            value = getattr(self, name)
            if value is not None and not 0 <= value <= self.total_entries:
                raise ValueError(f"{name}={value} outside [0, {self.total_entries}]")
        if self.divisible_count is not None:
            if self.certified_count is not None and self.certified_count > self.divisible_count:
                raise ValueError(
                    f"certified_count {self.certified_count} exceeds divisible_count {self.divisible_count}"
                )
            if self.zero_count is not None and self.zero_count > self.divisible_count:
                raise ValueError(
                    f"zero_count {self.zero_count} exceeds divisible_count {self.divisible_count}"
                )

    def _fraction(self, count: Optional[int]) -> Optional[Fraction]:
        if count is None or not self.total_entries:
            return None
        return Fraction(count, self.total_entries)

    @property
    def divisible_density(self) -> Optional[Fraction]:
        """Fraction of entries divisible by p."""
        return self._fraction(self.divisible_count)

    @property
    def odd_density(self) -> Optional[Fraction]:
        """Fraction of entries not divisible by p."""
        density = self.divisible_density
        return None if density is None else 1 - density

    @property
    def certified_density(self) -> Optional[Fraction]:
        """Fraction of entries certified divisible."""
        return self._fraction(self.certified_count)

    @property
    def zero_density(self) -> Optional[Fraction]:
        """Fraction of entries equal to 0."""
        return self._fraction(self.zero_count)

    @property
    def density(self) -> Optional[Fraction]:
        """
        The headline density of the report: divisible (exact table, or zero
        density without a prime), certified (certificate) or the sampled
        estimate.
        """
        if self.method == DensityMethod.CERTIFICATE_SAMPLED:
            return None if self.estimate is None else Fraction(self.estimate)
        if self.method == DensityMethod.CERTIFICATE_EXACT:
            return self.certified_density
        if self.divisible_count is not None:
            return self.divisible_density
        return self.zero_density

    @property
    def density_decimal(self) -> str:
        """The headline density to six decimal places."""
        return fraction_to_decimal(self.density)

    def to_row(self) -> List[str]:
        """Values in CSV column order."""
        return [
            str(self.n),
            _cell(self.p),
            self.method.value,
            str(self.total_entries),
            _cell(self.divisible_count),
            _cell(self.certified_count),
            _cell(self.zero_count),
            self.density_decimal,
        ]

    def to_dict(self) -> dict:
        """Convert to dictionary; big integers as decimal strings."""
        return {
            "n": self.n,
            "p": self.p,
            "method": self.method.value,
            "total_entries": str(self.total_entries),
            "divisible_count": None if self.divisible_count is None else str(self.divisible_count),
            "certified_count": None if self.certified_count is None else str(self.certified_count),
            "zero_count": None if self.zero_count is None else str(self.zero_count),
            "density_decimal": self.density_decimal,
            "estimate": self.estimate,
            "stderr": self.stderr,
        }


@dataclass
class MomentReport:
    """
    First and second moments of M^(k) over partitions of n, by enumeration
    and by generating functions.

    Attributes:
        n, k, p: Parameters
        partitions: p(n)
        exact_sum: Sum of M^(k) by enumeration
        exact_sum_sq: Sum of (M^(k))^2 by enumeration
        gf_sum: (P F_k)[n]
        gf_sum_sq: (P G_k)[n]
        main_term: Asymptotic mean (None for n < 2)
        main_term_sq: Square of the asymptotic mean
        ratio: exact_sum / (p(n) main_term)
        ratio_sq: exact_sum_sq / (p(n) main_term^2)
    """

    n: int
    k: int
    p: int
    partitions: int
    exact_sum: int
    exact_sum_sq: int
    gf_sum: int
    gf_sum_sq: int
    main_term: Optional[float] = None
    main_term_sq: Optional[float] = None
    ratio: Optional[float] = None
    ratio_sq: Optional[float] = None

    @property
    def matches(self) -> bool:
        """True if both enumeration sums equal the generating-function values."""
        return self.exact_sum == self.gf_sum and self.exact_sum_sq == self.gf_sum_sq

    @property
    def mean(self) -> Fraction:
        """Exact mean of M^(k)."""
        return Fraction(self.exact_sum, self.partitions)

    def to_dict(self) -> dict:
        """Convert to dictionary; big integers as decimal strings."""
        return {
            "n": self.n,
            "k": self.k,
            "p": self.p,
            "partitions": str(self.partitions),
            "exact_sum": str(self.exact_sum),
            "exact_sum_sq": str(self.exact_sum_sq),
            "gf_sum": str(self.gf_sum),
            "gf_sum_sq": str(self.gf_sum_sq),
            "main_term": self.main_term,
            "main_term_sq": self.main_term_sq,
            "ratio": self.ratio,
            "ratio_sq": self.ratio_sq,
        }


@dataclass
class TrendRow:
    """
    One n of a density trend table.

    Columns a budget excludes are None and their method is missing from
    methods.
    """

    n: int
    p: int
    exact_density: Optional[Fraction] = None
    certified_density: Optional[Fraction] = None
    zero_density: Optional[Fraction] = None
    sampled_density: Optional[float] = None
    sampled_stderr: Optional[float] = None
    methods: List[str] = field(default_factory=list)

    @property
    def odd_density(self) -> Optional[Fraction]:
        """Fraction of entries not divisible by p, when the table was built."""
        return None if self.exact_density is None else 1 - self.exact_density

    def to_row(self) -> List[str]:
        """Values in trend CSV column order."""
        return [
            str(self.n),
            str(self.p),
            fraction_to_decimal(self.exact_density),
            fraction_to_decimal(self.odd_density),
            fraction_to_decimal(self.certified_density),
            fraction_to_decimal(self.zero_density),
            "" if self.sampled_density is None else f"{self.sampled_density:.6f}",
            "" if self.sampled_stderr is None else f"{self.sampled_stderr:.6f}",
            ";".join(self.methods),
        ]
