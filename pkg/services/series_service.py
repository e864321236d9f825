"""
SnCharLab Series Service

Exact counting functions as truncated power series: partition numbers,
t-core counts, partitions into powers of p, partitions avoiding the parts
k*p^j, and the moment series F_k and G_k of the statistic M^(k).
"""

import logging
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

from models.series import PSeries
from utils.validators import (
    ensure_valid,
    validate_coprime,
    validate_distinct,
    validate_non_negative,
    validate_positive,
    validate_prime,
)

logger = logging.getLogger(__name__)

# p(0), p(1), ... grown on demand by the pentagonal recurrence
_PARTITION_NUMBERS: List[int] = [1]


def _extend_partition_numbers(limit: int) -> None:
    table = _PARTITION_NUMBERS
    for m in range(len(table), limit + 1):
        total = 0
        j = 1
        while True:
            first = m - j * (3 * j - 1) // 2
            if first < 0:
                break
            second = first - j
            term = table[first] + (table[second] if second >= 0 else 0)
            total += term if j % 2 else -term
            j += 1
        table.append(total)


def partition_number(n: int) -> int:
    """p(n), 0 for negative n."""
    if n < 0:
        return 0
    if n >= len(_PARTITION_NUMBERS):
        _extend_partition_numbers(n)
    return _PARTITION_NUMBERS[n]


def powers_of(k: int, p: int, limit: int) -> List[int]:
    """All k * p^j <= limit, increasing."""
    values = []
    value = k
    while value <= limit:
        values.append(value)
        value *= p
    return values


class DegenerateRatioError(ArithmeticError):
    """Raised when a factorization ratio has a zero denominator."""


class SeriesService:
    """
    Service for exact generating-function coefficients.

    Every series is truncated at an explicit N and carries exact integers.
    """

    def partition_numbers(self, truncation: int) -> PSeries:
        """
        Partition numbers p(0..N) by the pentagonal-number recurrence.

        Args:
            truncation: N >= 0

        Returns:
            PSeries of p(n)
        """
        ensure_valid(validate_non_negative(truncation, "N"))
        partition_number(truncation)
        return PSeries(tuple(_PARTITION_NUMBERS[: truncation + 1]))

    def tcore_counts(self, t: int, truncation: int) -> PSeries:
        """
        Number of t-core partitions of each n <= N.

        Coefficients of prod_{m>=1} (1 - x^{tm})^t / (1 - x^m).

        Args:
            t: Core parameter, t >= 1
            truncation: N >= 0

        Returns:
            PSeries of t-core counts
        """
        ensure_valid(validate_positive(t, "t"))
        series = self.partition_numbers(truncation)
        for a in range(t, truncation + 1, t):
            for _ in range(t):
                series = series.mul_one_minus(a)
        return series

    def morotti_lower_bound(self, t: int, n: int) -> int:
        """
        Lower bound p(n) - (t+1) p(n-t) on the number of t-cores of n.

        Args:
            t: 1 <= t <= n
            n: Size

        Returns:
            The bound (may be negative)

        Raises:
            ValueError: If t is outside [1, n]
        """
        ensure_valid(validate_positive(t, "t"))
        if t > n:
            raise ValueError(f"t must be at most n, got t={t}, n={n}")
        return partition_number(n) - (t + 1) * partition_number(n - t)

    def qp_counts(self, p: int, truncation: int) -> PSeries:
        """
        Partitions of each n <= N into powers of p.

        Args:
            p: Prime
            truncation: N >= 0

        Returns:
            PSeries of q_p(n)
        """
        ensure_valid(validate_prime(p))
        ensure_valid(validate_non_negative(truncation, "N"))
        series = PSeries.one(truncation)
        for a in powers_of(1, p, truncation):
            series = series.div_one_minus(a)
        return series

    def r_counts(self, ks: Iterable[int], p: int, truncation: int) -> PSeries:
        """
        Partitions of each n <= N with no part of the form k*p^j, k in ks.

        Args:
            ks: Distinct positive integers coprime to p (may be empty)
            p: Prime
            truncation: N >= 0

        Returns:
            PSeries of r_{ks;p}(n)

        Raises:
            ValueError: If ks repeats a value or some k is divisible by p
        """
        ks = self._validate_ks(ks, p)
        series = self.partition_numbers(truncation)
        for k in ks:
            for a in powers_of(k, p, truncation):
                series = series.mul_one_minus(a)
        return series

    def fk_series(self, k: int, p: int, truncation: int) -> PSeries:
        """
        F_k(x) = sum_j a x^a / (1 - x^a) over a = k*p^j.

        P(x) F_k(x) generates the sum of M^(k) over partitions of n.

        Raises:
            ValueError: If k is divisible by p
        """
        self._validate_k(k, p)
        ensure_valid(validate_non_negative(truncation, "N"))
        coeffs = [0] * (truncation + 1)
        for a in powers_of(k, p, truncation):
            for m in range(a, truncation + 1, a):
                coeffs[m] += a
        return PSeries(tuple(coeffs))

    def gk_series(self, k: int, p: int, truncation: int) -> PSeries:
        """
        G_k(x) = F_k(x)^2 + sum_j a^2 x^a / (1 - x^a)^2 over a = k*p^j.

        P(x) G_k(x) generates the sum of (M^(k))^2 over partitions of n.

        Raises:
            ValueError: If k is divisible by p
        """
        fk = self.fk_series(k, p, truncation)
        coeffs = list(fk.mul(fk).coeffs)
        for a in powers_of(k, p, truncation):
            square = a * a
            for i, m in enumerate(range(a, truncation + 1, a), start=1):
                coeffs[m] += square * i
        return PSeries(tuple(coeffs))

    def pf_coefficient(self, k: int, p: int, n: int) -> int:
        """
        (P F_k)[n] without forming the full product.

        Equal to sum_j a * sum_{i>=1} p(n - i a), a = k*p^j.

        Raises:
            ValueError: If k is divisible by p
        """
        self._validate_k(k, p)
        ensure_valid(validate_non_negative(n, "n"))
        partition_number(n)
        total = 0
        for a in powers_of(k, p, n):
            total += a * sum(_PARTITION_NUMBERS[m] for m in range(n - a, -1, -a))
        return total

    def m_distribution(self, k: int, p: int, n: int) -> List[int]:
        """
        Number of partitions of n with M^(k) = m, for m = 0..n.

        h(n, m) = r_{k;p}(n - m) * q_p(m / k) when k divides m, else 0.

        Raises:
            ValueError: If k is divisible by p
        """
        self._validate_k(k, p)
        ensure_valid(validate_non_negative(n, "n"))
        r = self.r_counts([k], p, n)
        q = self.qp_counts(p, n // k)
        return [r[n - m] * q[m // k] if m % k == 0 else 0 for m in range(n + 1)]

    def eq41_bound(self, n: int, p: int, ks: Sequence[int], cap: int) -> Fraction:
        """
        Fraction of partitions of n whose k*p^j parts sum to at most cap,
        simultaneously for every k in ks.

        (1/p(n)) * sum over l_i <= cap with k_i | l_i of
        r_{ks;p}(n - sum l_i) * prod q_p(l_i / k_i).

        Args:
            n: Size
            p: Prime
            ks: Distinct positive integers coprime to p
            cap: Bound on each l_i, 0 <= cap <= n

        Returns:
            Exact rational in [0, 1]; 1 when cap = n
        """
        ks = self._validate_ks(ks, p)
        self._validate_cap(n, cap)
        q = self.qp_counts(p, cap)
        series = self.r_counts(ks, p, n)
        for k in ks:
            capped = [0] * (n + 1)
            for ell in range(0, cap + 1, k):
                capped[ell] = q[ell // k]
            series = series.mul(PSeries(tuple(capped)))
        return Fraction(series[n], partition_number(n))

    def fp_exact(self, n: int, k: int, p: int, cap: int) -> Fraction:
        """
        Fraction of partitions of n with M^(k) <= cap.

        A cap above n is treated as n.

        Returns:
            (1/p(n)) * sum_{l <= cap, k | l} r_{k;p}(n - l) q_p(l / k)
        """
        self._validate_cap(n, min(cap, n))
        return self._fp_sum(n, k, p, 0, min(cap, n))

    def fp_tail(self, n: int, k: int, p: int, cap: int) -> Fraction:
        """
        Fraction of partitions of n with M^(k) > cap; fp_exact + fp_tail = 1.
        """
        self._validate_cap(n, min(cap, n))
        return self._fp_sum(n, k, p, cap + 1, n)

    def _fp_sum(self, n: int, k: int, p: int, low: int, high: int) -> Fraction:
        self._validate_k(k, p)
        r = self.r_counts([k], p, n)
        q = self.qp_counts(p, n // k)
        start = -(-low // k) * k
        total = sum(r[n - ell] * q[ell // k] for ell in range(start, high + 1, k))
        return Fraction(total, partition_number(n))

    def lemma41_ratio(self, n: int, p: int, ks: Sequence[int], cap: int) -> Fraction:
        """
        Joint capped fraction divided by the product of the single ones.

        eq41_bound(n, p, ks, cap) / prod_k fp_exact(n, k, p, cap); tends to
        1 as n grows with a suitable cap.

        Raises:
            ValueError: If ks has fewer than two values or repeats one
            DegenerateRatioError: If some fp_exact is 0
        """
        ks = self._validate_ks(ks, p)
        if len(ks) < 2:
            raise ValueError(f"Need at least two values of k, got {list(ks)}")

        denominator = Fraction(1)
        for k in ks:
            single = self.fp_exact(n, k, p, cap)
            if single == 0:
                raise DegenerateRatioError(f"fp_exact(n={n}, k={k}, p={p}, cap={cap}) is 0")
            denominator *= single

        ratio = self.eq41_bound(n, p, ks, cap) / denominator
        logger.debug(f"Factorization ratio n={n} p={p} ks={list(ks)} cap={cap}: {float(ratio)}")
        return ratio

    def _validate_k(self, k: int, p: int) -> None:
        ensure_valid(validate_prime(p))
        ensure_valid(validate_coprime(k, p))

    def _validate_ks(self, ks: Iterable[int], p: int) -> Tuple[int, ...]:
        ks = tuple(ks)
        ensure_valid(validate_prime(p))
        ensure_valid(validate_distinct(ks))
        for k in ks:
            ensure_valid(validate_coprime(k, p))
        return ks

    def _validate_cap(self, n: int, cap: int) -> None:
        ensure_valid(validate_non_negative(n, "n"))
        if cap < 0 or cap > n:
            raise ValueError(f"cap must be in [0, n], got cap={cap}, n={n}")
