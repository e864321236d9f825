"""
SnCharLab Asymptotic Service

Floating-point evaluation of the asymptotic formulas for partition
counts, t-core fractions, moments of M^(k), the largest-part law, and
the sign criterion that singles out the primes p <= 13. Every estimator
can be paired with an exact value from the series service.
"""

import logging
import math
from fractions import Fraction
from typing import Dict, Iterable, Tuple

import mpmath
from sympy import primerange

from app.constants import (
    COVERING_DPS,
    COVERING_KS,
    COVERING_SLACK,
    CRITICAL_PRIME_LIMIT,
    FK_NUMERIC_CUTOFF,
)
from models.asymptotic import AsymptoticReport, GpParams
from services.series_service import SeriesService, partition_number
from utils.validators import ensure_valid, validate_coprime, validate_positive, validate_prime

logger = logging.getLogger(__name__)

SQRT6 = math.sqrt(6)
# Overflow guard for exp/expm1 in double precision
_EXP_LIMIT = 700.0


def covering_bound_p2() -> float:
    """Arc length log2((1/log 2 - 1/100) / (1 + 1/100)) of the base-2 covering step."""
    return math.log2((1 / math.log(2) - COVERING_SLACK) / (1 + COVERING_SLACK))


class AsymptoticService:
    """
    Service for asymptotic estimators and numeric criteria.

    Uses double precision throughout, with mpmath where values leave the
    double range.
    """

    def __init__(self, series: SeriesService):
        """
        Initialize the asymptotic service.

        Args:
            series: Series service supplying exact oracles
        """
        self.series = series

    def rademacher_estimate(self, n: int) -> float:
        """
        First term of Rademacher's series for p(n).

        Args:
            n: n >= 1

        Returns:
            exp(pi sqrt(2n/3)) / (4 sqrt(3) n) (inf beyond double range)
        """
        ensure_valid(validate_positive(n, "n"))
        return float(self._rademacher_mp(n))

    def _rademacher_mp(self, n: int):
        return mpmath.exp(mpmath.pi * mpmath.sqrt(mpmath.mpf(2 * n) / 3)) / (
            4 * mpmath.sqrt(3) * n
        )

    def rademacher_report(self, n: int) -> AsymptoticReport:
        """Compare the first Rademacher term with the exact p(n)."""
        ensure_valid(validate_positive(n, "n"))
        return AsymptoticReport.compare("p(n)", self._rademacher_mp(n), partition_number(n))

    def tcore_fraction_bound(self, n: int, t: int) -> float:
        """
        Lower bound 1 - (t+1) p(n-t)/p(n) on the fraction of t-cores of n.

        Args:
            n: Size
            t: 1 <= t <= n

        Returns:
            The bound (possibly negative)
        """
        bound = self.series.morotti_lower_bound(t, n)
        return float(Fraction(bound, partition_number(n)))

    def lemma23_threshold(self, n: int, M: float) -> float:
        """
        Strip length t = (sqrt6/2pi) sqrt(n) log n + (sqrt6/pi) M sqrt(n).

        Partitions of n are t-cores for this t with probability tending to 1
        as M grows.

        Raises:
            ValueError: If n < 2
        """
        self._require_at_least_two(n)
        return SQRT6 / (2 * math.pi) * math.sqrt(n) * math.log(n) + SQRT6 / math.pi * M * math.sqrt(n)

    def moment_main_term(self, n: int, p: int) -> float:
        """
        Leading term (sqrt6 / (2 pi log p)) sqrt(n) log n of the mean of M^(k).

        Raises:
            ValueError: If n < 2 or p is not prime
        """
        self._require_at_least_two(n)
        ensure_valid(validate_prime(p))
        return SQRT6 / (2 * math.pi * math.log(p)) * math.sqrt(n) * math.log(n)

    def fk_numeric(self, k: int, p: int, t: float) -> float:
        """
        F_k(e^{-t}) = sum_j a e^{-ta} / (1 - e^{-ta}), a = k p^j.

        Summation stops once t*a > 1 and a term falls below 1e-15 of the
        running sum.

        Raises:
            ValueError: If t <= 0 or k is divisible by p
        """
        self._validate_numeric(k, p, t)
        total = 0.0
        for a in self._powers(k, p):
            x = t * a
            if x > _EXP_LIMIT:
                break
            term = a / math.expm1(x)
            total += term
            if x > 1 and term < FK_NUMERIC_CUTOFF * total:
                break
        return total

    def gk_numeric(self, k: int, p: int, t: float) -> float:
        """
        G_k(e^{-t}) = F_k(e^{-t})^2 + sum_j a^2 e^{-ta} / (1 - e^{-ta})^2.

        Raises:
            ValueError: If t <= 0 or k is divisible by p
        """
        fk = self.fk_numeric(k, p, t)
        total = fk * fk
        for a in self._powers(k, p):
            x = t * a
            if x > _EXP_LIMIT:
                break
            term = a * a * math.exp(-x) / math.expm1(-x) ** 2
            total += term
            if x > 1 and term < FK_NUMERIC_CUTOFF * total:
                break
        return total

    def mahler_estimate(self, p: int, n: int) -> float:
        """
        Mahler's estimate of the number of partitions of n into powers of p.

        exp((1/(2 log p)) log(n/p / log(n/p))^2
            + (1/2 + 1/log p + log log p / log p) log n)

        Raises:
            ValueError: If n <= p
        """
        ensure_valid(validate_prime(p))
        if n <= p:
            raise ValueError(f"n must exceed p, got n={n}, p={p}")
        return float(mpmath.exp(self._mahler_log(p, n)))

    def _mahler_log(self, p: int, n: int):
        log_p = mpmath.log(p)
        ratio = mpmath.mpf(n) / p
        inner = mpmath.log(ratio / mpmath.log(ratio))
        return inner**2 / (2 * log_p) + (
            mpmath.mpf(1) / 2 + 1 / log_p + mpmath.log(log_p) / log_p
        ) * mpmath.log(n)

    def mahler_report(self, p: int, n: int) -> AsymptoticReport:
        """Compare Mahler's estimate with the exact q_p(n) on a log scale."""
        if n <= p:
            raise ValueError(f"n must exceed p, got n={n}, p={p}")
        exact = self.series.qp_counts(p, n)[n]
        return AsymptoticReport.compare("q_p(n)", mpmath.exp(self._mahler_log(p, n)), exact)

    def erdos_lehner(self, n: int, M: float) -> Tuple[float, float]:
        """
        Largest-part law for a uniform partition of n.

        Args:
            n: n >= 2
            M: Offset

        Returns:
            (threshold, probability that the largest part is >= threshold),
            probability 1 - exp(-exp(-M))
        """
        self._require_at_least_two(n)
        root = math.sqrt(n)
        threshold = (
            SQRT6 / (2 * math.pi) * root * math.log(n)
            + SQRT6 / math.pi * math.log(SQRT6 / math.pi) * root
            + SQRT6 / math.pi * M * root
        )
        if -M > _EXP_LIMIT:
            return threshold, 1.0
        return threshold, -math.expm1(-math.exp(-M))

    def eq21_threshold(self, n: int, gamma: float) -> float:
        """Part-size threshold (1 + gamma) (sqrt6/2pi) sqrt(n) log n."""
        ensure_valid(validate_positive(n, "n"))
        return (1 + gamma) * SQRT6 / (2 * math.pi) * math.sqrt(n) * math.log(n)

    def eq21_predicate(self, Mval: int, k: int, p: int, gamma: float, n: int) -> bool:
        """
        Whether M^(k) = Mval forces a part >= the eq21_threshold in the p-reduction.

        True iff floor(log_p(Mval/k)) >= log_p(threshold / k), i.e. iff
        k p^d >= threshold for the largest d with k p^d <= Mval.

        Raises:
            ValueError: If Mval < 0, k < 1 or k is divisible by p
        """
        ensure_valid(validate_prime(p))
        ensure_valid(validate_coprime(k, p))
        if Mval < 0:
            raise ValueError(f"Mval must be non-negative, got {Mval}")
        if Mval < k:
            return False

        top = k
        while top * p <= Mval:
            top *= p
        return top >= self.eq21_threshold(n, gamma)

    def g_p(self, params: GpParams) -> float:
        """
        g_p(gamma, eps) = (1/4 + eps)(1 + log(2 gamma / (p (1 + 4 eps))) + log log p) / log p
                          - gamma / 2

        log log 2 < 0 is used as is.
        """
        p, gamma, eps = params.p, params.gamma, params.eps
        log_p = math.log(p)
        return (0.25 + eps) * (
            1 + math.log(2 * gamma / (p * (1 + 4 * eps))) + math.log(log_p)
        ) / log_p - gamma / 2

    def g_p_max_closed_form(self, p: int, delta: float) -> float:
        """
        Printed maximum over eps in [0, 1/4] of g_p(1 + delta, eps):
        -1/2 + (1 - 2 delta log p - log(p / (2 - 2 delta)) + log log p) / (4 log p).

        Raises:
            ValueError: If delta is outside [0, 1)
        """
        ensure_valid(validate_prime(p))
        self._validate_delta(delta)
        log_p = math.log(p)
        return -0.5 + self._criterion(p, delta) / (4 * log_p)

    def critical_prime_check(self, delta: float) -> Dict[int, int]:
        """
        Sign of 1 - 2 delta log p - log(p / (2 - 2 delta)) + log log p
        for every prime p <= 50.

        Args:
            delta: 0 <= delta < 1

        Returns:
            Map prime -> +1, 0 or -1

        Raises:
            ValueError: If delta is outside [0, 1)
        """
        self._validate_delta(delta)
        signs = {}
        for p in primerange(2, CRITICAL_PRIME_LIMIT + 1):
            value = self._criterion(int(p), delta)
            signs[int(p)] = (value > 0) - (value < 0)
        logger.debug(f"Critical prime signs at delta={delta}: {signs}")
        return signs

    def _criterion(self, p: int, delta: float) -> float:
        log_p = math.log(p)
        return 1 - 2 * delta * log_p - math.log(p / (2 - 2 * delta)) + math.log(log_p)

    def covering_check(self, ks: Iterable[int], p: int, bound: float) -> bool:
        """
        Whether the arcs [{log_p k}, {log_p k} + bound] mod 1 cover the circle.

        The arcs cover exactly when every cyclic gap between consecutive
        arc starts is at most bound.

        Args:
            ks: Arc anchors
            p: Base of the logarithm
            bound: Arc length

        Returns:
            True if every r in [0, 1) lies on some arc

        Raises:
            ValueError: If p is not prime or an anchor is not a positive integer
        """
        ensure_valid(validate_prime(p))
        anchors = set()
        for k in ks:
            ensure_valid(validate_positive(k, "k"))
            # {log_p k} is unchanged by dropping factors of p
            while k % p == 0:
                k //= p
            anchors.add(k)
        if not anchors or bound < 0:
            return False
        if bound >= 1:
            return True

        with mpmath.workdps(COVERING_DPS):
            log_p = mpmath.log(p)
            starts = sorted(
                mpmath.mpf(0) if k == 1 else mpmath.frac(mpmath.log(k) / log_p) for k in anchors
            )
            gaps = [b - a for a, b in zip(starts, starts[1:])]
            gaps.append(1 + starts[0] - starts[-1])
            return bool(max(gaps) <= mpmath.mpf(bound))

    def covering_check_p2(self) -> bool:
        """Base-2 covering step with ks = (1, 3, 5)."""
        return self.covering_check(COVERING_KS, 2, covering_bound_p2())

    def _powers(self, k: int, p: int):
        a = k
        while True:
            yield a
            a *= p

    def _validate_numeric(self, k: int, p: int, t: float) -> None:
        ensure_valid(validate_prime(p))
        ensure_valid(validate_coprime(k, p))
        if t <= 0:
            raise ValueError(f"t must be positive, got {t}")

    def _validate_delta(self, delta: float) -> None:
        if delta < 0 or delta >= 1:
            raise ValueError(f"delta must be in [0, 1), got {delta}")

    def _require_at_least_two(self, n: int) -> None:
        if n < 2:
            raise ValueError(f"n must be at least 2, got {n}")
