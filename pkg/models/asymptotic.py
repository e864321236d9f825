"""
SnCharLab Asymptotic Models

Parameters of the g_p sign scan and estimator-vs-exact reports.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

import mpmath

from utils.validators import ensure_valid, validate_prime

Exact = Union[int, Fraction]


@dataclass(frozen=True)
class GpParams:
    """
    Inputs of g_p(gamma, eps).

    Attributes:
        p: Prime
        gamma: Multiplier of the threshold, > 0
        eps: Exponent slack, in [0, 1/4]
        delta: Offset with gamma = 1 + delta in the sign scan
        t0: Saddle point pi / sqrt(6 m), > 0
        m: Size the saddle point belongs to
    """

    p: int
    gamma: float
    eps: float = 0.0
    delta: float = 0.0
    t0: float = 1.0
    m: int = 1

    def __post_init__(self) -> None:
        ensure_valid(validate_prime(self.p))
        if self.gamma <= 0:
            raise ValueError(f"gamma must be positive, got {self.gamma}")
        if not 0 <= self.eps <= 0.25:
            raise ValueError(f"eps must be in [0, 1/4], got {self.eps}")
        if self.t0 <= 0:
            raise ValueError(f"t0 must be positive, got {self.t0}")

    @classmethod
    def for_size(
        cls, p: int, m: int, gamma: float, eps: float = 0.0, delta: float = 0.0
    ) -> "GpParams":
        """Create parameters with t0 = pi / sqrt(6 m)."""
        if m < 1:
            raise ValueError(f"m must be positive, got {m}")
        return cls(p=p, gamma=gamma, eps=eps, delta=delta, t0=math.pi / math.sqrt(6 * m), m=m)


@dataclass
class AsymptoticReport:
    """
    An estimate paired with its exact value.

    Attributes:
        quantity: Name of the estimated quantity
        estimate: Estimated value
        exact: Exact value, when known
        relative_error: |estimate - exact| / exact (None without exact or when exact = 0)
        log_ratio: log(estimate) / log(exact), for quantities compared on a log scale
    """

    quantity: str
    estimate: float
    exact: Optional[Exact] = None
    relative_error: Optional[float] = None
    log_ratio: Optional[float] = None

    @classmethod
    def compare(cls, quantity: str, estimate, exact: Optional[Exact]) -> "AsymptoticReport":
        """
        Build a report, measuring the error in extended precision.

        Args:
            quantity: Name of the quantity
            estimate: Estimate (float or mpmath number)
            exact: Exact value or None
        """
        relative_error = None
        log_ratio = None
        if exact is not None and exact != 0:
            exact_mp = mpmath.mpf(exact.numerator) / exact.denominator if isinstance(
                exact, Fraction
            ) else mpmath.mpf(exact)
            estimate_mp = mpmath.mpf(estimate)
            relative_error = float(abs(estimate_mp - exact_mp) / abs(exact_mp))
            if exact_mp > 1 and estimate_mp > 0:
                log_ratio = float(mpmath.log(estimate_mp) / mpmath.log(exact_mp))
        return cls(
            quantity=quantity,
            estimate=float(estimate),
            exact=exact,
            relative_error=relative_error,
            log_ratio=log_ratio,
        )

    def to_dict(self) -> dict:
        """Convert to dictionary for report output."""
        return {
            "quantity": self.quantity,
            "estimate": self.estimate,
            "exact": None if self.exact is None else str(self.exact),
            "relative_error": self.relative_error,
            "log_ratio": self.log_ratio,
        }
