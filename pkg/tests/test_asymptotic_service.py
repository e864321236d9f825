"""
SnCharLab Asymptotic Service Tests

Tests for the estimators against exact values and for the numeric
criteria.
"""

import math

import numpy as np
import pytest

from models.asymptotic import GpParams
from services.asymptotic_service import covering_bound_p2
from services.series_service import partition_number


class TestPartitionEstimates:
    """Tests for p(n) and q_p(n) estimates."""

    def test_rademacher_error(self, asymptotic_service):
        """Test relative error below 5% at n = 100, decreasing along 100, 400, 1600."""
        errors = [asymptotic_service.rademacher_report(n).relative_error for n in (100, 400, 1600)]
        assert errors[0] < 0.05
        assert errors[0] > errors[1] > errors[2]

    def test_rademacher_within_ten_percent(self, asymptotic_service):
        """Test relative error at most 10% for every 50 <= n <= 1000."""
        for n in range(50, 1001):
            estimate = asymptotic_service.rademacher_estimate(n)
            assert abs(estimate - partition_number(n)) <= 0.1 * partition_number(n), n

    def test_rademacher_needs_positive_n(self, asymptotic_service):
        """Test that n = 0 is rejected."""
        with pytest.raises(ValueError):
            asymptotic_service.rademacher_estimate(0)

    def test_mahler_base_two(self, asymptotic_service):
        """Test the log ratio for q_2 within 25% at 10^3 and closer at 10^4."""
        small = asymptotic_service.mahler_report(2, 1000).log_ratio
        large = asymptotic_service.mahler_report(2, 10_000).log_ratio
        assert abs(small - 1) < 0.25
        assert abs(large - 1) < abs(small - 1)

    def test_mahler_base_three(self, asymptotic_service):
        """Test the log ratio for q_3 improving from 10^3 to 10^4."""
        small = asymptotic_service.mahler_report(3, 1000).log_ratio
        large = asymptotic_service.mahler_report(3, 10_000).log_ratio
        assert abs(large - 1) < 0.25
        assert abs(large - 1) < abs(small - 1)

    def test_mahler_domain(self, asymptotic_service):
        """Test that n <= p is rejected."""
        with pytest.raises(ValueError):
            asymptotic_service.mahler_estimate(3, 3)


class TestCoreBounds:
    """Tests for t-core fraction bounds and thresholds."""

    def test_fraction_bound_is_exact_formula(self, asymptotic_service):
        """Test 1 - (t+1) p(n-t) / p(n)."""
        n, t = 30, 12
        expected = 1 - 13 * partition_number(18) / partition_number(30)
        assert asymptotic_service.tcore_fraction_bound(n, t) == pytest.approx(expected)

    def test_fraction_bound_grows_with_t(self, asymptotic_service):
        """Test monotone growth for sqrt(n) <= t <= n - 2."""
        n = 50
        bounds = [asymptotic_service.tcore_fraction_bound(n, t) for t in range(8, n - 1)]
        assert all(a <= b for a, b in zip(bounds, bounds[1:]))

    def test_core_threshold(self, asymptotic_service):
        """Test the strip-length threshold formula."""
        n, M = 400, 1.5
        expected = math.sqrt(6) / (2 * math.pi) * 20 * math.log(400) + math.sqrt(6) / math.pi * 1.5 * 20
        assert asymptotic_service.lemma23_threshold(n, M) == pytest.approx(expected)
        with pytest.raises(ValueError):
            asymptotic_service.lemma23_threshold(1, 0.0)


class TestMoments:
    """Tests for moment estimates."""

    def test_exact_mean_against_main_term(self, asymptotic_service, series_service):
        """Test the exact mean ratio in [0.4, 1.6] at n = 2000 and closer to 1 than at n = 200."""
        def ratio(n):
            mean = series_service.pf_coefficient(1, 2, n) / partition_number(n)
            return mean / asymptotic_service.moment_main_term(n, 2)

        small, large = ratio(200), ratio(2000)
        assert 0.4 <= large <= 1.6
        assert abs(large - 1) < abs(small - 1)

    def test_fk_numeric_improves(self, asymptotic_service):
        """Test F_1(e^-t) against the main term at n = 10^4, 10^6, 10^8."""
        errors = []
        for n in (10**4, 10**6, 10**8):
            t = math.pi / math.sqrt(6 * n)
            ratio = asymptotic_service.fk_numeric(1, 2, t) / asymptotic_service.moment_main_term(n, 2)
            errors.append(abs(ratio - 1))
        assert all(error < 0.2 for error in errors)
        assert errors[0] > errors[1] > errors[2]

    @pytest.mark.parametrize("k, p", [(1, 2), (3, 2), (1, 3), (2, 5)])
    def test_fk_numeric_matches_series(self, asymptotic_service, series_service, k, p):
        """Test F_k(e^-t) against its truncated coefficient sum at t = 0.05."""
        t, truncation = 0.05, 10**4
        coeffs = series_service.fk_series(k, p, truncation).coeffs
        direct = math.fsum(c * math.exp(-t * m) for m, c in enumerate(coeffs) if c)
        assert asymptotic_service.fk_numeric(k, p, t) == pytest.approx(direct, rel=1e-6)

    def test_gk_at_least_fk_squared(self, asymptotic_service):
        """Test G_k >= F_k^2."""
        for t in (0.5, 0.05, 0.005):
            fk = asymptotic_service.fk_numeric(3, 2, t)
            assert asymptotic_service.gk_numeric(3, 2, t) >= fk * fk

    def test_numeric_domain(self, asymptotic_service):
        """Test invalid t and k."""
        with pytest.raises(ValueError):
            asymptotic_service.fk_numeric(1, 2, 0.0)
        with pytest.raises(ValueError):
            asymptotic_service.gk_numeric(2, 2, 0.1)


class TestLargestPart:
    """Tests for the largest-part law and the threshold predicate."""

    def test_erdos_lehner_probability(self, asymptotic_service):
        """Test 1 - exp(-exp(-M))."""
        _, probability = asymptotic_service.erdos_lehner(10_000, 0.0)
        assert probability == pytest.approx(1 - math.exp(-1))
        _, low = asymptotic_service.erdos_lehner(10_000, 1.0)
        assert low < probability

    def test_predicate(self, asymptotic_service):
        """Test the top k*p^d against the threshold at n = 100."""
        # threshold (sqrt6/2pi) * 10 * log(100) ~ 17.95
        assert asymptotic_service.eq21_predicate(40, 1, 2, 0.0, 100)
        assert not asymptotic_service.eq21_predicate(20, 1, 2, 0.0, 100)
        assert not asymptotic_service.eq21_predicate(0, 1, 2, 0.0, 100)
        assert asymptotic_service.eq21_predicate(27, 3, 2, 0.0, 100)

    def test_predicate_domain(self, asymptotic_service):
        """Test negative M and k divisible by p."""
        with pytest.raises(ValueError):
            asymptotic_service.eq21_predicate(-1, 1, 2, 0.0, 100)
        with pytest.raises(ValueError):
            asymptotic_service.eq21_predicate(8, 2, 2, 0.0, 100)


class TestPrimeCriterion:
    """Tests for g_p and the prime cutoff."""

    def test_critical_primes(self, asymptotic_service):
        """Test positive signs exactly for p <= 13 at delta = 1e-6."""
        signs = asymptotic_service.critical_prime_check(1e-6)
        assert {p for p, sign in signs.items() if sign > 0} == {2, 3, 5, 7, 11, 13}
        assert all(signs[p] < 0 for p in (17, 19, 23, 29, 31, 37, 41, 43, 47))

    @pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13, 17])
    def test_closed_form_near_grid_maximum(self, asymptotic_service, p):
        """Test the printed maximum against a grid search over eps."""
        delta = 1e-3
        grid = [
            asymptotic_service.g_p(GpParams(p=p, gamma=1 + delta, eps=eps, delta=delta))
            for eps in np.linspace(0.0, 0.25, 101)
        ]
        closed = asymptotic_service.g_p_max_closed_form(p, delta)
        assert max(grid) == pytest.approx(closed, abs=delta / math.log(p))

    def test_gp_decreasing_in_eps(self, asymptotic_service):
        """Test that g_3(1.01, eps) falls across a grid of eps in [0, 1/4]."""
        values = [
            asymptotic_service.g_p(GpParams(p=3, gamma=1.01, eps=float(eps)))
            for eps in np.linspace(0.0, 0.25, 101)
        ]
        assert all(a > b for a, b in zip(values, values[1:]))

    def test_sign_matches_closed_form(self, asymptotic_service):
        """Test that the closed form exceeds -1/2 exactly on the positive primes."""
        signs = asymptotic_service.critical_prime_check(1e-6)
        for p, sign in signs.items():
            assert (asymptotic_service.g_p_max_closed_form(p, 1e-6) > -0.5) == (sign > 0)

    def test_delta_range(self, asymptotic_service):
        """Test that delta outside [0, 1) is rejected."""
        with pytest.raises(ValueError):
            asymptotic_service.critical_prime_check(1.0)


class TestCovering:
    """Tests for the arc covering check."""

    def test_bound_value(self):
        """Test the base-2 arc length."""
        assert covering_bound_p2() == pytest.approx(0.50436, abs=1e-5)

    def test_covering_p2(self, asymptotic_service):
        """Test that 1, 3, 5 cover and no two of them do."""
        assert asymptotic_service.covering_check_p2()
        bound = covering_bound_p2()
        for ks in ((3, 5), (1, 5), (1, 3)):
            assert not asymptotic_service.covering_check(ks, 2, bound)

    def test_full_arc(self, asymptotic_service):
        """Test trivial bounds."""
        assert asymptotic_service.covering_check([1], 2, 1.0)
        assert not asymptotic_service.covering_check([], 2, 0.5)

    def test_power_of_base_starts_at_zero(self, asymptotic_service):
        """Test that an anchor p^j shares the start of 1, leaving a full-circle gap."""
        float_start = math.log(243, 3) % 1.0
        assert not asymptotic_service.covering_check([1, 243], 3, float_start)
        assert not asymptotic_service.covering_check([9, 27], 3, 0.999999)
        assert asymptotic_service.covering_check([3, 6], 3, 1.0)

    def test_gap_just_above_bound(self, asymptotic_service):
        """Test a bound a hair below the largest gap."""
        largest_gap = math.log2(3) % 1
        assert asymptotic_service.covering_check([1, 3], 2, largest_gap + 1e-12)
        assert not asymptotic_service.covering_check([1, 3], 2, largest_gap - 1e-12)

    def test_bad_anchor(self, asymptotic_service):
        """Test that non-positive anchors and composite bases are rejected."""
        with pytest.raises(ValueError):
            asymptotic_service.covering_check([0, 3], 2, 0.5)
        with pytest.raises(ValueError):
            asymptotic_service.covering_check([1, 3], 4, 0.5)
