"""
SnCharLab Partition Utility Tests

Tests for enumeration, hooks, beta-sets, t-cores, border strips,
p-reduction and the M^(k) statistic.
"""

from typing import List

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.utilities.iterables import partitions as sympy_partitions

from models.partition import Partition
from utils.partitions import (
    base_p_digits,
    beta_set,
    border_strips,
    conjugate,
    coprime_root,
    enumerate_partitions,
    hook_lengths,
    is_k_power_of_p,
    is_t_core,
    iter_partitions,
    iter_partitions_with_largest,
    m_statistic,
    p_reduce,
    partition_index,
)

partitions_strategy = st.lists(st.integers(min_value=1, max_value=9), max_size=9).map(
    lambda parts: Partition(tuple(sorted(parts, reverse=True)))
)


class TestEnumeration:
    """Tests for partition enumeration."""

    def test_reverse_lex_order(self):
        """Test that partitions of 5 come in reverse-lexicographic order."""
        parts = [lam.parts for lam in iter_partitions(5)]
        assert parts == [
            (5,),
            (4, 1),
            (3, 2),
            (3, 1, 1),
            (2, 2, 1),
            (2, 1, 1, 1),
            (1, 1, 1, 1, 1),
        ]

    def test_zero_has_one_partition(self):
        """Test that n = 0 gives the single empty partition."""
        assert enumerate_partitions(0) == (Partition(()),)

    def test_negative_rejected(self):
        """Test that negative n is a domain error."""
        with pytest.raises(ValueError):
            list(iter_partitions(-1))

    @pytest.mark.parametrize("n", range(0, 16))
    def test_counts_match_independent_enumeration(self, n):
        """Test that every partition appears exactly once."""
        ours = enumerate_partitions(n)
        expected = sum(1 for _ in sympy_partitions(n)) if n else 1
        assert len(ours) == expected
        assert len(set(ours)) == len(ours)
        assert all(lam.n == n for lam in ours)

    def test_max_part(self):
        """Test enumeration with a bound on the largest part."""
        parts = [lam.parts for lam in iter_partitions(6, max_part=2)]
        assert parts == [(2, 2, 2), (2, 2, 1, 1), (2, 1, 1, 1, 1), (1, 1, 1, 1, 1, 1)]

    def test_with_largest(self):
        """Test partitions with a fixed largest part."""
        parts = [lam.parts for lam in iter_partitions_with_largest(6, 3)]
        assert parts == [(3, 3), (3, 2, 1), (3, 1, 1, 1)]
        assert list(iter_partitions_with_largest(6, 7)) == []

    def test_partition_index(self):
        """Test canonical positions."""
        index = partition_index(4)
        assert index[Partition((4,))] == 0
        assert index[Partition((1, 1, 1, 1))] == 4


class TestHooksAndCores:
    """Tests for conjugates, hook lengths, beta-sets and t-cores."""

    def test_conjugate(self):
        """Test transposing a diagram."""
        assert conjugate(Partition((3, 1))) == Partition((2, 1, 1))
        assert conjugate(Partition(())) == Partition(())

    @given(partitions_strategy)
    def test_conjugate_is_involution(self, lam):
        """Test that conjugating twice gives the partition back."""
        assert conjugate(conjugate(lam)) == lam
        assert conjugate(lam).n == lam.n

    @given(partitions_strategy)
    def test_hook_multiset_is_conjugation_invariant(self, lam):
        """Test that a diagram and its transpose have the same hook lengths."""
        hooks = sorted(hook_lengths(lam).all_hooks())
        assert hooks == sorted(hook_lengths(conjugate(lam)).all_hooks())

    def test_hook_lengths(self):
        """Test hook lengths of (3,1)."""
        hooks = hook_lengths(Partition((3, 1)))
        assert hooks.hooks == ((4, 2, 1), (1,))
        assert hooks.product() == 8

    def test_beta_set(self):
        """Test first-column hook lengths with and without padding."""
        lam = Partition((3, 1))
        assert beta_set(lam) == (4, 1)
        assert beta_set(lam, 3) == (5, 2, 0)
        with pytest.raises(ValueError):
            beta_set(lam, 1)

    def test_known_cores(self):
        """Test staircase and hook examples."""
        assert is_t_core(Partition((2, 1)), 2)
        assert not is_t_core(Partition((3, 1)), 2)
        assert is_t_core(Partition((3, 1)), 3)
        assert is_t_core(Partition(()), 1)
        assert not is_t_core(Partition((1,)), 1)

    @settings(max_examples=200)
    @given(partitions_strategy, st.integers(min_value=1, max_value=12))
    def test_core_test_agrees_with_hooks(self, lam, t):
        """Test the beta-set test against the definition by hook lengths."""
        assert is_t_core(lam, t) == (not hook_lengths(lam).has_hook_divisible_by(t))

    def test_t_must_be_positive(self):
        """Test that t = 0 is rejected."""
        with pytest.raises(ValueError):
            is_t_core(Partition((2,)), 0)


class TestBorderStrips:
    """Tests for border strip removal."""

    def test_single_strip(self):
        """Test removing a domino from (3,1)."""
        removals = border_strips(Partition((3, 1)), 2)
        assert len(removals) == 1
        assert removals[0].result == Partition((1, 1))
        assert removals[0].height == 1
        assert removals[0].sign == 1

    def test_two_strips_with_signs(self):
        """Test the vertical and horizontal dominoes of (2,2)."""
        removals = {r.result: r for r in border_strips(Partition((2, 2)), 2)}
        assert set(removals) == {Partition((1, 1)), Partition((2,))}
        assert removals[Partition((1, 1))].sign == -1
        assert removals[Partition((1, 1))].height == 2
        assert removals[Partition((2,))].sign == 1

    @settings(max_examples=200)
    @given(partitions_strategy, st.integers(min_value=1, max_value=10))
    def test_strips_exist_iff_hook(self, lam, t):
        """Test that a strip of length t exists exactly when some hook equals t."""
        removals = border_strips(lam, t)
        assert bool(removals) == hook_lengths(lam).has_hook(t)
        for removal in removals:
            assert removal.result.n == lam.n - t
            assert removal.sign == (-1) ** (removal.height - 1)


class TestReduction:
    """Tests for p-reduction and M^(k)."""

    def test_p_reduce(self):
        """Test merging equal parts."""
        assert p_reduce(Partition((1, 1, 1, 1)), 2) == Partition((4,))
        assert p_reduce(Partition((2, 1, 1, 1)), 2) == Partition((4, 1))
        assert p_reduce(Partition((3, 3, 3, 1)), 3) == Partition((9, 1))

    def test_p_reduce_needs_prime(self):
        """Test that a composite modulus is rejected."""
        with pytest.raises(ValueError):
            p_reduce(Partition((1, 1)), 4)

    @given(partitions_strategy, st.sampled_from([2, 3, 5, 7]))
    def test_p_reduce_properties(self, mu, p):
        """Test size preservation, multiplicities below p and idempotence."""
        reduced = p_reduce(mu, p)
        assert reduced.n == mu.n
        assert all(count < p for count in reduced.multiplicities().values())
        assert p_reduce(reduced, p) == reduced

    def test_m_statistic(self):
        """Test sums of parts of the form k*p^j."""
        mu = Partition((4, 3, 2, 1, 1))
        assert m_statistic(mu, 1, 2) == 8
        assert m_statistic(mu, 3, 2) == 3
        assert m_statistic(mu, 5, 2) == 0

    def test_m_statistic_needs_coprime_k(self):
        """Test that k divisible by p is rejected."""
        with pytest.raises(ValueError):
            m_statistic(Partition((2,)), 2, 2)

    def test_helpers(self):
        """Test k*p^j detection, coprime roots and base-p digits."""
        assert is_k_power_of_p(12, 3, 2)
        assert is_k_power_of_p(3, 3, 2)
        assert not is_k_power_of_p(9, 3, 2)
        assert coprime_root(12, 2) == 3
        assert base_p_digits(10, 3) == [1, 0, 1]
        assert base_p_digits(0, 2) == []


def coprime_ks(n: int, p: int) -> List[int]:
    """Every k <= n coprime to p."""
    return [k for k in range(1, n + 1) if k % p]


def assert_digit_readoff(mu: Partition, p: int) -> None:
    """Check that M^(k)/k in base p lists the k*p^j multiplicities of the p-reduction."""
    multiplicities = p_reduce(mu, p).multiplicities()
    for k in coprime_ks(mu.n, p):
        total = m_statistic(mu, k, p)
        assert total % k == 0
        places = []
        size = k
        while size <= mu.n:
            places.append(multiplicities.get(size, 0))
            size *= p
        while places and places[-1] == 0:
            places.pop()
        assert base_p_digits(total // k, p) == places


class TestDigitReadoff:
    """Tests for reading M^(k) off the p-reduction."""

    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_readoff_small(self, p):
        """Test the base-p readoff for every partition of n <= 12."""
        for n in range(0, 13):
            for mu in iter_partitions(n):
                assert_digit_readoff(mu, p)

    @pytest.mark.slow
    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_readoff_to_25(self, p):
        """Test the base-p readoff for every partition of 13 <= n <= 25."""
        for n in range(13, 26):
            for mu in iter_partitions(n):
                assert_digit_readoff(mu, p)

    @given(partitions_strategy, st.sampled_from([2, 3, 5]))
    def test_statistics_sum_to_n(self, mu, p):
        """Test that M^(k) over all k coprime to p adds up to n."""
        assert sum(m_statistic(mu, k, p) for k in coprime_ks(mu.n, p)) == mu.n

    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_statistics_sum_to_n_exhaustive(self, p):
        """Test the same identity over every partition of n <= 15."""
        for n in range(0, 16):
            for mu in iter_partitions(n):
                assert sum(m_statistic(mu, k, p) for k in coprime_ks(n, p)) == n
