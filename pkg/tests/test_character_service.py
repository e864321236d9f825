"""
SnCharLab Character Service Tests

Tests for character values and tables against small known tables and
the orthogonality relations.
"""

import math

import pytest

from core.budgets import BudgetExceededError
from core.config import LabConfig
from models.partition import Partition
from services.character_service import CharacterService
from utils.partitions import enumerate_partitions

S4_TABLE = {
    # rows lambda; columns (4), (3,1), (2,2), (2,1,1), (1,1,1,1)
    (4,): [1, 1, 1, 1, 1],
    (3, 1): [-1, 0, -1, 1, 3],
    (2, 2): [0, -1, 2, 0, 2],
    (2, 1, 1): [1, 0, -1, -1, 3],
    (1, 1, 1, 1): [-1, 1, 1, -1, 1],
}


class TestCharacterValues:
    """Tests for single character values."""

    def test_s3_values(self, character_service):
        """Test the character table of S_3 entry by entry."""
        chi = character_service.chi
        lam = Partition((2, 1))
        assert chi(lam, Partition((3,))).value == -1
        assert chi(lam, Partition((2, 1))).value == 0
        assert chi(lam, Partition((1, 1, 1))).value == 2
        assert chi(Partition((1, 1, 1)), Partition((2, 1))).value == -1

    def test_s4_table(self, character_service):
        """Test every entry of the S_4 table."""
        table = character_service.character_table(4)
        for lam_parts, expected in S4_TABLE.items():
            assert list(table.row(Partition(lam_parts))) == expected

    def test_size_mismatch(self, character_service):
        """Test that |lambda| != |mu| is a domain error."""
        with pytest.raises(ValueError):
            character_service.chi(Partition((2,)), Partition((1,)))

    def test_empty_partition(self, character_service):
        """Test the trivial group S_0."""
        assert character_service.chi(Partition(()), Partition(())).value == 1

    def test_order_independence(self, character_service):
        """Test that consuming mu smallest-first gives the same values."""
        for lam in enumerate_partitions(6):
            for mu in enumerate_partitions(6):
                assert character_service.chi(lam, mu) == character_service.chi(lam, mu, ascending=True)

    def test_mod_matches_exact(self, character_service):
        """Test that arithmetic mod p agrees with reducing the exact value."""
        for lam in enumerate_partitions(7):
            for mu in enumerate_partitions(7):
                exact = character_service.chi(lam, mu).value
                assert character_service.chi_mod(lam, mu, 3).value == exact % 3

    def test_degree_and_centralizer(self, character_service):
        """Test hook-length degrees and centralizer orders."""
        assert character_service.degree(Partition((3, 1))) == 3
        assert character_service.degree(Partition(())) == 1
        assert character_service.centralizer_size(Partition((2, 1, 1))) == 4
        assert character_service.centralizer_size(Partition((1, 1, 1, 1))) == 24


class TestCharacterTable:
    """Tests for full tables."""

    @pytest.mark.parametrize("n", range(1, 9))
    def test_column_orthogonality(self, character_service, n):
        """Test sum over lambda of chi_mu chi_nu = delta z_mu."""
        table = character_service.character_table(n)
        for i, col_a in enumerate(table.columns):
            for j, col_b in enumerate(table.columns):
                total = sum(a * b for a, b in zip(col_a.values, col_b.values))
                expected = character_service.centralizer_size(col_a.mu) if i == j else 0
                assert total == expected

    @pytest.mark.slow
    @pytest.mark.parametrize("n", range(9, 13))
    def test_column_orthogonality_large(self, character_service, n):
        """Test column orthogonality up to n = 12."""
        table = character_service.character_table(n)
        for i, col_a in enumerate(table.columns):
            for j in range(i, table.size):
                col_b = table.columns[j]
                total = sum(a * b for a, b in zip(col_a.values, col_b.values))
                assert total == (character_service.centralizer_size(col_a.mu) if i == j else 0)

    @pytest.mark.parametrize("n", range(0, 12))
    def test_identity_column_is_degree(self, character_service, n):
        """Test that the column of the identity class holds the degrees."""
        column = character_service.character_column(Partition((1,) * n))
        degrees = [character_service.degree(lam) for lam in enumerate_partitions(n)]
        assert list(column.values) == degrees
        assert sum(d * d for d in degrees) == math.factorial(n)

    @pytest.mark.slow
    @pytest.mark.parametrize("n", range(12, 15))
    def test_identity_column_large(self, character_service, n):
        """Test the identity column up to n = 14."""
        column = character_service.character_column(Partition((1,) * n))
        assert list(column.values) == [character_service.degree(lam) for lam in enumerate_partitions(n)]

    def test_s3_mod2_divisible_count(self, character_service):
        """Test the S_3 table modulo 2."""
        table = character_service.character_table(3, modulus=2)
        assert table.total_entries == 9
        assert table.divisible_count(2) == 2

    def test_zero_count(self, character_service):
        """Test the zeros of the S_4 table."""
        assert character_service.character_table(4).zero_count() == 4

    def test_budget_exceeded(self, character_service):
        """Test that tables above the budget are refused before any work."""
        with pytest.raises(BudgetExceededError) as err:
            character_service.character_table(19)
        assert err.value.limit == 18
        assert err.value.requested == 19

    def test_mod_budget(self, character_service):
        """Test the separate budget for residue tables."""
        with pytest.raises(BudgetExceededError):
            character_service.character_table(21, modulus=2)

    def test_bad_modulus(self, character_service):
        """Test that a composite modulus is rejected."""
        with pytest.raises(ValueError):
            character_service.character_table(4, modulus=4)

    def test_memory_cap_reports_progress(self):
        """Test that a tiny memory cap aborts with partial progress."""
        service = CharacterService(LabConfig(memory_cap_mb=0.001))
        with pytest.raises(BudgetExceededError) as err:
            service.character_table(6)
        assert err.value.budget == "memory_cap_mb"
        assert err.value.completed < err.value.total == 11

    def test_parallel_matches_serial(self, character_service):
        """Test that a process pool gives the same table."""
        parallel = CharacterService(LabConfig(threads=2))
        assert parallel.character_table(7).to_rows() == character_service.character_table(7).to_rows()

    def test_cache_is_used(self, lab_config, table_cache):
        """Test that a built table is written to and then read from the cache."""
        service = CharacterService(lab_config, table_cache)
        first = service.character_table(5)
        path = table_cache.table_path(5)
        assert path.exists()
        mtime = path.stat().st_mtime_ns
        second = service.character_table(5)
        assert second.to_rows() == first.to_rows()
        assert path.stat().st_mtime_ns == mtime

    def test_mod_request_served_from_exact_cache(self, lab_config, table_cache):
        """Test that a cached exact table answers a mod-p request."""
        service = CharacterService(lab_config, table_cache)
        exact = service.character_table(5)
        reduced = service.character_table(5, modulus=3)
        assert reduced.modulus == 3
        assert reduced.to_rows() == exact.reduce(3).to_rows()
        assert not table_cache.table_path(5, 3).exists()

    def test_memory_cap_cancels_pending_columns(self, monkeypatch):
        """Test that hitting the cap in a pool cancels the columns still queued."""
        shutdowns = []

        class RecordingExecutor:
            def __init__(self, max_workers):
                self.max_workers = max_workers

            def __enter__(self):
                return self

            def __exit__(self, *exc_info):
                self.shutdown()
                return False

            def map(self, fn, tasks, chunksize=1):
                return map(fn, tasks)

            def shutdown(self, wait=True, cancel_futures=False):
                shutdowns.append(cancel_futures)

        monkeypatch.setattr("services.character_service.ProcessPoolExecutor", RecordingExecutor)
        service = CharacterService(LabConfig(threads=2, memory_cap_mb=0.001))
        with pytest.raises(BudgetExceededError) as err:
            service.character_table(6)
        assert err.value.completed < err.value.total
        assert shutdowns[0] is True
