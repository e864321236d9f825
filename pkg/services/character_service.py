"""
SnCharLab Character Service

Evaluates irreducible characters of S_n with the Murnaghan-Nakayama
rule, exactly or modulo a prime, and builds full character tables.
"""

import logging
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, List, Optional, Tuple

from tqdm import tqdm

from core.budgets import Budget, BudgetExceededError, check_budget
from core.config import LabConfig
from models.character import CharColumn, CharTable, CharValue
from models.partition import Partition
from utils.partitions import enumerate_partitions, hook_lengths, strip_removals
from utils.validators import (
    ensure_valid,
    validate_non_negative,
    validate_prime,
    validate_same_size,
)

logger = logging.getLogger(__name__)

Parts = Tuple[int, ...]
Memo = Dict[Tuple[Parts, int], int]


def _degree_of_parts(parts: Parts) -> int:
    hooks = hook_lengths(Partition.trusted(parts))
    return math.factorial(sum(parts)) // hooks.product()


def _ones_start(mu_parts: Parts) -> int:
    """First index from which every remaining part of mu is 1."""
    index = len(mu_parts)
    while index and mu_parts[index - 1] == 1:
        index -= 1
    return index


def _mn_value(
    parts: Parts,
    mu_parts: Parts,
    index: int,
    ones_from: int,
    memo: Memo,
    modulus: Optional[int],
) -> int:
    """
    Murnaghan-Nakayama recursion on (remaining lambda, parts of mu consumed).

    Once only 1-cycles remain the value is the degree of what is left.
    """
    if index >= ones_from:
        value = _degree_of_parts(parts) if parts else 1
        return value % modulus if modulus else value

    key = (parts, index)
    cached = memo.get(key)
    if cached is not None:
        return cached

    total = 0
    for rest, sign in strip_removals(parts, mu_parts[index]):
        total += sign * _mn_value(rest, mu_parts, index + 1, ones_from, memo, modulus)
    if modulus:
        total %= modulus

    memo[key] = total
    return total


def _column_values(n: int, mu_parts: Parts, modulus: Optional[int]) -> Tuple[int, ...]:
    """Values of one column in canonical lambda order, sharing one memo."""
    memo: Memo = {}
    ones_from = _ones_start(mu_parts)
    return tuple(
        _mn_value(lam.parts, mu_parts, 0, ones_from, memo, modulus)
        for lam in enumerate_partitions(n)
    )


def _column_worker(task: Tuple[int, Parts, Optional[int]]) -> Tuple[int, ...]:
    """Process-pool entry point; each worker owns its memo store."""
    n, mu_parts, modulus = task
    return _column_values(n, mu_parts, modulus)


class CharacterService:
    """
    Service for symmetric-group character values and tables.

    Tables are bounded by the exact_table_max_n / mod_table_max_n budgets
    and, when a cache is attached, read from and written to disk.
    """

    def __init__(self, config: LabConfig, cache=None):
        """
        Initialize the character service.

        Args:
            config: Active lab configuration
            cache: Optional TableCache used by character_table()
        """
        self.config = config
        self.cache = cache

    def chi(self, lam: Partition, mu: Partition, ascending: bool = False) -> CharValue:
        """
        Exact character value chi^lam_mu.

        Parts of mu are consumed in weakly decreasing order, or increasing
        order when ascending is set (the value is the same).

        Args:
            lam: Irreducible character
            mu: Cycle type
            ascending: Consume the parts of mu smallest first

        Returns:
            Exact CharValue

        Raises:
            ValueError: If |lam| != |mu|
        """
        return CharValue(self._evaluate(lam, mu, None, ascending))

    def chi_mod(self, lam: Partition, mu: Partition, p: int) -> CharValue:
        """
        Character value chi^lam_mu reduced modulo the prime p.

        All intermediate arithmetic is done modulo p.

        Raises:
            ValueError: If |lam| != |mu| or p is not prime
        """
        ensure_valid(validate_prime(p))
        return CharValue(self._evaluate(lam, mu, p, False), p)

    def _evaluate(
        self, lam: Partition, mu: Partition, modulus: Optional[int], ascending: bool
    ) -> int:
        ensure_valid(validate_same_size(lam.n, mu.n))
        mu_parts = tuple(sorted(mu.parts)) if ascending else mu.parts
        return _mn_value(lam.parts, mu_parts, 0, _ones_start(mu_parts), {}, modulus)

    def character_column(self, mu: Partition, modulus: Optional[int] = None) -> CharColumn:
        """
        All values chi^lam_mu for lam |- |mu|, in canonical order.

        Args:
            mu: Cycle type
            modulus: Optional prime to reduce by

        Returns:
            CharColumn of length p(n)
        """
        if modulus is not None:
            ensure_valid(validate_prime(modulus))
        values = _column_values(mu.n, mu.parts, modulus)
        return CharColumn(n=mu.n, mu=mu, values=values, modulus=modulus)

    def character_table(self, n: int, modulus: Optional[int] = None) -> CharTable:
        """
        Build the full character table of S_n.

        Columns are computed independently and, with threads > 1, spread
        over a process pool; results are merged in canonical order.

        Args:
            n: Size of the symmetric group
            modulus: Optional prime to reduce by

        Returns:
            CharTable

        Raises:
            ValueError: If n < 0 or modulus is not prime
            BudgetExceededError: If n exceeds the table budget or the
                configured memory cap is hit part way through
        """
        ensure_valid(validate_non_negative(n, "n"))
        if modulus is None:
            check_budget(self.config, Budget.EXACT_TABLE_MAX_N, n)
        else:
            ensure_valid(validate_prime(modulus))
            check_budget(self.config, Budget.MOD_TABLE_MAX_N, n)

        if self.cache is not None:
            cached = self.cache.load_table(n, modulus)
            if cached is not None:
                return cached

        table = self._build_table(n, modulus)

        if self.cache is not None:
            self.cache.save_table(table)
        return table

    def _build_table(self, n: int, modulus: Optional[int]) -> CharTable:
        partitions = enumerate_partitions(n)
        tasks = [(n, mu.parts, modulus) for mu in partitions]
        total = len(tasks)
        cap_bytes = self.config.memory_cap_mb * 1024 * 1024 if self.config.memory_cap_mb else None

        logger.info(f"Building character table n={n} modulus={modulus} ({total} columns)")

        columns: List[CharColumn] = []
        used_bytes = 0
        progress = tqdm(
            total=total,
            desc=f"table n={n}",
            disable=not self.config.show_progress,
            file=sys.stderr,
        )

        def collect(mu: Partition, values: Tuple[int, ...]) -> None:
            nonlocal used_bytes
            used_bytes += sys.getsizeof(values) + sum(sys.getsizeof(v) for v in values)
            if cap_bytes is not None and used_bytes > cap_bytes:
                logger.warning(
                    f"Memory cap hit after {len(columns)}/{total} columns ({used_bytes} bytes)"
                )
                raise BudgetExceededError(
                    "memory_cap_mb", used_bytes, cap_bytes, len(columns), total
                )
            columns.append(CharColumn(n=n, mu=mu, values=values, modulus=modulus))
            progress.update(1)

        try:
            if self.config.threads > 1 and total > 1:
                with ProcessPoolExecutor(max_workers=self.config.threads) as executor:
                    chunksize = max(1, total // (4 * self.config.threads))
                    results = executor.map(_column_worker, tasks, chunksize=chunksize)
                    try:
                        for mu, values in zip(partitions, results):
                            collect(mu, values)
                    except BudgetExceededError:
                        executor.shutdown(wait=False, cancel_futures=True)
                        raise
            else:
                for mu, task in zip(partitions, tasks):
                    collect(mu, _column_worker(task))
        finally:
            progress.close()

        return CharTable(n=n, modulus=modulus, partitions=partitions, columns=tuple(columns))

    def degree(self, lam: Partition) -> int:
        """
        Dimension of the irreducible character lam.

        Returns:
            |lam|! divided by the product of the hook lengths
        """
        return _degree_of_parts(lam.parts) if lam.parts else 1

    def centralizer_size(self, mu: Partition) -> int:
        """
        Order of the centralizer of a permutation of cycle type mu.

        Returns:
            Product over part sizes m of m^a * a!, a the multiplicity of m
        """
        size = 1
        for part, count in mu.multiplicities().items():
            size *= part**count * math.factorial(count)
        return size
