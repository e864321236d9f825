"""
SnCharLab Partition Utilities

Combinatorial operations on partitions: enumeration, conjugates, hook
lengths, beta-sets, t-cores, border strips, p-reduction and the
M^(k) statistic.

Beta-sets are the first-column hook lengths of a partition. A border
strip of length t is the move b -> b - t on a beta-set, so t-core and
strip tests cost O(#parts) instead of O(#boxes).
"""

import heapq
import logging
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Tuple

from models.partition import HookTable, Partition, StripRemoval
from utils.validators import (
    ensure_valid,
    validate_coprime,
    validate_non_negative,
    validate_positive,
    validate_prime,
)

logger = logging.getLogger(__name__)

Parts = Tuple[int, ...]


def iter_partitions(n: int, max_part: Optional[int] = None) -> Iterator[Partition]:
    """
    Generate the partitions of n in reverse-lexicographic order.

    (n) comes first and (1,...,1) last. With max_part, only partitions
    whose parts are all <= max_part are produced (same order).

    Args:
        n: Size to partition
        max_part: Optional bound on the largest part

    Yields:
        Partition instances
    """
    ensure_valid(validate_non_negative(n, "n"))
    if n == 0:
        yield Partition.trusted(())
        return

    top = n if max_part is None else min(n, max_part)
    if top < 1:
        return

    # Start from the largest partition with parts <= top
    a: List[int] = [top] * (n // top)
    if n % top:
        a.append(n % top)

    while True:
        yield Partition.trusted(tuple(a))

        rem = 0
        while a and a[-1] == 1:
            a.pop()
            rem += 1
        if not a:
            return

        a[-1] -= 1
        rem += 1
        x = a[-1]
        while rem > x:
            a.append(x)
            rem -= x
        if rem:
            a.append(rem)


def iter_partitions_with_largest(n: int, largest: int) -> Iterator[Partition]:
    """
    Generate the partitions of n whose largest part is exactly `largest`.

    Yields:
        Partition instances in reverse-lexicographic order
    """
    if largest < 1 or largest > n:
        return
    for rest in iter_partitions(n - largest, max_part=largest):
        yield Partition.trusted((largest,) + rest.parts)


@lru_cache(maxsize=64)
def enumerate_partitions(n: int) -> Tuple[Partition, ...]:
    """
    All partitions of n, exactly once, in canonical reverse-lex order.

    Args:
        n: Non-negative integer

    Returns:
        Tuple of length p(n); n = 0 gives the single empty partition
    """
    return tuple(iter_partitions(n))


def partition_index(n: int) -> Dict[Partition, int]:
    """Map each partition of n to its canonical position."""
    return {lam: i for i, lam in enumerate(enumerate_partitions(n))}


def conjugate(lam: Partition) -> Partition:
    """
    Transpose the Young diagram.

    Args:
        lam: Partition to transpose

    Returns:
        The conjugate partition
    """
    return Partition.trusted(_conjugate_parts(lam.parts))


def _conjugate_parts(parts: Parts) -> Parts:
    if not parts:
        return ()
    return tuple(sum(1 for part in parts if part > c) for c in range(parts[0]))


def hook_lengths(lam: Partition) -> HookTable:
    """
    Hook length of every box: arm + leg + 1.

    Args:
        lam: Partition whose diagram is labelled

    Returns:
        HookTable with one row per part
    """
    conj = _conjugate_parts(lam.parts)
    hooks = tuple(
        tuple((row_len - c - 1) + (conj[c] - r - 1) + 1 for c in range(row_len))
        for r, row_len in enumerate(lam.parts)
    )
    return HookTable(shape=lam, hooks=hooks)


def beta_set(lam: Partition, length: Optional[int] = None) -> Tuple[int, ...]:
    """
    First-column hook lengths, optionally padded to a fixed length.

    Padding to L >= #parts gives lam_i + L - 1 - i for i < L (with
    lam_i = 0 beyond the last part).

    Args:
        lam: Partition
        length: Number of beads (defaults to the number of parts)

    Returns:
        Strictly decreasing tuple of non-negative integers
    """
    size = lam.length if length is None else length
    if size < lam.length:
        raise ValueError(f"Beta-set length {size} is shorter than {lam.length} parts")
    padded = lam.parts + (0,) * (size - lam.length)
    return tuple(part + size - 1 - i for i, part in enumerate(padded))


def _parts_from_beta(beta: List[int]) -> Parts:
    beta = sorted(beta, reverse=True)
    size = len(beta)
    parts = [b - (size - 1 - i) for i, b in enumerate(beta)]
    return tuple(part for part in parts if part > 0)


def is_t_core(lam: Partition, t: int) -> bool:
    """
    Check that no hook length of lam is divisible by t.

    Uses the beta-set test: lam is a t-core exactly when every bead b >= t
    has b - t also occupied.

    Args:
        lam: Partition
        t: Positive integer

    Returns:
        True if lam is a t-core
    """
    ensure_valid(validate_positive(t, "t"))
    beads = set(beta_set(lam))
    return all(b < t or (b - t) in beads for b in beads)


def strip_removals(parts: Parts, t: int) -> List[Tuple[Parts, int]]:
    """
    Remove every border strip of length t from a parts tuple.

    Low-level form of border_strips() used by the character recursion.

    Returns:
        List of (remaining parts, sign) pairs
    """
    size = len(parts)
    beta = [part + size - 1 - i for i, part in enumerate(parts)]
    beads = set(beta)
    removals = []
    for b in beta:
        target = b - t
        if target < 0 or target in beads:
            continue
        between = sum(1 for x in beta if target < x < b)
        moved = [target if x == b else x for x in beta]
        sign = -1 if between % 2 else 1
        removals.append((_parts_from_beta(moved), sign))
    return removals


def border_strips(lam: Partition, t: int) -> List[StripRemoval]:
    """
    All ways to remove a border strip of length t.

    Args:
        lam: Partition
        t: Strip length

    Returns:
        One StripRemoval per removable strip (empty iff lam has no hook t)
    """
    ensure_valid(validate_positive(t, "t"))
    size = lam.length
    beta = beta_set(lam)
    beads = set(beta)
    removals = []
    for b in beta:
        target = b - t
        if target < 0 or target in beads:
            continue
        height = 1 + sum(1 for x in beta if target < x < b)
        moved = [target if x == b else x for x in beta]
        removals.append(
            StripRemoval(
                result=Partition.trusted(_parts_from_beta(moved)),
                height=height,
                sign=(-1) ** (height - 1),
            )
        )
    logger.debug(f"{len(removals)} strips of length {t} in {lam} ({size} beads)")
    return removals


def p_reduce(mu: Partition, p: int) -> Partition:
    """
    Merge p equal parts m into one part pm until every multiplicity is < p.

    Sizes are processed from the smallest upward; carries only move to
    larger sizes, so one pass suffices.

    Args:
        mu: Partition to reduce
        p: Prime

    Returns:
        The reduced partition (same size)
    """
    ensure_valid(validate_prime(p))
    return Partition.trusted(p_reduce_parts(mu.parts, p))


def p_reduce_parts(parts: Parts, p: int) -> Parts:
    """p_reduce() on a bare parts tuple, without validating p."""
    counts: Dict[int, int] = {}
    for part in parts:
        counts[part] = counts.get(part, 0) + 1
    heap = list(counts)
    heapq.heapify(heap)
    seen = set(heap)
    while heap:
        size = heapq.heappop(heap)
        carry, counts[size] = divmod(counts[size], p)
        if carry:
            merged = size * p
            counts[merged] = counts.get(merged, 0) + carry
            if merged not in seen:
                seen.add(merged)
                heapq.heappush(heap, merged)
    reduced: List[int] = []
    for size in sorted(counts, reverse=True):
        reduced.extend([size] * counts[size])
    return tuple(reduced)


def is_k_power_of_p(part: int, k: int, p: int) -> bool:
    """Check whether part = k * p^j for some j >= 0."""
    return part % k == 0 and coprime_root(part // k, p) == 1


def m_statistic(mu: Partition, k: int, p: int) -> int:
    """
    Sum of the parts of mu of the form k * p^j.

    Args:
        mu: Partition
        k: Positive integer coprime to p
        p: Prime

    Returns:
        M_mu^(k)

    Raises:
        ValueError: If k is divisible by p
    """
    ensure_valid(validate_prime(p))
    ensure_valid(validate_coprime(k, p))
    return sum(part for part in mu.parts if is_k_power_of_p(part, k, p))


def coprime_root(part: int, p: int) -> int:
    """The k coprime to p with part = k * p^j."""
    while part % p == 0:
        part //= p
    return part


def base_p_digits(value: int, p: int) -> List[int]:
    """Base-p digits of value, least significant first."""
    digits = []
    while value:
        value, digit = divmod(value, p)
        digits.append(digit)
    return digits
