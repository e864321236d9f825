"""
SnCharLab Experiment Service

Exhaustive verifiers and density experiments on character tables:
- congruence of columns under merging p equal cycles
- vanishing of t-core characters on classes with a cycle of length t
- exact, certified and sampled divisible densities, and zero densities
- moment cross-checks of M^(k) against generating functions
- trend tables over a range of n
"""

import logging
import math
import sys
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from tqdm import tqdm

from app.constants import TREND_DEFAULT_SAMPLES, DensityMethod
from core.budgets import Budget, require_budget, within_budget
from core.config import LabConfig
from models.partition import Partition
from models.report import DensityReport, MomentReport, TrendRow
from services.asymptotic_service import SQRT6, AsymptoticService
from services.character_service import CharacterService
from services.sampler_service import SamplerService
from services.series_service import SeriesService, partition_number
from utils.partitions import (
    beta_set,
    is_t_core,
    iter_partitions,
    iter_partitions_with_largest,
    m_statistic,
    p_reduce,
    p_reduce_parts,
    partition_index,
)
from utils.validators import (
    ensure_valid,
    validate_non_negative,
    validate_positive,
    validate_prime,
)

logger = logging.getLogger(__name__)


class MomentMismatchError(AssertionError):
    """Raised when an enumerated moment differs from its generating-function value."""


def _reduced_tops_for_largest(task: Tuple[int, int, int]) -> Dict[int, int]:
    """Process-pool entry point: largest parts of p-reductions, for mu with a given largest part."""
    n, largest, p = task
    tops: Counter = Counter()
    for mu in iter_partitions_with_largest(n, largest):
        tops[p_reduce_parts(mu.parts, p)[0]] += 1
    return dict(tops)


def _core_mask(lam: Partition, n: int) -> int:
    """Bit t set when lam is a t-core, for 1 <= t <= n."""
    beads = set(beta_set(lam))
    mask = 0
    for t in range(1, n + 1):
        if all(b < t or (b - t) in beads for b in beads):
            mask |= 1 << t
    return mask


class ExperimentService:
    """
    Service orchestrating verifiers and density experiments.

    Every exhaustive method is bounded by a configured budget.
    """

    def __init__(
        self,
        config: LabConfig,
        characters: CharacterService,
        series: SeriesService,
        asymptotic: AsymptoticService,
        sampler: SamplerService,
    ):
        """
        Initialize the experiment service.

        Args:
            config: Active lab configuration
            characters: Character table service
            series: Exact series service
            asymptotic: Estimator service
            sampler: Random partition service
        """
        self.config = config
        self.characters = characters
        self.series = series
        self.asymptotic = asymptotic
        self.sampler = sampler

    def _progress(self, iterable: Iterable, desc: str, total: Optional[int] = None):
        return tqdm(
            iterable,
            desc=desc,
            total=total,
            disable=not self.config.show_progress,
            file=sys.stderr,
        )

    # Verifiers

    @require_budget(Budget.LEMMA21_MAX_N)
    def verify_lemma21(self, n: int, p: int) -> int:
        """
        Check chi(lam, mu) = chi(lam, nu) mod p whenever nu merges p equal
        parts m of mu into one part pm.

        Args:
            n: Size
            p: Prime

        Returns:
            Number of violations (0 expected)
        """
        ensure_valid(validate_prime(p))
        table = self.characters.character_table(n, modulus=p)
        index = partition_index(n)
        violations = 0

        for mu in self._progress(table.partitions, f"merge check n={n} p={p}"):
            column = table.columns[index[mu]]
            for size, count in mu.multiplicities().items():
                if count < p:
                    continue
                merged = dict(mu.multiplicities())
                merged[size] -= p
                merged[size * p] = merged.get(size * p, 0) + 1
                nu = Partition.from_multiplicities(merged)
                other = table.columns[index[nu]]
                for i, lam in enumerate(table.partitions):
                    if column.values[i] != other.values[i]:
                        violations += 1
                        logger.warning(f"Merge congruence fails: lambda={lam} mu={mu} nu={nu} p={p}")

        logger.info(f"Merge congruence n={n} p={p}: {violations} violations")
        return violations

    @require_budget(Budget.LEMMA22_MAX_N)
    def verify_lemma22(self, n: int) -> int:
        """
        Check chi(lam, mu) = 0 for every t <= n, t-core lam and mu with a part t.

        Returns:
            Number of violations (0 expected)
        """
        ensure_valid(validate_non_negative(n, "n"))
        table = self.characters.character_table(n)
        violations = 0

        for t in self._progress(range(1, n + 1), f"t-core vanishing n={n}"):
            cores = [i for i, lam in enumerate(table.partitions) if is_t_core(lam, t)]
            if not cores:
                continue
            for column in table.columns:
                if not column.mu.has_part(t):
                    continue
                for i in cores:
                    if column.values[i] != 0:
                        violations += 1
                        logger.warning(
                            f"t-core value nonzero: t={t} lambda={table.partitions[i]} mu={column.mu}"
                        )

        logger.info(f"t-core vanishing n={n}: {violations} violations")
        return violations

    @require_budget(Budget.CERTIFICATE_MAX_N)
    def verify_eq21(self, n: int, p: int, k: int, gamma: float) -> int:
        """
        Over all mu |- n, count those where the M^(k) predicate holds but the
        p-reduction has no part reaching the threshold (0 expected).
        """
        return self._eq21_violations(iter_partitions(n), n, p, k, gamma)

    def verify_eq21_sampled(
        self, n: int, p: int, k: int, gamma: float, samples: int, seed: int
    ) -> int:
        """verify_eq21() over sampled partitions of n instead of all of them."""
        mus = self.sampler.sample_partitions(self.sampler.make_config(n, seed), samples)
        return self._eq21_violations(mus, n, p, k, gamma)

    def _eq21_violations(self, mus: Iterable[Partition], n: int, p: int, k: int, gamma: float) -> int:
        threshold = self.asymptotic.eq21_threshold(n, gamma) if n else 0.0
        violations = 0
        for mu in mus:
            value = m_statistic(mu, k, p)
            if self.asymptotic.eq21_predicate(value, k, p, gamma, n):
                if p_reduce(mu, p).largest < threshold:
                    violations += 1
                    logger.warning(f"Threshold predicate fails: mu={mu} M={value} p={p} k={k}")
        logger.info(f"Threshold predicate n={n} p={p} k={k} gamma={gamma}: {violations} violations")
        return violations

    # Densities

    @require_budget(Budget.EXACT_DENSITY_MAX_N)
    def exact_density_report(self, n: int, p: int) -> DensityReport:
        """
        Count entries divisible by p over the full table.

        The zero count is included when the exact table is within the zeros
        budget; otherwise only the mod-p table is built.

        Returns:
            DensityReport with method exact-table
        """
        ensure_valid(validate_prime(p))
        zero_count = None
        if within_budget(self.config, Budget.ZEROS_MAX_N, n):
            exact = self.characters.character_table(n)
            zero_count = exact.zero_count()
            table = exact.reduce(p)
        else:
            table = self.characters.character_table(n, modulus=p)

        certified = None
        if within_budget(self.config, Budget.CERTIFICATE_MAX_N, n):
            certified = self._certified_count(n, p)

        report = DensityReport(
            n=n,
            p=p,
            total_entries=table.total_entries,
            method=DensityMethod.EXACT_TABLE,
            divisible_count=table.divisible_count(p),
            certified_count=certified,
            zero_count=zero_count,
        )
        logger.info(f"Exact density n={n} p={p}: {report.density_decimal}")
        return report

    @require_budget(Budget.CERTIFICATE_MAX_N)
    def certified_density_report(self, n: int, p: int, all_parts: bool = False) -> DensityReport:
        """
        Lower bound on divisible entries from the t-core certificate.

        (lam, mu) is certified when lam is a t-core for the largest part t of
        the p-reduction of mu (for any part t, with all_parts).

        Returns:
            DensityReport with method certificate-exact
        """
        ensure_valid(validate_prime(p))
        if all_parts:
            certified = self._certified_count_all_parts(n, p)
        else:
            certified = self._certified_count(n, p)

        total = partition_number(n)
        report = DensityReport(
            n=n,
            p=p,
            total_entries=total * total,
            method=DensityMethod.CERTIFICATE_EXACT,
            certified_count=certified,
        )
        logger.info(f"Certified density n={n} p={p} all_parts={all_parts}: {report.density_decimal}")
        return report

    def _certified_count(self, n: int, p: int) -> int:
        if n == 0:
            return 0
        tasks = [(n, largest, p) for largest in range(n, 0, -1)]
        tops: Counter = Counter()
        if self.config.threads > 1:
            with ProcessPoolExecutor(max_workers=self.config.threads) as executor:
                for part in self._progress(
                    executor.map(_reduced_tops_for_largest, tasks), f"certificate n={n}", len(tasks)
                ):
                    tops.update(part)
        else:
            for task in self._progress(tasks, f"certificate n={n}"):
                tops.update(_reduced_tops_for_largest(task))

        total = 0
        for t in sorted(tops):
            total += tops[t] * self.series.tcore_counts(t, n)[n]
        return total

    @require_budget(Budget.ALL_PARTS_MAX_N)
    def _certified_count_all_parts(self, n: int, p: int) -> int:
        masks = Counter(_core_mask(lam, n) for lam in iter_partitions(n))
        part_sets: Counter = Counter()
        for mu in iter_partitions(n):
            wanted = 0
            for part in set(p_reduce_parts(mu.parts, p)):
                wanted |= 1 << part
            part_sets[wanted] += 1

        total = 0
        for wanted, mu_count in part_sets.items():
            cores = sum(count for mask, count in masks.items() if mask & wanted)
            total += mu_count * cores
        return total

    def sampled_density_report(self, n: int, p: int, samples: int, seed: int) -> DensityReport:
        """
        Monte-Carlo certified density.

        Returns:
            DensityReport with method certificate-sampled
        """
        estimate, stderr = self.sampler.estimate_certified_density(n, p, samples, seed)
        total = partition_number(n)
        return DensityReport(
            n=n,
            p=p,
            total_entries=total * total,
            method=DensityMethod.CERTIFICATE_SAMPLED,
            estimate=estimate,
            stderr=stderr,
        )

    @require_budget(Budget.ZEROS_MAX_N)
    def zeros_report(self, n: int) -> DensityReport:
        """
        Count zero entries of the exact table.

        Returns:
            DensityReport with p = None and method exact-table
        """
        table = self.characters.character_table(n)
        report = DensityReport(
            n=n,
            p=None,
            total_entries=table.total_entries,
            method=DensityMethod.EXACT_TABLE,
            zero_count=table.zero_count(),
        )
        logger.info(f"Zero density n={n}: {report.density_decimal}")
        return report

    # Moments

    @require_budget(Budget.MOMENT_MAX_N)
    def moment_crosscheck(self, n: int, k: int, p: int) -> MomentReport:
        """
        Sum M^(k) and its square over all mu |- n and compare with
        (P F_k)[n] and (P G_k)[n].

        Raises:
            MomentMismatchError: If either pair differs
        """
        exact_sum = 0
        exact_sum_sq = 0
        for mu in iter_partitions(n):
            value = m_statistic(mu, k, p)
            exact_sum += value
            exact_sum_sq += value * value

        partitions = self.series.partition_numbers(n)
        gf_sum = partitions.mul(self.series.fk_series(k, p, n))[n]
        gf_sum_sq = partitions.mul(self.series.gk_series(k, p, n))[n]

        report = MomentReport(
            n=n,
            k=k,
            p=p,
            partitions=partitions[n],
            exact_sum=exact_sum,
            exact_sum_sq=exact_sum_sq,
            gf_sum=gf_sum,
            gf_sum_sq=gf_sum_sq,
        )
        if n >= 2:
            main = self.asymptotic.moment_main_term(n, p)
            report.main_term = main
            report.main_term_sq = main * main
            report.ratio = float(Fraction(exact_sum, partitions[n])) / main
            report.ratio_sq = float(Fraction(exact_sum_sq, partitions[n])) / (main * main)

        if not report.matches:
            raise MomentMismatchError(
                f"Moments differ for n={n} k={k} p={p}: "
                f"{exact_sum} vs {gf_sum}, {exact_sum_sq} vs {gf_sum_sq}"
            )
        logger.info(f"Moments n={n} k={k} p={p} match; ratio {report.ratio}")
        return report

    @require_budget(Budget.MOMENT_MAX_N)
    def chebyshev_fraction(self, n: int, k: int, p: int, c: float) -> Fraction:
        """
        Fraction of mu |- n with M^(k) < c (sqrt6/2pi) sqrt(n) log n.
        """
        threshold = c * SQRT6 / (2 * math.pi) * math.sqrt(n) * math.log(n)
        below = sum(1 for mu in iter_partitions(n) if m_statistic(mu, k, p) < threshold)
        return Fraction(below, partition_number(n))

    @require_budget(Budget.CERTIFICATE_MAX_N)
    def eq21_certificate_fraction(
        self, n: int, p: int, ks: Sequence[int], gamma: float
    ) -> Fraction:
        """
        Fraction of mu |- n for which the M^(k) threshold predicate holds
        for at least one k in ks.
        """
        hits = 0
        for mu in iter_partitions(n):
            if any(
                self.asymptotic.eq21_predicate(m_statistic(mu, k, p), k, p, gamma, n) for k in ks
            ):
                hits += 1
        return Fraction(hits, partition_number(n))

    # Trends

    def trend_suite(
        self,
        n_min: int,
        n_max: int,
        p: int,
        samples: int = TREND_DEFAULT_SAMPLES,
        seed: Optional[int] = None,
    ) -> List[TrendRow]:
        """
        One TrendRow per n in [n_min, n_max].

        Exact, certified and zero columns appear only where their budgets
        allow; the sampled column is always present.

        Raises:
            ValueError: If the range is empty or n_min < 1
        """
        ensure_valid(validate_positive(n_min, "n_min"))
        ensure_valid(validate_prime(p))
        if n_max < n_min:
            raise ValueError(f"Empty range: n_min={n_min} > n_max={n_max}")
        seed = self.config.default_seed if seed is None else seed

        rows = []
        for n in range(n_min, n_max + 1):
            row = TrendRow(n=n, p=p)
            if within_budget(self.config, Budget.EXACT_DENSITY_MAX_N, n):
                exact = self.exact_density_report(n, p)
                row.exact_density = exact.divisible_density
                row.methods.append(DensityMethod.EXACT_TABLE.value)
                if exact.zero_count is not None:
                    row.zero_density = exact.zero_density
            if within_budget(self.config, Budget.CERTIFICATE_MAX_N, n):
                row.certified_density = self.certified_density_report(n, p).certified_density
                row.methods.append(DensityMethod.CERTIFICATE_EXACT.value)
            row.sampled_density, row.sampled_stderr = self.sampler.estimate_certified_density(
                n, p, samples, seed
            )
            row.methods.append(DensityMethod.CERTIFICATE_SAMPLED.value)
            rows.append(row)
            logger.info(f"Trend row n={n} p={p}: {row.methods}")
        return rows
