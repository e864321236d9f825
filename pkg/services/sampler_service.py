"""
SnCharLab Sampler Service

Uniform random partitions of n by Boltzmann sampling.

Each part size j >= 2 gets a geometric multiplicity with ratio x^j,
x = exp(-pi / sqrt(6n)). The number of 1s is then forced to n minus the
rest and kept with probability x^(#1s), which is the conditional law of
the 1s given the other parts. Accepted draws are exactly uniform.

Samples are produced in fixed-size chunks; chunk i draws from the stream
SeedSequence([seed, i]), so results depend only on (n, seed, count) and
not on how many workers ran the chunks.
"""

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from itertools import islice
from typing import Callable, Dict, Iterator, List, Tuple

import numpy as np

from app.constants import (
    SAMPLER_CHUNK_SIZE,
    SAMPLER_MAX_BATCH_CELLS,
    SAMPLER_MAX_BATCH_ROWS,
    SAMPLER_RNG_ALGORITHM,
    SAMPLER_TAIL_EXPONENT,
)
from core.config import LabConfig
from models.partition import Partition
from models.sampler import SamplerConfig
from services.asymptotic_service import AsymptoticService
from services.series_service import SeriesService, partition_number
from utils.partitions import m_statistic, p_reduce
from utils.validators import ensure_valid, validate_positive, validate_prime

logger = logging.getLogger(__name__)


class SamplerExhaustedError(RuntimeError):
    """
    Raised when too many consecutive Boltzmann draws are rejected.

    Attributes:
        attempts: Rejected draws since the last accepted sample
    """

    def __init__(self, attempts: int, n: int):
        self.attempts = attempts
        self.n = n
        super().__init__(f"Sampler gave up on n={n} after {attempts} consecutive rejections")


class BoltzmannDrawer:
    """
    Vectorised Boltzmann draws for one size n from one generator.

    Part sizes 2..dense_top are drawn as a dense matrix; the rare larger
    parts are found by thinning a geometric skip process.
    """

    def __init__(self, n: int, rng: np.random.Generator):
        self.n = n
        self.rng = rng
        rate = math.pi / math.sqrt(6 * n)
        self.log_x = -rate
        self.x = math.exp(-rate)
        self.dense_top = min(n, max(1, math.ceil(SAMPLER_TAIL_EXPONENT / rate)))
        self.sizes = np.arange(2, self.dense_top + 1, dtype=np.int64)
        self.success = -np.expm1(self.sizes * self.log_x)
        self.tail_q = math.exp((self.dense_top + 1) * self.log_x) if self.dense_top < n else 0.0
        self.rows = min(SAMPLER_MAX_BATCH_ROWS, max(1, SAMPLER_MAX_BATCH_CELLS // max(1, len(self.sizes))))

    def draw_batch(self) -> Tuple[np.ndarray, Dict[int, List[int]], np.ndarray, np.ndarray]:
        """
        Draw one batch of candidate partitions.

        Returns:
            (multiplicities of parts 2..dense_top, tail parts by row,
             number of 1s per row, acceptance mask)
        """
        rows = self.rows
        if len(self.sizes):
            counts = self.rng.geometric(self.success, size=(rows, len(self.sizes))) - 1
            rest = counts @ self.sizes
        else:
            counts = np.zeros((rows, 0), dtype=np.int64)
            rest = np.zeros(rows, dtype=np.int64)

        tails: Dict[int, List[int]] = {}
        if self.tail_q > 0:
            gaps = self.rng.geometric(self.tail_q, size=rows)
            for row in np.flatnonzero(gaps <= self.n - self.dense_top):
                parts = self._draw_tail(self.dense_top + int(gaps[row]))
                if parts:
                    tails[int(row)] = parts
                    rest[row] += sum(parts)

        ones = self.n - rest
        valid = ones >= 0
        accept_prob = np.where(valid, np.exp(np.where(valid, ones, 0) * self.log_x), 0.0)
        accepted = self.rng.random(rows) < accept_prob
        return counts, tails, ones, accepted

    def _draw_tail(self, position: int) -> List[int]:
        parts: List[int] = []
        while position <= self.n:
            chance = math.exp(position * self.log_x)
            if self.rng.random() * self.tail_q < chance:
                multiplicity = int(self.rng.geometric(-math.expm1(position * self.log_x)))
                parts.extend([position] * multiplicity)
            position += int(self.rng.geometric(self.tail_q))
        return sorted(parts, reverse=True)

    def build(self, counts_row: np.ndarray, tail: List[int], ones: int) -> Partition:
        """Assemble an accepted row into a Partition."""
        parts = list(tail)
        for index in np.flatnonzero(counts_row)[::-1]:
            parts.extend([int(index) + 2] * int(counts_row[index]))
        parts.extend([1] * int(ones))
        return Partition.trusted(tuple(parts))


def iter_samples(n: int, seed: int, stream: int, max_rejections: int) -> Iterator[Partition]:
    """
    Endless stream of uniform partitions of n.

    Raises:
        SamplerExhaustedError: If more than max_rejections draws in a row are rejected
    """
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, stream])))
    drawer = BoltzmannDrawer(n, rng)
    consecutive = 0
    while True:
        counts, tails, ones, accepted = drawer.draw_batch()
        previous = -1
        for row in np.flatnonzero(accepted):
            row = int(row)
            consecutive += row - previous - 1
            if consecutive > max_rejections:
                raise SamplerExhaustedError(consecutive, n)
            yield drawer.build(counts[row], tails.get(row, []), ones[row])
            consecutive = 0
            previous = row
        consecutive += drawer.rows - previous - 1
        if consecutive > max_rejections:
            raise SamplerExhaustedError(consecutive, n)


def _stat_parts(lam: Partition) -> Tuple[int, ...]:
    return lam.parts


def _stat_largest(lam: Partition) -> int:
    return lam.largest


def _stat_reduced_largest(lam: Partition, p: int) -> int:
    return p_reduce(lam, p).largest


def _stat_m(lam: Partition, k: int, p: int) -> int:
    return m_statistic(lam, k, p)


_STATISTICS: Dict[str, Callable] = {
    "parts": _stat_parts,
    "largest": _stat_largest,
    "reduced_largest": _stat_reduced_largest,
    "m_statistic": _stat_m,
}


def _sample_chunk(task: tuple) -> list:
    """Process-pool entry point: one chunk of samples reduced to a statistic."""
    n, seed, max_rejections, stream, count, statistic, args = task
    stat = _STATISTICS[statistic]
    samples = iter_samples(n, seed, stream, max_rejections)
    return [stat(lam, *args) for lam in islice(samples, count)]


class SamplerService:
    """
    Service for Monte-Carlo experiments on uniform random partitions.
    """

    def __init__(self, config: LabConfig, series: SeriesService, asymptotic: AsymptoticService):
        """
        Initialize the sampler service.

        Args:
            config: Active lab configuration (threads, max_rejections, exact_tcore_max_n)
            series: Series service for exact t-core counts
            asymptotic: Asymptotic service for bounds and thresholds
        """
        self.config = config
        self.series = series
        self.asymptotic = asymptotic

    def make_config(self, n: int, seed: int) -> SamplerConfig:
        """SamplerConfig for n and seed with the configured rejection limit."""
        return SamplerConfig(n=n, seed=seed, max_rejections=self.config.max_rejections)

    def rng_metadata(self) -> Dict[str, str]:
        """Generator name and numpy version, for output metadata."""
        return {"rng": SAMPLER_RNG_ALGORITHM, "numpy": np.__version__}

    def sample_partition(self, cfg: SamplerConfig) -> Partition:
        """
        One uniform random partition of cfg.n.

        Raises:
            SamplerExhaustedError: If the rejection budget runs out
        """
        return self.sample_partitions(cfg, 1)[0]

    def sample_partitions(self, cfg: SamplerConfig, count: int) -> List[Partition]:
        """
        count uniform random partitions of cfg.n, deterministic in cfg.seed.

        Raises:
            SamplerExhaustedError: If the rejection budget runs out
        """
        return [Partition.trusted(parts) for parts in self._collect(cfg, count, "parts")]

    def _collect(self, cfg: SamplerConfig, count: int, statistic: str, args: tuple = ()) -> list:
        ensure_valid(validate_positive(count, "samples"))
        tasks = []
        for stream, start in enumerate(range(0, count, SAMPLER_CHUNK_SIZE)):
            size = min(SAMPLER_CHUNK_SIZE, count - start)
            tasks.append((cfg.n, cfg.seed, cfg.max_rejections, stream, size, statistic, args))

        logger.debug(f"Sampling {count} partitions of {cfg.n} in {len(tasks)} chunks")
        if self.config.threads > 1 and len(tasks) > 1:
            with ProcessPoolExecutor(max_workers=self.config.threads) as executor:
                chunks = list(executor.map(_sample_chunk, tasks))
        else:
            chunks = [_sample_chunk(task) for task in tasks]

        return [value for chunk in chunks for value in chunk]

    def largest_part_histogram(self, n: int, samples: int, seed: int) -> Dict[int, int]:
        """
        Histogram of the largest part over sampled partitions of n.

        Returns:
            Map largest part -> count, keys increasing; counts sum to samples
        """
        values = self._collect(self.make_config(n, seed), samples, "largest")
        sizes, counts = np.unique(np.asarray(values, dtype=np.int64), return_counts=True)
        return {int(s): int(c) for s, c in zip(sizes, counts)}

    def erdos_lehner_frequency(self, n: int, M: float, samples: int, seed: int) -> float:
        """
        Empirical probability that the largest part is at least the
        largest-part-law threshold for offset M.
        """
        threshold, _ = self.asymptotic.erdos_lehner(n, M)
        histogram = self.largest_part_histogram(n, samples, seed)
        hits = sum(count for size, count in histogram.items() if size >= threshold)
        return hits / samples

    def mean_m_statistic(self, n: int, k: int, p: int, samples: int, seed: int) -> float:
        """Sample mean of M^(k) over uniform partitions of n."""
        values = self._collect(self.make_config(n, seed), samples, "m_statistic", (k, p))
        return float(np.mean(np.asarray(values, dtype=np.float64)))

    def estimate_certified_density(
        self, n: int, p: int, samples: int, seed: int
    ) -> Tuple[float, float]:
        """
        Monte-Carlo estimate of the certified divisible density.

        For each sampled mu, t is the largest part of its p-reduction and
        the sample scores the fraction of partitions of n that are t-cores
        (exact counts up to exact_tcore_max_n, else max(0, lower bound)).

        Args:
            n: Size
            p: Prime
            samples: Number of sampled mu, >= 1
            seed: Seed

        Returns:
            (mean, standard error); standard error is inf for one sample
        """
        ensure_valid(validate_prime(p))
        ensure_valid(validate_positive(samples, "samples"))
        tops = self._collect(self.make_config(n, seed), samples, "reduced_largest", (p,))

        fractions: Dict[int, float] = {}
        for t in set(tops):
            fractions[t] = self._tcore_fraction(n, t)
        scores = np.asarray([fractions[t] for t in tops], dtype=np.float64)

        estimate = float(scores.mean())
        stderr = float(scores.std(ddof=1) / math.sqrt(samples)) if samples > 1 else math.inf
        logger.info(f"Sampled certified density n={n} p={p}: {estimate:.6f} +/- {stderr:.6f}")
        return estimate, stderr

    def _tcore_fraction(self, n: int, t: int) -> float:
        if n <= self.config.exact_tcore_max_n:
            count = self.series.tcore_counts(t, n)[n]
            return float(Fraction(count, partition_number(n)))
        return max(0.0, self.asymptotic.tcore_fraction_bound(n, t))
