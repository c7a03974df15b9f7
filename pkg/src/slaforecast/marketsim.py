"""Monte Carlo market simulator.

Generates random provider offers with flexible boundaries (so the
consumer interval's position is irrelevant), runs the first-match
experiment over a market of providers and measures empirical match
probabilities and negotiation ranges.

Determinism contract: experiments are processed in fixed-size chunks;
chunk i draws from its own substream derived from (seed, i), and results
are folded in chunk order. Outcomes are therefore bit-identical for a
given (config, seed) regardless of the worker count.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .domain import (
    DegenerateDataError,
    Interval,
    MarketModel,
    ProviderLengthLaw,
    SlaRequest,
    ValidationError,
)

CHUNK_SIZE = 1 << 16


@dataclass(frozen=True)
class SimulationConfig:
    market: MarketModel = field(default_factory=MarketModel)
    experiments: int = 1_000_000
    max_providers_per_experiment: int = 1000
    seed: int = 0

    def __post_init__(self):
        if self.experiments < 1:
            raise ValidationError("experiments must be >= 1")
        if self.max_providers_per_experiment < 1:
            raise ValidationError("max_providers_per_experiment must be >= 1")
        if not (0 <= self.seed < 2**64):
            raise ValidationError("seed must fit in 64 unsigned bits")


@dataclass(frozen=True)
class SimulationOutcome:
    """Result of the first-match experiment loop.

    first_match_histogram[k] counts experiments whose first matching
    provider was provider k+1 (0-based array over 1-based ordinals).
    match_probability is the share of experiments where provider #1
    matched, i.e. the single-provider SLA match probability.
    """

    first_match_histogram: np.ndarray
    unmatched_count: int
    match_probability: float
    mean_negotiation_range: float
    per_slo_negotiation_range: tuple[float, ...]
    experiments: int
    seed: int

    def histogram_dict(self) -> dict[int, int]:
        return {
            k + 1: int(c) for k, c in enumerate(self.first_match_histogram) if c > 0
        }

    def cumulative_fractions(self) -> np.ndarray:
        """Cumulative share of experiments matched by provider ordinal."""
        return np.cumsum(self.first_match_histogram) / self.experiments

    def to_dict(self) -> dict:
        return {
            "first_match_histogram": self.histogram_dict(),
            "unmatched_count": self.unmatched_count,
            "match_probability": self.match_probability,
            "mean_negotiation_range": self.mean_negotiation_range,
            "per_slo_negotiation_range": list(self.per_slo_negotiation_range),
            "experiments": self.experiments,
            "seed": self.seed,
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    def to_csv(self) -> str:
        lines = [
            f"# seed={self.seed}",
            f"# experiments={self.experiments}",
            f"# unmatched={self.unmatched_count}",
            f"# match_probability={self.match_probability!r}",
            f"# mean_negotiation_range={self.mean_negotiation_range!r}",
            "ordinal,count",
        ]
        lines += [f"{k},{c}" for k, c in self.histogram_dict().items()]
        return "\n".join(lines) + "\n"


def _chunk_rng(seed: int, chunk_index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(chunk_index,)))


def _chunk_sizes(total: int) -> list[int]:
    sizes = [CHUNK_SIZE] * (total // CHUNK_SIZE)
    if total % CHUNK_SIZE:
        sizes.append(total % CHUNK_SIZE)
    return sizes


def _draw_offers(
    rng: np.random.Generator, market: MarketModel, n: int
) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized provider offer draw; returns (low, high) arrays.

    Offers live on the unit grid: integer lengths over [0, span] and
    integer start points over [-length, span], then clipped to the
    market. The flexible start range makes the match probability
    independent of the consumer interval's position; clipping yields the
    many-short/few-long offer length distribution.
    """
    span = market.span
    if market.length_law is ProviderLengthLaw.FIXED_LENGTH:
        length = np.full(n, float(market.fixed_length))
        center = rng.uniform(-length / 2.0, span + length / 2.0)
        low = center - length / 2.0
        high = center + length / 2.0
    else:
        length = np.floor(rng.random(n) * (span + 1.0))
        low = np.floor(rng.random(n) * (span + 1.0 + length)) - length
        high = low + length
    low = np.clip(low, 0.0, span) + market.domain_min
    high = np.clip(high, 0.0, span) + market.domain_min
    return low, high


def generate_provider_interval(
    rng: np.random.Generator, market: MarketModel | None = None
) -> Interval:
    """Draw a single random provider offer."""
    if market is None:
        market = MarketModel()
    low, high = _draw_offers(rng, market, 1)
    return Interval(float(low[0]), float(high[0]))


def _pair_chunk(
    seed: int, chunk_index: int, size: int, consumer: tuple[float, float],
    market: MarketModel,
) -> tuple[int, float]:
    """One chunk of independent (consumer, provider) pair draws; returns
    (overlap count, sum of intersection lengths over overlapping pairs)."""
    rng = _chunk_rng(seed, chunk_index)
    low, high = _draw_offers(rng, market, size)
    a, b = consumer
    inter = np.minimum(b, high) - np.maximum(a, low)
    mask = inter >= 0
    return int(mask.sum()), float(inter[mask].sum())


def _run_chunks(fn, sizes: list[int], workers: int):
    if workers <= 1:
        return [fn(i, size) for i, size in enumerate(sizes)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(fn, i, size) for i, size in enumerate(sizes)]
    return [f.result() for f in futures]  # fold in chunk order


def match_probability_at(
    consumer: Interval, config: SimulationConfig, workers: int = 1
) -> float:
    """Empirical probability that the consumer interval overlaps one
    random provider offer."""
    results = _run_chunks(
        lambda i, size: _pair_chunk(
            config.seed, i, size, (consumer.low, consumer.high), config.market
        ),
        _chunk_sizes(config.experiments),
        workers,
    )
    return sum(r[0] for r in results) / config.experiments


def measure_negotiation_range(
    consumer_length: float, config: SimulationConfig, workers: int = 1
) -> float:
    """Mean intersection length over overlapping pairs for a consumer
    interval of the given length at the canonical centered position."""
    if not (0 < consumer_length <= 100):
        raise ValidationError(f"consumer length must be in (0, 100], got {consumer_length}")
    consumer = Interval.from_length(consumer_length)
    results = _run_chunks(
        lambda i, size: _pair_chunk(
            config.seed, i, size, (consumer.low, consumer.high), config.market
        ),
        _chunk_sizes(config.experiments),
        workers,
    )
    count = sum(r[0] for r in results)
    if count == 0:
        raise DegenerateDataError(
            "no overlapping pairs observed; experiment count too small"
        )
    total = 0.0
    for _, s in results:
        total += s
    return total / count


@dataclass(frozen=True)
class SweepRow:
    length: float
    match_probability: float
    mean_negotiation_range: float


def sweep_consumer_lengths(
    lengths: list[float], config: SimulationConfig, workers: int = 1
) -> list[SweepRow]:
    """One (match probability, mean negotiation range) row per consumer
    length, each estimated from config.experiments pair draws.

    This is the calibration table feeding the regression fits. Every
    length reuses the same seed, so rows share common random numbers.
    """
    rows = []
    for length in lengths:
        if not (0 < length <= 100):
            raise ValidationError(f"lengths must be in (0, 100], got {length}")
        consumer = Interval.from_length(length)
        results = _run_chunks(
            lambda i, size: _pair_chunk(
                config.seed, i, size, (consumer.low, consumer.high), config.market
            ),
            _chunk_sizes(config.experiments),
            workers,
        )
        count = sum(r[0] for r in results)
        if count == 0:
            raise DegenerateDataError(
                f"no overlapping pairs for length {length}; too few experiments"
            )
        total = 0.0
        for _, s in results:
            total += s
        rows.append(SweepRow(length, count / config.experiments, total / count))
    return rows


def sweep_csv(rows: list[SweepRow]) -> str:
    lines = ["length,match_probability,mean_negotiation_range"]
    lines += [
        f"{r.length!r},{r.match_probability!r},{r.mean_negotiation_range!r}"
        for r in rows
    ]
    return "\n".join(lines) + "\n"


def _experiment_chunk(
    seed: int,
    chunk_index: int,
    size: int,
    consumer: list[tuple[float, float]],
    market: MarketModel,
    cap: int,
) -> tuple[np.ndarray, int, np.ndarray, np.ndarray]:
    """First-match search for one chunk of experiments.

    Returns (histogram over ordinals 1..cap, unmatched count, per-SLO
    overlap counts, per-SLO intersection-length sums).
    """
    rng = _chunk_rng(seed, chunk_index)
    n_slo = len(consumer)
    first_match = np.zeros(size, dtype=np.int64)
    active = np.arange(size)
    overlap_counts = np.zeros(n_slo, dtype=np.int64)
    overlap_sums = np.zeros(n_slo)
    for ordinal in range(1, cap + 1):
        m = len(active)
        all_match = np.ones(m, dtype=bool)
        for j, (a, b) in enumerate(consumer):
            low, high = _draw_offers(rng, market, m)
            inter = np.minimum(b, high) - np.maximum(a, low)
            mask = inter >= 0
            overlap_counts[j] += mask.sum()
            overlap_sums[j] += inter[mask].sum()
            all_match &= mask
        first_match[active[all_match]] = ordinal
        active = active[~all_match]
        if len(active) == 0:
            break
    hist = np.bincount(first_match[first_match > 0], minlength=cap + 1)[1:]
    return hist, len(active), overlap_counts, overlap_sums


def run_first_match_experiments(
    consumer: list[Interval], config: SimulationConfig, workers: int = 1
) -> SimulationOutcome:
    """Run the first-match experiment: per experiment, enumerate
    providers until one whose offers overlap every consumer interval,
    and record that provider's ordinal.

    Negotiation-range statistics are accumulated per SLO over all
    generated pairs that overlap (conditional on overlap).
    """
    if not consumer:
        raise ValidationError("need at least one consumer interval")
    pairs = [(iv.low, iv.high) for iv in consumer]
    cap = config.max_providers_per_experiment
    results = _run_chunks(
        lambda i, size: _experiment_chunk(
            config.seed, i, size, pairs, config.market, cap
        ),
        _chunk_sizes(config.experiments),
        workers,
    )
    hist = np.zeros(cap, dtype=np.int64)
    unmatched = 0
    counts = np.zeros(len(consumer), dtype=np.int64)
    sums = np.zeros(len(consumer))
    for h, u, c, s in results:
        hist += h
        unmatched += u
        counts += c
        sums += s
    per_slo = tuple(
        float(s / c) if c else 0.0 for s, c in zip(sums, counts)
    )
    total_count = int(counts.sum())
    mean_range = float(sums.sum() / total_count) if total_count else 0.0
    return SimulationOutcome(
        first_match_histogram=hist,
        unmatched_count=unmatched,
        match_probability=int(hist[0]) / config.experiments,
        mean_negotiation_range=mean_range,
        per_slo_negotiation_range=per_slo,
        experiments=config.experiments,
        seed=config.seed,
    )


def run_request_experiments(
    request: SlaRequest, config: SimulationConfig, workers: int = 1
) -> SimulationOutcome:
    """First-match experiment for a full SLA request."""
    return run_first_match_experiments(
        [s.interval for s in request.services], config, workers
    )
