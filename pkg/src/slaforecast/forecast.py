"""Analytical prediction: per-service match probabilities from the trend
line, SLA probability by the product rule, at-least-one-provider
probability via the binomial distribution, minimum-provider search,
subset-combination landscape and negotiation-range prediction.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from itertools import combinations

from .domain import SlaRequest, ValidationError
from .regression import (
    REFERENCE_PROBABILITY_LINE,
    REFERENCE_RANGE_LINE,
    Transform,
    TrendLine,
    predict,
)

# Lengths below the smallest calibration point are extrapolation and get
# flagged in the report.
EXTRAPOLATION_LIMIT = 10.0

MIN_PROVIDERS_CAP = 10**6


def single_probability(length: float, line: TrendLine | None = None) -> float:
    """Probability that one SLO of the given length overlaps one random
    provider offer, clamped into [0, 1]."""
    if not (0 < length <= 100):
        raise ValidationError(f"length must be in (0, 100], got {length}")
    if line is None:
        line = REFERENCE_PROBABILITY_LINE
    return min(1.0, max(0.0, predict(line, length)))


def sla_probability(lengths: list[float], line: TrendLine | None = None) -> float:
    """Product of the single probabilities: chance one random provider
    matches every SLO at once (independence assumed)."""
    if not lengths:
        raise ValidationError("need at least one length")
    p = 1.0
    for length in lengths:
        p *= single_probability(length, line)
    return p


def binomial_pmf(k: int, p: float, n: int) -> float:
    """Probability of exactly k successes in n independent trials."""
    if not (0 <= p <= 1):
        raise ValidationError(f"p must be in [0, 1], got {p}")
    if n < 1 or k < 0:
        raise ValidationError(f"need n >= 1 and k >= 0, got n={n}, k={k}")
    if k > n:
        raise ValidationError(f"k={k} exceeds n={n}")
    if p == 0.0:
        return 1.0 if k == 0 else 0.0
    if p == 1.0:
        return 1.0 if k == n else 0.0
    # Log-gamma keeps the coefficient stable for large n.
    log_pmf = (
        math.lgamma(n + 1)
        - math.lgamma(k + 1)
        - math.lgamma(n - k + 1)
        + k * math.log(p)
        + (n - k) * math.log1p(-p)
    )
    return math.exp(log_pmf)


def at_least_one(p: float, n: int) -> float:
    """1 - (1-p)^n: chance that contacting n providers yields at least
    one full match."""
    if not (0 <= p <= 1):
        raise ValidationError(f"p must be in [0, 1], got {p}")
    if n < 1:
        raise ValidationError(f"n must be >= 1, got {n}")
    if p == 0.0:
        return 0.0
    if p == 1.0:
        return 1.0
    return -math.expm1(n * math.log1p(-p))


def min_providers(
    p: float, threshold: float = 0.99, cap: int = MIN_PROVIDERS_CAP
) -> int | None:
    """Smallest n with at_least_one(p, n) > threshold, found by
    incrementing n one provider at a time.

    Returns None when even `cap` providers are not enough (the
    "unreachable" outcome).
    """
    if not (0 < p <= 1):
        raise ValidationError(f"p must be in (0, 1], got {p}")
    if not (0 < threshold < 1):
        raise ValidationError(f"threshold must be in (0, 1), got {threshold}")
    n = 1
    while at_least_one(p, n) <= threshold:
        n += 1
        if n > cap:
            return None
    return n


def _min_providers_closed_form(p: float, threshold: float) -> int:
    """Closed-form ceil(ln(1-t)/ln(1-p)) with a boundary correction for
    the strict comparison; test oracle for the iterative search."""
    if p == 1.0:
        return 1
    n = max(1, math.ceil(math.log1p(-threshold) / math.log1p(-p)))
    while at_least_one(p, n) <= threshold:
        n += 1
    while n > 1 and at_least_one(p, n - 1) > threshold:
        n -= 1
    return n


@dataclass(frozen=True)
class CombinationLandscape:
    """At-least-one probability for every nonempty subset of the
    requested services at a fixed provider count.

    Entries are ordered by subset size, then lexicographically by the
    member names.
    """

    provider_count: int
    entries: tuple[tuple[tuple[str, ...], float], ...]

    def to_rows(self) -> list[dict]:
        return [
            {"services": list(names), "at_least_one": prob}
            for names, prob in self.entries
        ]


LANDSCAPE_SERVICE_CAP = 20


def combination_landscape(
    request: SlaRequest, line: TrendLine | None = None
) -> CombinationLandscape:
    """Enumerate all 2^k - 1 nonempty service subsets with their
    at-least-one probabilities at the request's provider count."""
    k = len(request.services)
    if k > LANDSCAPE_SERVICE_CAP:
        raise ValidationError(
            f"landscape limited to {LANDSCAPE_SERVICE_CAP} services, got {k}"
        )
    singles = {s.name: single_probability(s.length, line) for s in request.services}
    names = sorted(singles)
    entries = []
    for size in range(1, k + 1):
        for subset in combinations(names, size):
            p = 1.0
            for name in subset:
                p *= singles[name]
            entries.append((subset, at_least_one(p, request.provider_count)))
    return CombinationLandscape(request.provider_count, tuple(entries))


def predict_negotiation_range(
    lengths: list[float], log_line: TrendLine | None = None
) -> tuple[list[float], float]:
    """Predicted negotiation range per service plus the total."""
    if log_line is None:
        log_line = REFERENCE_RANGE_LINE
    if log_line.transform is not Transform.NATURAL_LOG_X:
        raise ValidationError("negotiation-range line must use the log transform")
    per_service = []
    for length in lengths:
        if length <= 0:
            raise ValidationError(f"length must be > 0, got {length}")
        per_service.append(predict(log_line, length))
    return per_service, sum(per_service)


@dataclass(frozen=True)
class ForecastReport:
    """Full analytical forecast for one SLA request."""

    per_service: dict[str, float]
    sla_probability: float
    at_least_one: float
    curve: tuple[tuple[int, float], ...]
    min_providers_99: int | None
    negotiation_ranges: dict[str, float]
    negotiation_range_total: float
    provider_count: int
    threshold: float = 0.99
    extrapolated: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "per_service": dict(self.per_service),
            "sla_probability": self.sla_probability,
            "at_least_one": self.at_least_one,
            "curve": [[n, p] for n, p in self.curve],
            "min_providers_99": self.min_providers_99,
            "negotiation_ranges": dict(self.negotiation_ranges),
            "negotiation_range_total": self.negotiation_range_total,
            "provider_count": self.provider_count,
            "threshold": self.threshold,
            "extrapolated": list(self.extrapolated),
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    def curve_csv(self) -> str:
        lines = ["providers,at_least_one"]
        lines += [f"{n},{p!r}" for n, p in self.curve]
        return "\n".join(lines) + "\n"


def forecast(
    request: SlaRequest,
    prob_line: TrendLine | None = None,
    log_line: TrendLine | None = None,
    threshold: float = 0.99,
) -> ForecastReport:
    """Assemble the full forecast: single probabilities, product rule,
    at-least-one curve, minimum provider count and negotiation ranges."""
    per_service = {
        s.name: single_probability(s.length, prob_line) for s in request.services
    }
    p_sla = sla_probability(request.lengths(), prob_line)
    n = request.provider_count
    curve = tuple((i, at_least_one(p_sla, i)) for i in range(1, n + 1))
    ranges, total = predict_negotiation_range(request.lengths(), log_line)
    return ForecastReport(
        per_service=per_service,
        sla_probability=p_sla,
        at_least_one=curve[-1][1],
        curve=curve,
        min_providers_99=min_providers(p_sla, threshold) if p_sla > 0 else None,
        negotiation_ranges={
            s.name: r for s, r in zip(request.services, ranges)
        },
        negotiation_range_total=total,
        provider_count=n,
        threshold=threshold,
        extrapolated=tuple(
            s.name for s in request.services if s.length < EXTRAPOLATION_LIMIT
        ),
    )
