"""Shared value types: intervals on the 0..100 market axis, service
requirements and SLA requests.

All types are immutable and validated on construction; the rest of the
package can assume their invariants hold.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

MARKET_MIN = 0.0
MARKET_MAX = 100.0


class SlaForecastError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(SlaForecastError, ValueError):
    """Invalid input value or violated type invariant."""


class DegenerateDataError(SlaForecastError, ValueError):
    """Input data is structurally valid but unusable (e.g. all x equal)."""


@dataclass(frozen=True)
class Interval:
    """Closed numeric range on the market axis [0, 100]."""

    low: float
    high: float

    def __post_init__(self):
        if not (self.low <= self.high):
            raise ValidationError(f"interval low {self.low} > high {self.high}")
        if self.low < MARKET_MIN or self.high > MARKET_MAX:
            raise ValidationError(
                f"interval [{self.low}, {self.high}] outside market axis "
                f"[{MARKET_MIN}, {MARKET_MAX}]"
            )

    def length(self) -> float:
        return self.high - self.low

    @classmethod
    def from_length(cls, length: float, center: float = 50.0) -> "Interval":
        """Interval of the given length centered at `center` (default market
        midpoint, the canonical placement for length-only requirements)."""
        if not (0 <= length <= MARKET_MAX - MARKET_MIN):
            raise ValidationError(f"length {length} outside [0, 100]")
        return cls(center - length / 2.0, center + length / 2.0)


def overlaps(a: Interval, b: Interval) -> bool:
    """Closed-interval intersection test; touching endpoints count."""
    return a.low <= b.high and b.low <= a.high


def negotiation_range(a: Interval, b: Interval) -> float:
    """Length of the intersection of two overlapping intervals.

    This is the room left for bargaining between a consumer and a
    matching provider. Raises if the intervals do not overlap; callers
    must gate on overlaps().
    """
    if not overlaps(a, b):
        raise ValidationError(
            f"intervals [{a.low}, {a.high}] and [{b.low}, {b.high}] do not overlap"
        )
    return min(a.high, b.high) - max(a.low, b.low)


@dataclass(frozen=True)
class ServiceRequirement:
    """One consumer SLO: named interval with a priority rank.

    Priority 1 is the most important; larger numbers mean the service is
    more expendable when the optimizer widens intervals.
    """

    name: str
    interval: Interval
    priority: int = 1

    def __post_init__(self):
        if not self.name:
            raise ValidationError("service name must be nonempty")
        if int(self.priority) != self.priority or self.priority < 1:
            raise ValidationError(
                f"service {self.name!r}: priority must be a positive integer, "
                f"got {self.priority}"
            )

    @property
    def length(self) -> float:
        return self.interval.length()


@dataclass(frozen=True)
class SlaRequest:
    """Ordered set of service requirements plus the number of providers
    the consumer is willing to contact."""

    services: tuple[ServiceRequirement, ...]
    provider_count: int

    def __post_init__(self):
        object.__setattr__(self, "services", tuple(self.services))
        if not self.services:
            raise ValidationError("SLA request needs at least one service")
        names = [s.name for s in self.services]
        if len(set(names)) != len(names):
            dupes = sorted({n for n in names if names.count(n) > 1})
            raise ValidationError(f"duplicate service names: {dupes}")
        if int(self.provider_count) != self.provider_count or self.provider_count < 1:
            raise ValidationError(
                f"provider count must be a positive integer, got {self.provider_count}"
            )

    def lengths(self) -> list[float]:
        return [s.length for s in self.services]


class ProviderLengthLaw(Enum):
    """How provider interval lengths are drawn by the market simulator."""

    UNIFORM_CLIPPED = "uniform_clipped"
    FIXED_LENGTH = "fixed_length"


@dataclass(frozen=True)
class MarketModel:
    """Market geometry and the law generating provider offers.

    UNIFORM_CLIPPED draws offer lengths uniformly over the whole market
    span on the unit grid and places them with flexible boundaries so a
    consumer interval's position does not affect its match probability;
    offers protruding past the market edges are clipped. FIXED_LENGTH
    keeps the flexible placement but uses one constant offer length.
    """

    domain_min: float = MARKET_MIN
    domain_max: float = MARKET_MAX
    length_law: ProviderLengthLaw = ProviderLengthLaw.UNIFORM_CLIPPED
    fixed_length: float | None = None

    def __post_init__(self):
        if not (self.domain_min < self.domain_max):
            raise ValidationError("market domain_min must be < domain_max")
        if self.domain_min < MARKET_MIN or self.domain_max > MARKET_MAX:
            raise ValidationError("market domain must lie within [0, 100]")
        if self.length_law is ProviderLengthLaw.FIXED_LENGTH:
            span = self.domain_max - self.domain_min
            if self.fixed_length is None or not (0 < self.fixed_length <= span):
                raise ValidationError(
                    f"fixed_length must be in (0, {span}], got {self.fixed_length}"
                )
        elif self.fixed_length is not None:
            raise ValidationError("fixed_length only applies to FIXED_LENGTH law")

    @property
    def span(self) -> float:
        return self.domain_max - self.domain_min
