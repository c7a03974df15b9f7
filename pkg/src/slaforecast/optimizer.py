"""Greedy interval optimization: widen consumer intervals in ascending
importance order, one step at a time, until the at-least-one probability
exceeds the threshold.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .domain import SlaRequest, ValidationError
from .forecast import at_least_one, sla_probability
from .regression import TrendLine

# How a widened length maps back onto a concrete interval: extend the
# upper bound first, clip at the market maximum and overflow the
# remainder to the lower bound.
PLACEMENT_POLICY = "extend-upper-overflow-lower"

MAX_LENGTH = 100.0


@dataclass(frozen=True)
class OptimizationResult:
    adjusted_lengths: dict[str, float]
    final_probability: float
    feasible: bool
    steps: int
    trace: tuple[tuple[str, float], ...] = ()
    placement_policy: str = PLACEMENT_POLICY

    def to_dict(self, include_trace: bool = False) -> dict:
        d = {
            "adjusted_lengths": dict(self.adjusted_lengths),
            "final_probability": self.final_probability,
            "feasible": self.feasible,
            "steps": self.steps,
            "placement_policy": self.placement_policy,
        }
        if include_trace:
            d["trace"] = [[name, length] for name, length in self.trace]
        return d

    def to_json(self, include_trace: bool = False, **kwargs) -> str:
        return json.dumps(self.to_dict(include_trace), **kwargs)


def optimize(
    request: SlaRequest,
    threshold: float = 0.99,
    step: float = 1.0,
    prob_line: TrendLine | None = None,
) -> OptimizationResult:
    """Widen service intervals until at_least_one(...) > threshold.

    Services are processed from least important (largest priority
    number) to most important; equal priorities keep their request
    order, first-listed extended first. A service is only widened after
    every less important one has reached the full market length. If all
    services reach 100 and the threshold is still not exceeded, the
    request is infeasible and the all-100 state is returned.
    """
    if not (0 < threshold < 1):
        raise ValidationError(f"threshold must be in (0, 1), got {threshold}")
    if step <= 0:
        raise ValidationError(f"step must be > 0, got {step}")

    lengths = {s.name: s.length for s in request.services}
    # Stable sort: ties keep request order.
    order = [s.name for s in sorted(request.services, key=lambda s: -s.priority)]
    n = request.provider_count

    trace: list[tuple[str, float]] = []
    steps = 0
    idx = 0
    while True:
        prob = at_least_one(sla_probability(list(lengths.values()), prob_line), n)
        if prob > threshold:
            feasible = True
            break
        while idx < len(order) and lengths[order[idx]] >= MAX_LENGTH:
            idx += 1
        if idx == len(order):
            feasible = False
            break
        name = order[idx]
        lengths[name] = min(MAX_LENGTH, lengths[name] + step)
        trace.append((name, lengths[name]))
        steps += 1

    return OptimizationResult(
        adjusted_lengths=lengths,
        final_probability=prob,
        feasible=feasible,
        steps=steps,
        trace=tuple(trace),
    )
