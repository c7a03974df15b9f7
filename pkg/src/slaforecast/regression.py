"""Simple linear regression with full diagnostics, plus the natural-log
input transform used for the negotiation-range model.

Also ships the reference trend lines (probability-vs-length and
log-length-vs-negotiation-range) fitted to the bundled calibration
tables from a one-million-experiment market simulation, so forecasting
works without re-running the simulator.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum

from .domain import DegenerateDataError, ValidationError


class Transform(Enum):
    IDENTITY = "identity"
    NATURAL_LOG_X = "natural_log_x"

    def apply(self, x: float) -> float:
        if self is Transform.NATURAL_LOG_X:
            if x <= 0:
                raise ValidationError(f"log transform requires x > 0, got {x}")
            return math.log(x)
        return x


@dataclass(frozen=True)
class DataSeries:
    """(x, y) points with an optional input transform applied before fitting."""

    points: tuple[tuple[float, float], ...]
    transform: Transform = Transform.IDENTITY

    def __post_init__(self):
        object.__setattr__(self, "points", tuple((float(x), float(y)) for x, y in self.points))
        if len(self.points) < 2:
            raise ValidationError("need at least 2 points to fit")
        xs = [self.transform.apply(x) for x, _ in self.points]
        if len(set(xs)) < 2:
            raise DegenerateDataError("need at least 2 distinct x values after transform")

    def transformed(self) -> tuple[list[float], list[float]]:
        xs = [self.transform.apply(x) for x, _ in self.points]
        ys = [y for _, y in self.points]
        return xs, ys


@dataclass(frozen=True)
class Diagnostics:
    residual_sum: float
    sse: float
    var_observed: float
    var_predicted: float
    r2: float

    def __post_init__(self):
        if not (-1e-9 <= self.r2 <= 1.0 + 1e-9):
            raise ValidationError(f"r2 {self.r2} outside [0, 1]")

    def to_dict(self) -> dict:
        return {
            "residual_sum": self.residual_sum,
            "sse": self.sse,
            "var_observed": self.var_observed,
            "var_predicted": self.var_predicted,
            "r2": self.r2,
        }


@dataclass(frozen=True)
class TrendLine:
    """Fitted line y = slope * T(x) + intercept, where T is the transform."""

    slope: float
    intercept: float
    transform: Transform = Transform.IDENTITY
    diagnostics: Diagnostics | None = None

    def to_dict(self) -> dict:
        d = {
            "slope": self.slope,
            "intercept": self.intercept,
            "transform": self.transform.value,
        }
        if self.diagnostics is not None:
            d["diagnostics"] = self.diagnostics.to_dict()
        return d

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, d: dict) -> "TrendLine":
        diag = d.get("diagnostics")
        return cls(
            slope=float(d["slope"]),
            intercept=float(d["intercept"]),
            transform=Transform(d.get("transform", "identity")),
            diagnostics=Diagnostics(**diag) if diag else None,
        )


def fit(series: DataSeries) -> TrendLine:
    """Ordinary least squares on the (transformed x, y) points.

    Diagnostics use population variances (divide by the number of
    values), so r2 equals both var_predicted/var_observed and
    1 - SSE/SS_t.
    """
    xs, ys = series.transformed()
    n = len(xs)
    x_mean = sum(xs) / n
    y_mean = sum(ys) / n
    sxx = sum((x - x_mean) ** 2 for x in xs)
    if sxx == 0:
        raise DegenerateDataError("all x values equal after transform; slope undefined")
    sxy = sum((x - x_mean) * (y - y_mean) for x, y in zip(xs, ys))
    slope = sxy / sxx
    intercept = y_mean - slope * x_mean

    preds = [slope * x + intercept for x in xs]
    residual_sum = sum(y - p for y, p in zip(ys, preds))
    sse = sum((y - p) ** 2 for y, p in zip(ys, preds))
    var_obs = sum((y - y_mean) ** 2 for y in ys) / n
    var_pred = sum((p - y_mean) ** 2 for p in preds) / n
    r2 = 1.0 if var_obs == 0 else min(var_pred / var_obs, 1.0)
    return TrendLine(
        slope=slope,
        intercept=intercept,
        transform=series.transform,
        diagnostics=Diagnostics(
            residual_sum=residual_sum,
            sse=sse,
            var_observed=var_obs,
            var_predicted=var_pred,
            r2=r2,
        ),
    )


def predict(line: TrendLine, x: float) -> float:
    """Evaluate the line at x, applying its input transform first.

    No clamping happens here; probability clamping is forecast policy.
    """
    return line.slope * line.transform.apply(x) + line.intercept


# Calibration tables from the reference market simulation (10^6
# experiments per consumer length): first-provider match probability and
# conditional mean negotiation range per consumer interval length.
CALIBRATION_LENGTHS = tuple(float(v) for v in range(10, 101, 10))
CALIBRATION_MATCH_PROBABILITIES = (
    0.381, 0.449, 0.517, 0.587, 0.656, 0.724, 0.793, 0.862, 0.932, 1.000,
)
CALIBRATION_NEGOTIATION_RANGES = (
    8.01, 13.56, 17.63, 20.76, 23.22, 25.00, 26.86, 28.23, 29.44, 30.43,
)

# Reference coefficients and diagnostics as published with the
# calibration; kept verbatim so worked examples reproduce exactly.
REFERENCE_PROBABILITY_LINE = TrendLine(
    slope=0.00688667,
    intercept=0.31133315,
    transform=Transform.IDENTITY,
    diagnostics=Diagnostics(
        residual_sum=0.0,
        sse=2.9333e-6,
        var_observed=0.03912689,
        var_predicted=0.039126635,
        r2=0.99999347,
    ),
)
REFERENCE_RANGE_LINE = TrendLine(
    slope=10.01,
    intercept=-15.85413,
    transform=Transform.NATURAL_LOG_X,
    diagnostics=Diagnostics(
        residual_sum=0.0,
        sse=1.607,
        var_observed=48.594164,
        var_predicted=48.4336221,
        r2=0.9967,
    ),
)


def probability_series() -> DataSeries:
    """Calibration (length, match probability) series for refitting."""
    return DataSeries(tuple(zip(CALIBRATION_LENGTHS, CALIBRATION_MATCH_PROBABILITIES)))


def negotiation_series() -> DataSeries:
    """Calibration (length, negotiation range) series with log transform."""
    return DataSeries(
        tuple(zip(CALIBRATION_LENGTHS, CALIBRATION_NEGOTIATION_RANGES)),
        transform=Transform.NATURAL_LOG_X,
    )
