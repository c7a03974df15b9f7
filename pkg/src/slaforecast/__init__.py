"""Forecasting toolkit for SLA matching on a simulated provider market.

Predicts the probability that a consumer's requested SLA (a set of SLO
parameter intervals) matches at least one provider, the expected
negotiation range, and how to widen the intervals to guarantee a match.
An embedded Monte Carlo market simulator validates the analytical model.
"""

from .domain import (
    Interval,
    MarketModel,
    ServiceRequirement,
    SlaRequest,
    ValidationError,
    DegenerateDataError,
    SlaForecastError,
    negotiation_range,
    overlaps,
)
from .regression import (
    DataSeries,
    Diagnostics,
    Transform,
    TrendLine,
    REFERENCE_PROBABILITY_LINE,
    REFERENCE_RANGE_LINE,
    fit,
    predict,
)
from .forecast import (
    CombinationLandscape,
    ForecastReport,
    at_least_one,
    binomial_pmf,
    combination_landscape,
    forecast,
    min_providers,
    predict_negotiation_range,
    single_probability,
    sla_probability,
)
from .marketsim import (
    SimulationConfig,
    SimulationOutcome,
    SweepRow,
    generate_provider_interval,
    match_probability_at,
    measure_negotiation_range,
    run_first_match_experiments,
    sweep_consumer_lengths,
)
from .optimizer import OptimizationResult, optimize

__all__ = [
    "Interval",
    "MarketModel",
    "ServiceRequirement",
    "SlaRequest",
    "ValidationError",
    "DegenerateDataError",
    "SlaForecastError",
    "overlaps",
    "negotiation_range",
    "DataSeries",
    "Diagnostics",
    "Transform",
    "TrendLine",
    "REFERENCE_PROBABILITY_LINE",
    "REFERENCE_RANGE_LINE",
    "fit",
    "predict",
    "ForecastReport",
    "CombinationLandscape",
    "single_probability",
    "sla_probability",
    "binomial_pmf",
    "at_least_one",
    "min_providers",
    "combination_landscape",
    "predict_negotiation_range",
    "forecast",
    "SimulationConfig",
    "SimulationOutcome",
    "SweepRow",
    "generate_provider_interval",
    "run_first_match_experiments",
    "measure_negotiation_range",
    "match_probability_at",
    "sweep_consumer_lengths",
    "OptimizationResult",
    "optimize",
]
