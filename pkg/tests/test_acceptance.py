"""Acceptance criteria, one test per criterion, each printing a PASS
line with the measured values at its stated tolerance.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines.
"""

import math
import random

import numpy as np
import pytest

from slaforecast import (
    Interval,
    SimulationConfig,
    at_least_one,
    binomial_pmf,
    combination_landscape,
    fit,
    forecast,
    match_probability_at,
    min_providers,
    optimize,
    run_first_match_experiments,
    sweep_consumer_lengths,
)
from slaforecast.forecast import _min_providers_closed_form
from slaforecast.regression import negotiation_series, probability_series

CALIBRATION_P = [0.381, 0.449, 0.517, 0.587, 0.656, 0.724, 0.793, 0.862, 0.932, 1.000]
CALIBRATION_R = [8.01, 13.56, 17.63, 20.76, 23.22, 25.00, 26.86, 28.23, 29.44, 30.43]
LENGTHS = [float(l) for l in range(10, 101, 10)]


@pytest.fixture(scope="module")
def million_sweep():
    config = SimulationConfig(experiments=1_000_000, seed=42)
    return sweep_consumer_lengths(LENGTHS, config)


def _report(criterion: str, detail: str):
    print(f"{criterion} PASS  {detail}")


def test_a1_match_probability_table(million_sweep):
    """A1: simulated first-provider match probabilities within 0.5 pp."""
    worst = 0.0
    for row, expected in zip(million_sweep, CALIBRATION_P):
        diff = abs(row.match_probability - expected)
        worst = max(worst, diff)
        assert diff <= 0.005, f"length {row.length}: {row.match_probability} vs {expected}"
    _report("A1", f"max deviation {worst * 100:.3f} pp (tolerance 0.5 pp)")


def test_a2_negotiation_range_table(million_sweep):
    """A2: conditional mean negotiation ranges within 0.3 absolute."""
    worst = 0.0
    for row, expected in zip(million_sweep, CALIBRATION_R):
        diff = abs(row.mean_negotiation_range - expected)
        worst = max(worst, diff)
        assert diff <= 0.3, f"length {row.length}: {row.mean_negotiation_range} vs {expected}"
    _report("A2", f"max deviation {worst:.3f} (tolerance 0.3)")


def test_a3_regression_golden():
    """A3: calibration fits reproduce the published coefficients."""
    line = fit(probability_series())
    d = line.diagnostics
    assert abs(line.slope - 0.00688667) <= 1e-6
    assert abs(line.intercept - 0.31133315) <= 1e-5
    assert abs(d.r2 - 0.99999347) <= 1e-6
    assert abs(d.sse - 2.9333e-6) <= 1e-8
    log_line = fit(negotiation_series())
    assert abs(log_line.slope - 10.01) <= 0.01
    assert abs(log_line.intercept - (-15.854)) <= 0.01
    assert abs(log_line.diagnostics.r2 - 0.9967) <= 0.0005
    _report(
        "A3",
        f"slope {line.slope:.8f}, intercept {line.intercept:.8f}, "
        f"log slope {log_line.slope:.4f}, log intercept {log_line.intercept:.4f}",
    )


def test_a4_worked_examples(example_request, use_case_request):
    """A4: worked-example probabilities, provider count and ranges."""
    simple = forecast(example_request)
    assert abs(simple.sla_probability - 0.0884) <= 1e-4
    assert abs(simple.at_least_one - 0.8429) <= 5e-4
    full = forecast(use_case_request)
    assert abs(full.sla_probability - 0.071423) <= 5e-5
    assert abs(full.at_least_one - 0.773) <= 1e-3
    assert full.min_providers_99 == 63
    assert abs(full.negotiation_range_total - 101.15) <= 0.05
    assert len(combination_landscape(use_case_request).entries) == 31
    _report(
        "A4",
        f"sla {simple.sla_probability:.6f}/{full.sla_probability:.6f}, "
        f"at-least-one {simple.at_least_one:.4f}/{full.at_least_one:.4f}, "
        f"min providers {full.min_providers_99}, "
        f"range total {full.negotiation_range_total:.3f}, 31 combinations",
    )


def test_a5_optimizer_golden(example_request, use_case_request):
    """A5: optimizer widens the expendable services to the published lengths."""
    simple = optimize(example_request, threshold=0.99)
    assert simple.adjusted_lengths["Service A"] == 20
    assert simple.adjusted_lengths["Service B"] == 30
    assert abs(simple.adjusted_lengths["Service C"] - 84) <= 1
    assert simple.final_probability > 0.99
    full = optimize(use_case_request, threshold=0.99)
    assert full.adjusted_lengths["Service A"] == 20
    assert full.adjusted_lengths["Service B"] == 30
    assert abs(full.adjusted_lengths["Service C"] - 84) <= 1
    assert full.adjusted_lengths["Service D"] == 100
    assert full.adjusted_lengths["Service E"] == 100
    assert full.final_probability > 0.99
    _report(
        "A5",
        f"C -> {simple.adjusted_lengths['Service C']:.0f} and "
        f"{full.adjusted_lengths['Service C']:.0f}, D/E -> 100, "
        f"final probabilities {simple.final_probability:.4f}/{full.final_probability:.4f}",
    )


def test_a6_forecast_vs_simulation(example_request):
    """A6: analytical curve within 3 MC standard errors + 0.02 of the
    empirical cumulative first-match curve (10^5 experiments)."""
    n_exp = 100_000
    config = SimulationConfig(experiments=n_exp, seed=2024)
    outcome = run_first_match_experiments(
        [s.interval for s in example_request.services], config
    )
    empirical = outcome.cumulative_fractions()
    report = forecast(example_request)
    worst = -math.inf
    for n, analytic in report.curve:
        emp = empirical[n - 1]
        se = math.sqrt(max(emp * (1 - emp), 1e-12) / n_exp)
        margin = 3 * se + 0.02
        gap = abs(analytic - emp)
        worst = max(worst, gap - margin)
        assert gap <= margin, f"n={n}: analytic {analytic} vs empirical {emp}"
    _report("A6", f"all 20 curve points inside margin (worst slack {-worst:.4f})")


def test_a7_property_suites(use_case_request):
    """A7: statistical and algebraic property suites."""
    # Position independence at 3 sigma.
    n = 100_000
    config = SimulationConfig(experiments=n, seed=29)
    estimates = [
        match_probability_at(c, config)
        for c in (Interval(0, 20), Interval(40, 60), Interval(80, 100))
    ]
    for i in range(3):
        for j in range(i + 1, 3):
            limit = 3 * math.sqrt(
                estimates[i] * (1 - estimates[i]) / n
                + estimates[j] * (1 - estimates[j]) / n
            )
            assert abs(estimates[i] - estimates[j]) <= limit

    # Determinism under seed + parallelism: bit-identical outcomes.
    consumer = [s.interval for s in use_case_request.services]
    cfg = SimulationConfig(experiments=200_000, seed=55)
    serial = run_first_match_experiments(consumer, cfg, workers=1)
    parallel = run_first_match_experiments(consumer, cfg, workers=4)
    assert np.array_equal(serial.first_match_histogram, parallel.first_match_histogram)
    assert serial.mean_negotiation_range == parallel.mean_negotiation_range
    assert serial.unmatched_count == parallel.unmatched_count

    # Iterative vs closed-form minimum-provider search, 10^4 random cases.
    rng = random.Random(777)
    for _ in range(10_000):
        p = rng.uniform(1e-3, 1.0)
        threshold = rng.uniform(0.5, 0.9999)
        assert min_providers(p, threshold) == _min_providers_closed_form(p, threshold)

    # Regression diagnostic identities.
    for series in (probability_series(), negotiation_series()):
        d = fit(series).diagnostics
        xs, ys = series.transformed()
        y_mean = sum(ys) / len(ys)
        ss_t = sum((y - y_mean) ** 2 for y in ys)
        assert abs(d.residual_sum) <= 1e-9 * max(abs(y) for y in ys)
        assert abs(d.r2 - (1 - d.sse / ss_t)) <= 1e-9
        assert abs(d.r2 - d.var_predicted / d.var_observed) <= 1e-9

    # Landscape monotonicity: supersets never beat subsets.
    entries = dict(combination_landscape(use_case_request).entries)
    for sub, p_sub in entries.items():
        for sup, p_sup in entries.items():
            if set(sub) < set(sup):
                assert p_sup <= p_sub + 1e-12

    # Binomial PMF normalization.
    for trials in (1, 5, 20, 100):
        for p in (0.0, 0.071423, 0.3, 0.5, 0.9, 1.0):
            total = sum(binomial_pmf(k, p, trials) for k in range(trials + 1))
            assert abs(total - 1.0) <= 1e-9

    _report(
        "A7",
        "position independence, parallel determinism, min-provider oracle "
        "(10^4 cases), regression identities, landscape monotonicity, "
        "PMF normalization",
    )
