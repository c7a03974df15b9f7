import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from slaforecast import (
    DataSeries,
    DegenerateDataError,
    Transform,
    TrendLine,
    ValidationError,
    fit,
    predict,
)
from slaforecast.regression import (
    REFERENCE_PROBABILITY_LINE,
    REFERENCE_RANGE_LINE,
    negotiation_series,
    probability_series,
)


class TestFitGolden:
    def test_probability_calibration(self):
        line = fit(probability_series())
        assert line.slope == pytest.approx(0.00688667, abs=1e-6)
        assert line.intercept == pytest.approx(0.31133315, abs=1e-5)
        d = line.diagnostics
        assert d.r2 == pytest.approx(0.99999347, abs=1e-6)
        assert d.sse == pytest.approx(2.9333e-6, abs=1e-8)
        assert d.var_observed == pytest.approx(0.03912689, abs=1e-8)

    def test_negotiation_calibration_log_fit(self):
        line = fit(negotiation_series())
        assert line.transform is Transform.NATURAL_LOG_X
        assert line.slope == pytest.approx(10.01, abs=0.01)
        assert line.intercept == pytest.approx(-15.854, abs=0.01)
        assert line.diagnostics.r2 == pytest.approx(0.9967, abs=0.0005)
        assert line.diagnostics.sse == pytest.approx(1.607, abs=0.01)

    def test_exact_line(self):
        line = fit(DataSeries(((0, 0), (1, 1), (2, 2))))
        assert line.slope == pytest.approx(1)
        assert line.intercept == pytest.approx(0, abs=1e-12)
        assert line.diagnostics.r2 == pytest.approx(1)
        assert line.diagnostics.sse == pytest.approx(0, abs=1e-12)


class TestPredictGolden:
    def test_negotiation_range_at_60(self):
        assert predict(REFERENCE_RANGE_LINE, 60) == pytest.approx(25.127, abs=0.005)

    def test_probability_at_20(self):
        assert predict(REFERENCE_PROBABILITY_LINE, 20) == pytest.approx(0.4491, abs=1e-4)

    def test_centroid_of_calibration(self):
        # Regression lines pass through the centroid.
        assert predict(REFERENCE_PROBABILITY_LINE, 55) == pytest.approx(0.6901, abs=1e-4)

    def test_log_transform_rejects_nonpositive(self):
        with pytest.raises(ValidationError):
            predict(REFERENCE_RANGE_LINE, 0)
        with pytest.raises(ValidationError):
            predict(REFERENCE_RANGE_LINE, -3)


def random_series(seed, n=12):
    rng = random.Random(seed)
    xs = [rng.uniform(0.1, 100) for _ in range(n)]
    return DataSeries(tuple((x, 2.5 * x - 3 + rng.gauss(0, 5)) for x in xs))


class TestDiagnosticIdentities:
    @pytest.mark.parametrize("seed", range(6))
    def test_residual_sum_is_zero(self, seed):
        series = random_series(seed)
        d = fit(series).diagnostics
        scale = max(abs(y) for _, y in series.points)
        assert abs(d.residual_sum) <= 1e-9 * max(scale, 1.0)

    @pytest.mark.parametrize("seed", range(6))
    def test_two_r2_forms_agree(self, seed):
        series = random_series(seed)
        xs, ys = series.transformed()
        line = fit(series)
        d = line.diagnostics
        y_mean = sum(ys) / len(ys)
        ss_t = sum((y - y_mean) ** 2 for y in ys)
        assert d.r2 == pytest.approx(1 - d.sse / ss_t, abs=1e-9)
        assert d.r2 == pytest.approx(d.var_predicted / d.var_observed, rel=1e-9)

    def test_centroid_property(self):
        series = random_series(99)
        xs, ys = series.transformed()
        line = fit(series)
        x_mean = sum(xs) / len(xs)
        y_mean = sum(ys) / len(ys)
        assert line.slope * x_mean + line.intercept == pytest.approx(y_mean)

    @given(st.randoms(use_true_random=False))
    def test_reorder_invariance(self, rnd):
        series = random_series(7)
        points = list(series.points)
        rnd.shuffle(points)
        a = fit(series)
        b = fit(DataSeries(tuple(points)))
        assert a.slope == pytest.approx(b.slope, rel=1e-12)
        assert a.intercept == pytest.approx(b.intercept, rel=1e-12)


class TestValidation:
    def test_degenerate_all_equal_x(self):
        with pytest.raises(DegenerateDataError):
            fit(DataSeries(((5, 1), (5, 2), (5, 3))))

    def test_too_few_points(self):
        with pytest.raises(ValidationError):
            DataSeries(((1, 2),))

    def test_log_requires_positive_x(self):
        with pytest.raises(ValidationError):
            DataSeries(((0, 1), (2, 3)), transform=Transform.NATURAL_LOG_X)


class TestSerialization:
    def test_roundtrip(self):
        line = fit(probability_series())
        again = TrendLine.from_dict(__import__("json").loads(line.to_json()))
        assert again == line

    def test_reference_lines_have_published_diagnostics(self):
        assert REFERENCE_PROBABILITY_LINE.diagnostics.r2 == 0.99999347
        assert REFERENCE_RANGE_LINE.diagnostics.r2 == 0.9967
        assert REFERENCE_RANGE_LINE.diagnostics.sse == 1.607
