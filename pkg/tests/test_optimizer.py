import pytest

from slaforecast import (
    Interval,
    ServiceRequirement,
    SlaRequest,
    TrendLine,
    at_least_one,
    optimize,
    sla_probability,
)


class TestGoldenCases:
    def test_example_extends_only_lowest_priority(self, example_request):
        result = optimize(example_request, threshold=0.99)
        assert result.feasible
        assert result.adjusted_lengths["Service A"] == 20
        assert result.adjusted_lengths["Service B"] == 30
        assert result.adjusted_lengths["Service C"] == pytest.approx(84, abs=1)
        assert result.final_probability > 0.99

    def test_use_case_extends_three_services(self, use_case_request):
        result = optimize(use_case_request, threshold=0.99)
        assert result.feasible
        adjusted = result.adjusted_lengths
        assert adjusted["Service A"] == 20
        assert adjusted["Service B"] == 30
        assert adjusted["Service C"] == pytest.approx(84, abs=1)
        assert adjusted["Service D"] == 100
        assert adjusted["Service E"] == 100
        assert result.final_probability > 0.99

    def test_already_feasible_is_identity(self):
        req = SlaRequest(
            (ServiceRequirement("A", Interval.from_length(100)),), provider_count=5
        )
        result = optimize(req)
        assert result.steps == 0
        assert result.trace == ()
        assert result.adjusted_lengths == {"A": 100.0}


class TestAlgorithmProperties:
    def test_extension_order_follows_priority(self, use_case_request):
        result = optimize(use_case_request)
        names = [name for name, _ in result.trace]
        # Least important first; a service only starts once the previous
        # one is exhausted at 100.
        first_c = names.index("Service C")
        first_d = names.index("Service D")
        assert set(names[: names.index("Service D")]) == {"Service E"}
        assert set(names[first_d:first_c]) == {"Service D"}
        assert set(names[first_c:]) == {"Service C"}

    def test_monotone_progress(self, use_case_request):
        result = optimize(use_case_request)
        lengths = {s.name: s.length for s in use_case_request.services}
        n = use_case_request.provider_count
        prev = at_least_one(sla_probability(list(lengths.values())), n)
        for name, new_length in result.trace:
            lengths[name] = new_length
            prob = at_least_one(sla_probability(list(lengths.values())), n)
            assert prob >= prev - 1e-12
            prev = prob

    def test_idempotent(self, example_request):
        first = optimize(example_request)
        widened = SlaRequest(
            services=tuple(
                ServiceRequirement(
                    s.name,
                    Interval.from_length(first.adjusted_lengths[s.name]),
                    s.priority,
                )
                for s in example_request.services
            ),
            provider_count=example_request.provider_count,
        )
        again = optimize(widened)
        assert again.steps == 0
        assert again.adjusted_lengths == first.adjusted_lengths

    def test_deterministic(self, use_case_request):
        a = optimize(use_case_request)
        b = optimize(use_case_request)
        assert a == b

    def test_equal_priorities_extend_first_listed_first(self):
        req = SlaRequest(
            (
                ServiceRequirement("X", Interval.from_length(10), 1),
                ServiceRequirement("Y", Interval.from_length(10), 1),
            ),
            provider_count=2,
        )
        result = optimize(req, threshold=0.9)
        names = [n for n, _ in result.trace]
        assert names[0] == "X"
        if "Y" in names:
            assert set(names[: names.index("Y")]) == {"X"}


class TestInfeasibility:
    def test_terminates_infeasible_at_all_100(self):
        # A line whose ceiling stays below 1 makes the threshold unreachable.
        weak_line = TrendLine(slope=0.005, intercept=0.3)
        req = SlaRequest(
            (ServiceRequirement("A", Interval.from_length(10)),), provider_count=1
        )
        result = optimize(req, threshold=0.9999, prob_line=weak_line)
        assert not result.feasible
        assert result.adjusted_lengths == {"A": 100.0}
        assert result.final_probability <= 0.9999

    def test_infeasible_is_result_not_error(self):
        weak_line = TrendLine(slope=0.001, intercept=0.1)
        req = SlaRequest(
            (
                ServiceRequirement("A", Interval.from_length(10), 1),
                ServiceRequirement("B", Interval.from_length(10), 2),
            ),
            provider_count=1,
        )
        result = optimize(req, threshold=0.99, prob_line=weak_line)
        assert not result.feasible
        assert all(v == 100 for v in result.adjusted_lengths.values())


class TestSerialization:
    def test_json_fields(self, example_request):
        doc = optimize(example_request).to_dict(include_trace=True)
        for key in ("adjusted_lengths", "final_probability", "feasible", "steps", "trace"):
            assert key in doc
