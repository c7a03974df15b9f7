from pathlib import Path

import pytest

from slaforecast import Interval, ServiceRequirement, SlaRequest

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def example_request() -> SlaRequest:
    """Three services (lengths 20/30/10, priorities 2/1/3), 20 providers."""
    return SlaRequest(
        services=(
            ServiceRequirement("Service A", Interval.from_length(20), 2),
            ServiceRequirement("Service B", Interval.from_length(30), 1),
            ServiceRequirement("Service C", Interval.from_length(10), 3),
        ),
        provider_count=20,
    )


@pytest.fixture
def use_case_request() -> SlaRequest:
    """Five services (lengths 20/30/20/70/80, priorities 1..5), 20 providers."""
    return SlaRequest(
        services=tuple(
            ServiceRequirement(name, Interval.from_length(length), priority)
            for name, length, priority in [
                ("Service A", 20, 1),
                ("Service B", 30, 2),
                ("Service C", 20, 3),
                ("Service D", 70, 4),
                ("Service E", 80, 5),
            ]
        ),
        provider_count=20,
    )
