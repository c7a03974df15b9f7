#!/usr/bin/env python3
"""Record canonical API responses for the cockpit's offline test suite.

Runs the HTTP service in-process and writes each response verbatim to
frontend/test/fixtures/, so the frontend tests exercise real service
output without needing a live server.
"""

import json
from pathlib import Path

from fastapi.testclient import TestClient

from slaforecast.api import app

OUT_DIR = Path(__file__).resolve().parent.parent / "frontend" / "test" / "fixtures"

USE_CASE_SERVICES = [
    {"name": "Service A", "length": 20, "priority": 1},
    {"name": "Service B", "length": 30, "priority": 2},
    {"name": "Service C", "length": 20, "priority": 3},
    {"name": "Service D", "length": 70, "priority": 4},
    {"name": "Service E", "length": 80, "priority": 5},
]

OPTIMIZED_USE_CASE_SERVICES = [
    {"name": "Service A", "length": 20, "priority": 1},
    {"name": "Service B", "length": 30, "priority": 2},
    {"name": "Service C", "length": 84, "priority": 3},
    {"name": "Service D", "length": 100, "priority": 4},
    {"name": "Service E", "length": 100, "priority": 5},
]

EXAMPLE_SERVICES = [
    {"name": "Service A", "length": 20, "priority": 2},
    {"name": "Service B", "length": 30, "priority": 1},
    {"name": "Service C", "length": 10, "priority": 3},
]

FIXTURES = {
    "forecast_use_case_n20.json": (
        "/v1/forecast",
        {"providers": 20, "services": USE_CASE_SERVICES,
         "curve": True, "landscape": True},
    ),
    "forecast_use_case_n63.json": (
        "/v1/forecast",
        {"providers": 63, "services": USE_CASE_SERVICES, "curve": True},
    ),
    "forecast_use_case_optimized_n20.json": (
        "/v1/forecast",
        {"providers": 20, "services": OPTIMIZED_USE_CASE_SERVICES,
         "curve": True, "landscape": True},
    ),
    "optimize_use_case.json": (
        "/v1/optimize",
        {"providers": 20, "services": USE_CASE_SERVICES},
    ),
    "forecast_example_n20.json": (
        "/v1/forecast",
        {"providers": 20, "services": EXAMPLE_SERVICES,
         "curve": True, "landscape": True},
    ),
    "forecast_example_n50.json": (
        "/v1/forecast",
        {"providers": 50, "services": EXAMPLE_SERVICES, "curve": True},
    ),
    "optimize_example.json": (
        "/v1/optimize",
        {"providers": 20, "services": EXAMPLE_SERVICES},
    ),
    "simulate_example_1e5.json": (
        "/v1/simulate",
        {"providers": 20, "services": EXAMPLE_SERVICES,
         "experiments": 100_000, "seed": 0},
    ),
}


def main():
    OUT_DIR.mkdir(parents=True, exist_ok=True)
    client = TestClient(app)
    for name, (path, body) in FIXTURES.items():
        resp = client.post(path, json=body)
        resp.raise_for_status()
        target = OUT_DIR / name
        target.write_text(json.dumps(resp.json(), indent=2) + "\n")
        print(f"wrote {target} ({target.stat().st_size} bytes)")


if __name__ == "__main__":
    main()
