"""Stateless HTTP/JSON facade over the forecast, optimize, simulate and
landscape operations.

Every response is a pure function of the request body; nothing is
persisted. Malformed bodies get 400 with field-level messages,
semantically invalid intervals get 422, oversized simulation requests
get 413. CORS origin is configurable via SLAFC_CORS_ORIGIN.
"""

from __future__ import annotations

import os
from typing import Optional

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .domain import SlaForecastError, ValidationError
from .forecast import combination_landscape, forecast
from .marketsim import SimulationConfig, run_request_experiments
from .optimizer import optimize
from .regression import REFERENCE_PROBABILITY_LINE, REFERENCE_RANGE_LINE
from .requestfile import parse_request_document

EXPERIMENTS_CAP = 10_000_000
# Global budget so simulation requests cannot starve forecast requests.
SIMULATION_WORKERS = 2

app = FastAPI(title="slaforecast", version="0.1.0")

app.add_middleware(
    CORSMiddleware,
    allow_origins=[os.environ.get("SLAFC_CORS_ORIGIN", "*")],
    allow_methods=["*"],
    allow_headers=["*"],
)


class ServiceBody(BaseModel):
    name: str
    length: Optional[float] = None
    min: Optional[float] = None
    max: Optional[float] = None
    priority: int = 1


class Envelope(BaseModel):
    providers: int
    services: list[ServiceBody]
    threshold: float = Field(default=0.99, gt=0, lt=1)
    curve: bool = True
    landscape: bool = False
    step: float = Field(default=1.0, gt=0)
    experiments: int = Field(default=100_000, ge=1)
    seed: int = Field(default=0, ge=0)
    providers_cap: int = Field(default=1000, ge=1)


def _to_request(envelope: Envelope):
    doc = {
        "providers": envelope.providers,
        "services": [
            {k: v for k, v in s.model_dump().items() if v is not None}
            for s in envelope.services
        ],
    }
    return parse_request_document(doc)


@app.exception_handler(RequestValidationError)
async def malformed_body(request: Request, exc: RequestValidationError):
    return JSONResponse(
        status_code=400,
        content={"errors": [
            {"field": ".".join(str(p) for p in e["loc"]), "message": e["msg"]}
            for e in exc.errors()
        ]},
    )


@app.exception_handler(ValidationError)
async def invalid_semantics(request: Request, exc: ValidationError):
    return JSONResponse(status_code=422, content={"error": str(exc)})


@app.exception_handler(SlaForecastError)
async def domain_failure(request: Request, exc: SlaForecastError):
    return JSONResponse(status_code=422, content={"error": str(exc)})


@app.post("/v1/forecast")
def post_forecast(envelope: Envelope):
    request = _to_request(envelope)
    report = forecast(request, threshold=envelope.threshold)
    doc = report.to_dict()
    if not envelope.curve:
        doc.pop("curve")
    if envelope.landscape:
        doc["landscape"] = combination_landscape(request).to_rows()
    return doc


@app.post("/v1/optimize")
def post_optimize(envelope: Envelope):
    request = _to_request(envelope)
    result = optimize(request, threshold=envelope.threshold, step=envelope.step)
    return result.to_dict(include_trace=True)


@app.post("/v1/simulate")
def post_simulate(envelope: Envelope):
    if envelope.experiments > EXPERIMENTS_CAP:
        return JSONResponse(
            status_code=413,
            content={"error": f"experiments capped at {EXPERIMENTS_CAP}"},
        )
    request = _to_request(envelope)
    config = SimulationConfig(
        experiments=envelope.experiments,
        max_providers_per_experiment=envelope.providers_cap,
        seed=envelope.seed,
    )
    outcome = run_request_experiments(request, config, workers=SIMULATION_WORKERS)
    return outcome.to_dict()


@app.get("/v1/trendlines")
def get_trendlines():
    return {
        "probability": REFERENCE_PROBABILITY_LINE.to_dict(),
        "negotiation_range": REFERENCE_RANGE_LINE.to_dict(),
    }
