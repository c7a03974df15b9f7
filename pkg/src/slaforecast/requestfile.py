"""SLA request documents.

Schema (JSON):

    {
      "providers": <positive int>,
      "services": [
        {"name": <str>, "length": <num>, "priority": <positive int>},
        {"name": <str>, "min": <num>, "max": <num>, "priority": <positive int>},
        ...
      ]
    }

Each service declares exactly one of "length" or the ("min", "max")
pair. Length-only services are placed centered on the market axis.
"priority" defaults to 1 (most important) when omitted.
"""

from __future__ import annotations

import json
from pathlib import Path

from .domain import Interval, ServiceRequirement, SlaRequest, ValidationError


def parse_service(entry: dict, index: int) -> ServiceRequirement:
    if not isinstance(entry, dict):
        raise ValidationError(f"services[{index}] must be an object")
    name = entry.get("name")
    if not isinstance(name, str) or not name:
        raise ValidationError(f"services[{index}]: missing or empty 'name'")
    has_length = "length" in entry
    has_bounds = "min" in entry or "max" in entry
    if has_length == has_bounds:
        raise ValidationError(
            f"service {name!r}: declare exactly one of 'length' or 'min'/'max'"
        )
    try:
        if has_length:
            interval = Interval.from_length(float(entry["length"]))
        else:
            if "min" not in entry or "max" not in entry:
                raise ValidationError(
                    f"service {name!r}: 'min' and 'max' must both be present"
                )
            interval = Interval(float(entry["min"]), float(entry["max"]))
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ValidationError):
            raise ValidationError(f"service {name!r}: {exc}") from None
        raise ValidationError(f"service {name!r}: non-numeric interval bounds") from None
    priority = entry.get("priority", 1)
    if not isinstance(priority, int) or isinstance(priority, bool) or priority < 1:
        raise ValidationError(
            f"service {name!r}: priority must be a positive integer, got {priority!r}"
        )
    return ServiceRequirement(name=name, interval=interval, priority=priority)


def parse_request_document(doc: dict) -> SlaRequest:
    if not isinstance(doc, dict):
        raise ValidationError("request document must be a JSON object")
    providers = doc.get("providers")
    if not isinstance(providers, int) or isinstance(providers, bool) or providers < 1:
        raise ValidationError(f"'providers' must be a positive integer, got {providers!r}")
    services = doc.get("services")
    if not isinstance(services, list) or not services:
        raise ValidationError("'services' must be a nonempty list")
    return SlaRequest(
        services=tuple(parse_service(e, i) for i, e in enumerate(services)),
        provider_count=providers,
    )


def load_request(path: str | Path) -> SlaRequest:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: invalid JSON: {exc}") from None
    return parse_request_document(doc)
