"""Command-line front door: simulation sweeps, regression fits,
forecasts, optimizations and report rendering.

Exit codes: 0 success, 1 runtime/IO failure, 2 usage or validation
error. The seed defaults to the SLAFC_SEED environment variable (flag
wins), falling back to 0.
"""

from __future__ import annotations

import csv
import json
import os
import sys
from pathlib import Path

import click

from . import marketsim
from .domain import Interval, SlaForecastError, ValidationError
from .forecast import combination_landscape, forecast
from .marketsim import SimulationConfig
from .optimizer import optimize
from .regression import (
    REFERENCE_PROBABILITY_LINE,
    REFERENCE_RANGE_LINE,
    DataSeries,
    Transform,
    TrendLine,
    fit,
    predict,
)
from .requestfile import load_request

SIG = "{:.6g}".format


def _default_seed() -> int:
    env = os.environ.get("SLAFC_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise click.UsageError(f"SLAFC_SEED must be an integer, got {env!r}")
    return 0


def _parse_lengths(spec: str) -> list[float]:
    """Either a comma list ("10,20,30") or a start:end:step range."""
    if ":" in spec:
        parts = spec.split(":")
        if len(parts) != 3:
            raise click.UsageError(f"length range must be start:end:step, got {spec!r}")
        try:
            start, end, step = (float(p) for p in parts)
        except ValueError:
            raise click.UsageError(f"non-numeric length range {spec!r}")
        if step <= 0 or end < start:
            raise click.UsageError(f"bad length range {spec!r}")
        out, v = [], start
        while v <= end + 1e-9:
            out.append(round(v, 10))
            v += step
        return out
    try:
        return [float(p) for p in spec.split(",") if p]
    except ValueError:
        raise click.UsageError(f"non-numeric lengths {spec!r}")


def _load_line(path: str | None, fallback: TrendLine) -> TrendLine:
    if path is None:
        return fallback
    return TrendLine.from_dict(json.loads(Path(path).read_text()))


@click.group()
def main():
    """SLA match-probability forecasting toolkit."""


@main.command()
@click.option("--lengths", help="Consumer lengths: comma list or start:end:step.")
@click.option("--sla", "sla_path", type=click.Path(exists=True, dir_okay=False),
              help="SLA request JSON; runs the full first-match experiment.")
@click.option("--experiments", default=1_000_000, show_default=True, type=int)
@click.option("--seed", default=None, type=int, help="RNG seed [default: $SLAFC_SEED or 0].")
@click.option("--providers-cap", default=1000, show_default=True, type=int,
              help="Max providers searched per experiment.")
@click.option("--workers", default=1, show_default=True, type=int)
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False), help="CSV output path.")
@click.option("--json", "json_path", type=click.Path(dir_okay=False), help="JSON output path.")
def simulate(lengths, sla_path, experiments, seed, providers_cap, workers,
             csv_path, json_path):
    """Run the Monte Carlo market simulation.

    With --lengths, sweeps single-SLO consumer lengths and reports match
    probability and mean negotiation range per length. With --sla, runs
    the first-match experiment for the whole request and reports the
    first-match histogram.
    """
    if (lengths is None) == (sla_path is None):
        raise click.UsageError("give exactly one of --lengths or --sla")
    seed = _default_seed() if seed is None else seed
    config = SimulationConfig(
        experiments=experiments, max_providers_per_experiment=providers_cap, seed=seed
    )
    if lengths is not None:
        rows = marketsim.sweep_consumer_lengths(_parse_lengths(lengths), config, workers)
        if csv_path:
            Path(csv_path).write_text(marketsim.sweep_csv(rows))
        if json_path:
            Path(json_path).write_text(json.dumps(
                [r.__dict__ for r in rows], indent=2) + "\n")
        click.echo("length  match_probability  mean_negotiation_range")
        for r in rows:
            click.echo(f"{SIG(r.length):>6}  {SIG(r.match_probability):>17}  "
                       f"{SIG(r.mean_negotiation_range):>22}")
    else:
        request = load_request(sla_path)
        outcome = marketsim.run_request_experiments(request, config, workers)
        if csv_path:
            Path(csv_path).write_text(outcome.to_csv())
        if json_path:
            Path(json_path).write_text(outcome.to_json(indent=2) + "\n")
        click.echo(f"experiments             {outcome.experiments}")
        click.echo(f"match probability       {SIG(outcome.match_probability)}")
        click.echo(f"mean negotiation range  {SIG(outcome.mean_negotiation_range)}")
        click.echo(f"unmatched experiments   {outcome.unmatched_count}")


@main.command("fit")
@click.argument("input_csv", type=click.Path(exists=True, dir_okay=False))
@click.option("--log", "log_x", is_flag=True, help="Natural-log transform on x.")
@click.option("--out", "out_path", type=click.Path(dir_okay=False),
              help="Write the fitted trend line as JSON.")
def fit_cmd(input_csv, log_x, out_path):
    """Fit a trend line to a two-column (x, y) CSV."""
    points = []
    with open(input_csv, newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or row[0].lstrip().startswith("#"):
                continue
            if lineno == 1 and not _is_number(row[0]):
                continue  # header row
            if len(row) < 2 or not (_is_number(row[0]) and _is_number(row[1])):
                raise ValidationError(f"{input_csv}:{lineno}: expected two numeric columns")
            points.append((float(row[0]), float(row[1])))
    series = DataSeries(tuple(points),
                        Transform.NATURAL_LOG_X if log_x else Transform.IDENTITY)
    line = fit(series)
    if out_path:
        Path(out_path).write_text(line.to_json(indent=2) + "\n")
    d = line.diagnostics
    click.echo(f"slope      {SIG(line.slope)}")
    click.echo(f"intercept  {SIG(line.intercept)}")
    click.echo(f"r2         {SIG(d.r2)}")
    click.echo(f"sse        {SIG(d.sse)}")


def _is_number(s: str) -> bool:
    try:
        float(s)
        return True
    except ValueError:
        return False


@main.command("forecast")
@click.argument("request_json", type=click.Path(exists=True, dir_okay=False))
@click.option("--trendline", type=click.Path(exists=True, dir_okay=False),
              help="Probability trend line JSON [default: bundled reference].")
@click.option("--range-line", type=click.Path(exists=True, dir_okay=False),
              help="Negotiation-range trend line JSON [default: bundled reference].")
@click.option("--landscape", "with_landscape", is_flag=True,
              help="Include the combination landscape.")
@click.option("--curve", "curve_path", type=click.Path(dir_okay=False),
              help="Write the providers-vs-probability curve as CSV.")
@click.option("--out", "out_path", type=click.Path(dir_okay=False),
              help="Write the forecast report as JSON.")
def forecast_cmd(request_json, trendline, range_line, with_landscape,
                 curve_path, out_path):
    """Forecast match probabilities for an SLA request file."""
    request = load_request(request_json)
    prob_line = _load_line(trendline, REFERENCE_PROBABILITY_LINE)
    log_line = _load_line(range_line, REFERENCE_RANGE_LINE)
    report = forecast(request, prob_line, log_line)
    doc = report.to_dict()
    if with_landscape:
        doc["landscape"] = combination_landscape(request, prob_line).to_rows()
    if out_path:
        Path(out_path).write_text(json.dumps(doc, indent=2) + "\n")
    if curve_path:
        Path(curve_path).write_text(report.curve_csv())
    click.echo(f"sla probability   {SIG(report.sla_probability)}")
    click.echo(f"at least one (n={report.provider_count})  {SIG(report.at_least_one)}")
    mp = report.min_providers_99
    click.echo(f"providers for >{SIG(report.threshold)}  "
               f"{mp if mp is not None else 'unreachable'}")
    click.echo(f"negotiation total {SIG(report.negotiation_range_total)}")


@main.command("optimize")
@click.argument("request_json", type=click.Path(exists=True, dir_okay=False))
@click.option("--threshold", default=0.99, show_default=True, type=float)
@click.option("--step", default=1.0, show_default=True, type=float)
@click.option("--trendline", type=click.Path(exists=True, dir_okay=False),
              help="Probability trend line JSON [default: bundled reference].")
@click.option("--trace", "with_trace", is_flag=True, help="Include the step trace.")
@click.option("--out", "out_path", type=click.Path(dir_okay=False),
              help="Write the optimization result as JSON.")
def optimize_cmd(request_json, threshold, step, trendline, with_trace, out_path):
    """Widen intervals by priority until the match is practically sure."""
    request = load_request(request_json)
    prob_line = _load_line(trendline, REFERENCE_PROBABILITY_LINE)
    result = optimize(request, threshold=threshold, step=step, prob_line=prob_line)
    if out_path:
        Path(out_path).write_text(result.to_json(include_trace=with_trace, indent=2) + "\n")
    click.echo("service  original  adjusted")
    for s in request.services:
        click.echo(f"{s.name:<8} {SIG(s.length):>8}  {SIG(result.adjusted_lengths[s.name]):>8}")
    click.echo(f"final probability {SIG(result.final_probability)}  "
               f"feasible {result.feasible}  steps {result.steps}")


@main.command("report")
@click.argument("request_json", type=click.Path(exists=True, dir_okay=False))
@click.option("--out-dir", default="reports", show_default=True,
              type=click.Path(file_okay=False))
@click.option("--simulate", "with_sim", is_flag=True,
              help="Overlay an empirical curve from a seeded simulation run.")
@click.option("--experiments", default=100_000, show_default=True, type=int)
@click.option("--seed", default=None, type=int, help="RNG seed [default: $SLAFC_SEED or 0].")
def report_cmd(request_json, out_dir, with_sim, experiments, seed):
    """Render forecast figures and delimited data for a request."""
    from . import report as figures

    request = load_request(request_json)
    rep = forecast(request)
    landscape = combination_landscape(request)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    outcome = None
    if with_sim:
        seed = _default_seed() if seed is None else seed
        config = SimulationConfig(
            experiments=experiments,
            max_providers_per_experiment=max(request.provider_count, 100),
            seed=seed,
        )
        outcome = marketsim.run_request_experiments(request, config)
        (out / "simulation.csv").write_text(outcome.to_csv())

    (out / "forecast.json").write_text(rep.to_json(indent=2) + "\n")
    (out / "curve.csv").write_text(rep.curve_csv())
    landscape_csv = ["services,at_least_one"]
    landscape_csv += [f"{'+'.join(n)},{p!r}" for n, p in landscape.entries]
    (out / "landscape.csv").write_text("\n".join(landscape_csv) + "\n")

    written = [
        figures.render_at_least_one_curve(rep, out / "curve.png", outcome),
        figures.render_landscape(landscape, out / "landscape.png"),
        figures.render_negotiation_ranges(rep, out / "negotiation_ranges.png"),
    ]
    for p in ["forecast.json", "curve.csv", "landscape.csv"] + [w.name for w in written]:
        click.echo(f"wrote {out / p}")


@main.command("serve")
@click.option("--addr", default=None, help="listen address [default: $SLAFC_ADDR or 127.0.0.1:8080]")
def serve_cmd(addr):
    """Run the HTTP/JSON service."""
    import uvicorn

    from .api import app

    addr = addr or os.environ.get("SLAFC_ADDR", "127.0.0.1:8080")
    host, _, port = addr.rpartition(":")
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port))


def entrypoint(argv=None):
    try:
        main.main(args=argv, standalone_mode=False)
        return 0
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.UsageError as exc:
        click.echo(f"error: {exc.format_message()}", err=True)
        return 2
    except ValidationError as exc:
        click.echo(f"validation error: {exc}", err=True)
        return 2
    except click.ClickException as exc:
        exc.show()
        return exc.exit_code
    except SlaForecastError as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    except OSError as exc:
        click.echo(f"io error: {exc}", err=True)
        return 1


if __name__ == "__main__":
    sys.exit(entrypoint())
