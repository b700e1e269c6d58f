"""
Command-line entry point for the planar exit-time toolkit.
"""

import json
import logging
import math
import sys
import time
from dataclasses import replace
from typing import Any, Dict, List, Optional

import click
import numpy as np
import pandas as pd
from dotenv import load_dotenv
from jsonschema import validate
from pydantic import ValidationError

from .closedform import closed_exit_time, exit_time_field, has_field
from .config.settings import LoggingConfig, MonteCarloSettings, NumericsConfig
from .conformal import ngram_radii, series_exit_time
from .domains import bounding_box, contains, format_domain, in_closure, parse_domain
from .errors import (
    AllPathsTruncatedError, DomainParseError, ExitTimeError, InvalidParameterError, PreconditionError,
)
from .greenfn import green_exit_time
from .monitoring.metrics import MetricsCollector, RunLogger
from .montecarlo import simulate
from .schemas import (
    DomainSpec, EstimateMethod, EstimateStatus, ExitTimeEstimate, FieldQuery, McConfig, McMethod,
    MethodReport, NGram, OutputFormat, Point2, RunMethod, RunRequest, Subcommand, load_report_schema,
)
from .utils.verification import IdentityChecker


# Load environment variables
load_dotenv()

EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_PRECONDITION = 3
EXIT_VERIFY = 4
FLOAT_FORMAT = "%.12g"
METHOD_ORDER = (RunMethod.SERIES, RunMethod.CLOSED, RunMethod.GREEN, RunMethod.MC)
MC_OVERRIDES = ("paths", "step", "shell", "seed", "max_steps", "workers")


def setup_logging(log_level: str = "INFO", log_file: Optional[str] = None):
    """Setup logging configuration; diagnostics go to stderr."""
    handlers = [logging.StreamHandler(sys.stderr)]
    if log_file:
        handlers.append(logging.FileHandler(log_file))
    logging.basicConfig(
        level=getattr(logging, log_level.upper()),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=handlers,
        force=True,
    )


def _exit_code(error: Exception) -> int:
    if isinstance(error, (DomainParseError, ValidationError)):
        return EXIT_USAGE
    if isinstance(error, (PreconditionError, InvalidParameterError)):
        return EXIT_PRECONDITION
    return EXIT_FAILURE


def _parse_point(ctx, param, value: Optional[str]) -> Optional[Point2]:
    if value is None:
        return None
    try:
        x, y = (float(part) for part in value.split(","))
        return Point2(x=x, y=y)
    except (ValueError, ValidationError):
        raise click.BadParameter(f"expected 'x,y', got '{value}'")


def _num(value: Optional[float]) -> Optional[float]:
    """12 significant digits; non-finite values become null."""
    if value is None or not math.isfinite(value):
        return None
    return float(f"{value:.12g}")


def _emit_csv(frame: pd.DataFrame):
    click.echo(frame.to_csv(index=False, float_format=FLOAT_FORMAT), nl=False)


def _emit_json(document: Dict[str, Any]):
    validate(instance=document, schema=load_report_schema())
    click.echo(json.dumps(document, indent=2))


def _estimate_row(estimate: ExitTimeEstimate) -> Dict[str, Any]:
    return {
        "method": estimate.method.value,
        "value": _num(estimate.value),
        "error": _num(estimate.error),
        "count": estimate.count,
        "status": estimate.status.value,
        "note": estimate.note,
    }


def _mc_estimate(domain: DomainSpec, pt: Point2, cfg: McConfig, sigma: float,
                 metrics: MetricsCollector, run_logger: RunLogger) -> ExitTimeEstimate:
    started = time.perf_counter()
    try:
        result = simulate(domain, pt, cfg, metrics)
    except AllPathsTruncatedError as e:
        return ExitTimeEstimate(
            value=e.truncated_mean, method=EstimateMethod.MC, count=cfg.paths,
            status=EstimateStatus.DIVERGENCE_SUSPECTED, note=str(e),
        )
    run_logger.log_simulation(format_domain(domain), result, time.perf_counter() - started)
    status = EstimateStatus.TRUNCATED if result.truncated_paths else EstimateStatus.OK
    return ExitTimeEstimate(
        value=result.mean, method=EstimateMethod.MC, error=result.std_error, count=result.paths_used,
        status=status,
        note=f"{result.method.value}, {sigma:g}-sigma half-width {sigma * result.std_error:.3g}",
    )


def collect_estimates(request: RunRequest, sigma: float, metrics: MetricsCollector,
                      run_logger: RunLogger) -> MethodReport:
    """
    Run every requested method on the request's domain and point.

    Methods that do not cover the point are skipped under `all` and
    rejected when requested alone.
    """
    numerics = NumericsConfig.from_env()
    domain = parse_domain(request.domain)
    pt = request.point
    if not contains(domain, pt):
        raise PreconditionError(f"point ({pt.x}, {pt.y}) is not interior to {format_domain(domain)}")

    methods = METHOD_ORDER if request.method == RunMethod.ALL else (request.method,)
    estimates: List[ExitTimeEstimate] = []
    for method in methods:
        if method == RunMethod.SERIES:
            estimate = series_exit_time(domain, pt, request.tol, numerics.truncation)
        elif method == RunMethod.CLOSED:
            estimate = closed_exit_time(domain, pt, request.terms, numerics.series_tol, numerics.max_terms)
        elif method == RunMethod.GREEN:
            estimate = green_exit_time(domain, pt, numerics.quad_tol)
        else:
            estimate = _mc_estimate(domain, pt, request.mc, sigma, metrics, run_logger)

        if estimate is None:
            if request.method != RunMethod.ALL:
                raise InvalidParameterError(
                    f"method {method.value} does not cover {format_domain(domain)} at ({pt.x}, {pt.y})"
                )
            logging.info(f"Skipping {method.value}: not available for {domain.kind} at this point")
            continue
        run_logger.log_estimate(request.domain, estimate)
        labels = {"domain": domain.kind, "method": estimate.method.value}
        metrics.set_gauge("estimate.value", estimate.value, labels)
        if estimate.count is not None:
            metrics.set_gauge("estimate.count", float(estimate.count), labels)
        estimates.append(estimate)

    return MethodReport.from_estimates(format_domain(domain), pt, estimates)


def _mc_config(kwargs: Dict[str, Any]) -> McConfig:
    """Environment settings with the command-line overrides applied."""
    overrides = {name: kwargs[name] for name in MC_OVERRIDES if kwargs[name] is not None}
    settings = replace(MonteCarloSettings.from_env(), **overrides)
    try:
        settings.validate()
    except ValueError as e:
        raise click.UsageError(f"invalid Monte Carlo settings: {e}")
    return settings.to_mc_config(McMethod(kwargs['mc_method']))


def _point_request(subcommand: Subcommand, kwargs: Dict[str, Any]) -> RunRequest:
    numerics = NumericsConfig.from_env()
    return RunRequest(
        subcommand=subcommand,
        domain=kwargs['domain'],
        point=kwargs['point'],
        method=RunMethod(kwargs['method']),
        output=OutputFormat(kwargs['output']),
        mc=_mc_config(kwargs),
        tol=kwargs['tol'],
        terms=kwargs['terms'] or numerics.field_terms,
    )


def point_options(command):
    """Options shared by exit-time and compare."""
    options = [
        click.option('--domain', required=True, help='Domain, e.g. disc:r0=1 or ngram:n=5,mu1=0.3,mu2=0.1'),
        click.option('--point', required=True, callback=_parse_point, help='Start point as x,y'),
        click.option('--method', type=click.Choice([m.value for m in RunMethod]), default='all',
                     help='Estimation method'),
        click.option('--output', type=click.Choice([f.value for f in OutputFormat]), default='csv',
                     help='Output format'),
        click.option('--paths', type=int, default=None, help='Monte Carlo paths'),
        click.option('--seed', type=int, default=None, help='Monte Carlo seed (default EXIT_TIMES_SEED)'),
        click.option('--mc-method', type=click.Choice([m.value for m in McMethod]),
                     default=McMethod.WALK_ON_SPHERES.value, help='Monte Carlo estimator'),
        click.option('--step', type=float, default=None, help='Euler time step'),
        click.option('--shell', type=float, default=None, help='Walk-on-spheres absorption distance'),
        click.option('--max-steps', type=int, default=None, help='Step cap per path'),
        click.option('--workers', type=int, default=None, help='Monte Carlo worker threads'),
        click.option('--sigma', type=float, default=None, help='Confidence width in standard errors'),
        click.option('--tol', type=float, default=1e-10, help='Series tolerance'),
        click.option('--terms', type=int, default=None, help='Terms of series-form closed solutions'),
    ]
    for option in reversed(options):
        command = option(command)
    return command


@click.group()
@click.option('--log-level', default=None, help='Set the logging level')
@click.option('--log-file', default=None, help='Also write logs to this file')
@click.pass_context
def cli(ctx, log_level, log_file):
    """Expected exit times of planar Brownian motion."""
    logging_config = LoggingConfig.from_env()
    logging_config.log_level = log_level or logging_config.log_level
    logging_config.log_file = log_file or logging_config.log_file
    try:
        logging_config.validate()
    except ValueError as e:
        raise click.BadParameter(str(e), param_hint='--log-level')
    try:
        NumericsConfig.from_env().validate()
        MonteCarloSettings.from_env().validate()
    except ValueError as e:
        raise click.UsageError(f"invalid environment configuration: {e}")
    setup_logging(logging_config.log_level, logging_config.log_file)
    ctx.ensure_object(dict)
    ctx.obj['log_level'] = logging_config.log_level
    ctx.obj['metrics'] = MetricsCollector()
    ctx.obj['run_logger'] = RunLogger(structured=logging_config.structured)


@cli.command(name='exit-time')
@point_options
@click.pass_context
def exit_time(ctx, **kwargs):
    """Estimate the expected exit time by every applicable method."""
    try:
        request = _point_request(Subcommand.EXIT_TIME, kwargs)
        sigma = kwargs['sigma'] or MonteCarloSettings.from_env().confidence_sigma
        report = collect_estimates(request, sigma, ctx.obj['metrics'], ctx.obj['run_logger'])
        rows = [_estimate_row(e) for e in report.estimates]

        if request.output == OutputFormat.JSON:
            _emit_json({
                "schema": 1,
                "command": "exit-time",
                "domain": report.domain,
                "point": {"x": report.point.x, "y": report.point.y},
                "rows": rows,
            })
        else:
            _emit_csv(pd.DataFrame(rows, columns=["method", "value", "error", "count", "status", "note"]))
        ctx.obj['metrics'].export_metrics()

    except (ExitTimeError, ValidationError) as e:
        logging.error(f"exit-time failed: {e}")
        sys.exit(_exit_code(e))


@cli.command()
@point_options
@click.pass_context
def compare(ctx, **kwargs):
    """Print pairwise discrepancies between the methods."""
    try:
        request = _point_request(Subcommand.COMPARE, kwargs)
        sigma = kwargs['sigma'] or MonteCarloSettings.from_env().confidence_sigma
        report = collect_estimates(request, sigma, ctx.obj['metrics'], ctx.obj['run_logger'])
        discrepancies = [
            {
                "first": d.first.value,
                "second": d.second.value,
                "difference": _num(d.difference),
                "sigmas": _num(d.sigmas),
                "within": None if d.sigmas is None else bool(d.sigmas <= sigma),
            }
            for d in report.discrepancies
        ]

        if request.output == OutputFormat.JSON:
            _emit_json({
                "schema": 1,
                "command": "compare",
                "domain": report.domain,
                "point": {"x": report.point.x, "y": report.point.y},
                "rows": [_estimate_row(e) for e in report.estimates],
                "discrepancies": [{k: v for k, v in d.items() if k != "within"} for d in discrepancies],
            })
        else:
            _emit_csv(pd.DataFrame(discrepancies, columns=["first", "second", "difference", "sigmas", "within"]))
        ctx.obj['metrics'].export_metrics()

    except (ExitTimeError, ValidationError) as e:
        logging.error(f"compare failed: {e}")
        sys.exit(_exit_code(e))


@cli.command()
@click.option('--domain', required=True, help='Domain with a closed-form field')
@click.option('--grid', type=click.IntRange(min=2), default=21, help='Grid points per axis')
@click.option('--extent', type=float, default=2.0, help='Window half-size for unbounded domains')
@click.option('--terms', type=int, default=None, help='Terms of series-form solutions')
def field(domain, grid, extent, terms):
    """Evaluate the closed-form exit time on a grid and print x,y,u as CSV."""
    try:
        spec = parse_domain(domain)
        if not has_field(spec):
            raise InvalidParameterError(f"no closed-form field for {format_domain(spec)}")
        terms = terms or NumericsConfig.from_env().field_terms
        xmin, xmax, ymin, ymax = bounding_box(spec, extent)
        scale = max(xmax - xmin, ymax - ymin)

        rows = []
        for y in np.linspace(ymin, ymax, grid):
            for x in np.linspace(xmin, xmax, grid):
                pt = Point2(x=float(x), y=float(y))
                u = math.nan
                if in_closure(spec, pt, 1e-12 * scale):
                    try:
                        u = exit_time_field(FieldQuery(domain=spec, point=pt, series_terms=terms))
                    except PreconditionError:
                        pass
                rows.append({"x": pt.x, "y": pt.y, "u": u})

        logging.info(f"Evaluated {grid}x{grid} field of {format_domain(spec)}")
        _emit_csv(pd.DataFrame(rows, columns=["x", "y", "u"]))

    except (ExitTimeError, ValidationError) as e:
        logging.error(f"field failed: {e}")
        sys.exit(_exit_code(e))


@cli.command()
@click.option('--domain', required=True, help='n-gram, e.g. ngram:n=5,mu1=0.3,mu2=0.1')
@click.option('--output', type=click.Choice([f.value for f in OutputFormat]), default='csv')
def radii(domain, output):
    """Print the circumradius and inradius of an n-gram."""
    try:
        spec = parse_domain(domain)
        if not isinstance(spec, NGram):
            raise InvalidParameterError(f"radii needs an ngram domain, got {spec.kind}")
        result = ngram_radii(spec.n, spec.mu1, spec.mu2)

        if output == OutputFormat.JSON.value:
            _emit_json({
                "schema": 1,
                "command": "radii",
                "domain": format_domain(spec),
                "radii": {"circumradius": _num(result.circumradius), "inradius": _num(result.inradius)},
            })
        else:
            _emit_csv(pd.DataFrame([result.model_dump()], columns=["circumradius", "inradius"]))

    except (ExitTimeError, ValidationError) as e:
        logging.error(f"radii failed: {e}")
        sys.exit(_exit_code(e))


@cli.command()
@click.option('--output', type=click.Choice([f.value for f in OutputFormat]), default='csv')
@click.option('--check', 'names', multiple=True, help='Run only the named check (repeatable)')
@click.pass_context
def verify(ctx, output, names):
    """Run the identity suite; exit status 4 when a check fails."""
    checker = IdentityChecker(ctx.obj['metrics'], ctx.obj['run_logger'])
    unknown = [name for name in names if name not in checker.checks]
    if unknown:
        raise click.BadParameter(f"unknown check(s): {', '.join(unknown)}", param_hint='--check')

    results = checker.run_all(names or None)
    rows = [
        {
            "name": r.name,
            "passed": r.passed,
            "residual": _num(r.residual),
            "tolerance": r.tolerance,
            "known_issue": r.known_issue,
            "note": r.note,
        }
        for r in results
    ]
    if output == OutputFormat.JSON.value:
        _emit_json({"schema": 1, "command": "verify", "checks": rows})
    else:
        _emit_csv(pd.DataFrame(rows, columns=["name", "passed", "residual", "tolerance", "known_issue", "note"]))
    ctx.obj['metrics'].export_metrics()

    if not IdentityChecker.all_passed(results):
        failed = [r.name for r in results if not r.passed]
        logging.error(f"Verification failed: {', '.join(failed)}")
        sys.exit(EXIT_VERIFY)


def main():
    """Main entry point."""
    cli()


if __name__ == '__main__':
    main()
