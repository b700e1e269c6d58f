"""Value models and the JSON report schema."""

import json
from pathlib import Path

from .models import (
    Point2, PolarPoint, DomainSpec, Disc, HalfDisc, Wedge, RegularPolygon, NGram, Lens,
    Ellipse, Rectangle, Strip, CircularCutout, EquilateralTriangle, IsoscelesRightTriangle,
    McMethod, EstimateMethod, EstimateStatus, SquareForm, OutputFormat, Subcommand, RunMethod,
    McConfig, McResult, ExitTimeEstimate, Discrepancy, MethodReport, NGramRadii, FieldQuery,
    RunRequest,
)

REPORT_SCHEMA_PATH = Path(__file__).with_name('report.json')


def load_report_schema() -> dict:
    """Draft-07 schema of the JSON documents printed by the CLI."""
    with open(REPORT_SCHEMA_PATH, 'r') as f:
        return json.load(f)


__all__ = [
    'Point2', 'PolarPoint', 'DomainSpec', 'Disc', 'HalfDisc', 'Wedge', 'RegularPolygon', 'NGram',
    'Lens', 'Ellipse', 'Rectangle', 'Strip', 'CircularCutout', 'EquilateralTriangle',
    'IsoscelesRightTriangle', 'McMethod', 'EstimateMethod', 'EstimateStatus', 'SquareForm',
    'OutputFormat', 'Subcommand', 'RunMethod', 'McConfig', 'McResult', 'ExitTimeEstimate',
    'Discrepancy', 'MethodReport', 'NGramRadii', 'FieldQuery', 'RunRequest',
    'REPORT_SCHEMA_PATH', 'load_report_schema',
]
