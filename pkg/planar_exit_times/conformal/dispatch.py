"""
Series route for a (domain, point) pair: picks the conformal map whose
image of the origin is the requested point, possibly after scaling.
"""

import math
from typing import Optional

from ..schemas.models import (
    Disc, DomainSpec, ExitTimeEstimate, HalfDisc, Lens, NGram, Point2, RegularPolygon, Wedge,
)
from .maps import (
    DEFAULT_ORDER, disc_coefficients, halfdisc_coefficients, lens_coefficients,
    polygon_coefficients, wedge_exit_time,
)
from .ngram import ngram_exit_time
from .series import coefficient_exit_time

POINT_TOL = 1e-12


def _scaled(estimate: ExitTimeEstimate, factor: float) -> ExitTimeEstimate:
    error = None if estimate.error is None else estimate.error * factor
    return estimate.model_copy(update={"value": estimate.value * factor, "error": error})


def _at(pt: Point2, x: float, y: float, scale: float = 1.0) -> bool:
    return math.hypot(pt.x - x, pt.y - y) <= POINT_TOL * max(1.0, scale)


def series_exit_time(domain: DomainSpec, pt: Point2, tol: float = 1e-10,
                     order: int = DEFAULT_ORDER) -> Optional[ExitTimeEstimate]:
    """
    Coefficient-sum estimate at pt, or None when no implemented map sends 0 to pt.

    Supported: every disc point, wedge points on the axis, the half-disc point
    i(√2 - 1)r0, and the centres of the lens, regular polygons and n-grams.
    """
    if isinstance(domain, Disc):
        return coefficient_exit_time(disc_coefficients(domain.r0, pt.z, order), tol)
    if isinstance(domain, Wedge):
        if pt.x > 0 and abs(pt.y) <= POINT_TOL * pt.x:
            return _scaled(wedge_exit_time(domain.p, tol, order), pt.x ** 2)
        return None
    if isinstance(domain, HalfDisc):
        if _at(pt, 0.0, (math.sqrt(2.0) - 1.0) * domain.r0, domain.r0):
            return _scaled(coefficient_exit_time(halfdisc_coefficients(order), tol), domain.r0 ** 2)
        return None
    if not _at(pt, 0.0, 0.0):
        return None
    if isinstance(domain, Lens):
        return coefficient_exit_time(lens_coefficients(order), tol)
    if isinstance(domain, RegularPolygon):
        return coefficient_exit_time(polygon_coefficients(domain.m, order), tol)
    if isinstance(domain, NGram):
        return ngram_exit_time(domain.n, domain.mu1, domain.mu2, tol, order)
    return None
