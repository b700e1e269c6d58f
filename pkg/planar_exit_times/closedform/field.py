"""
Dispatch from a domain to its closed-form exit-time field u(x, y).
"""

import cmath
import logging
import math
from typing import Optional

from ..conformal.maps import mgon_exit_time
from ..domains.geometry import contains, in_closure
from ..errors import InvalidParameterError, PreconditionError
from ..greenfn.green import halfdisc_exit_time_closed
from ..schemas.models import (
    CircularCutout, Disc, DomainSpec, Ellipse, EquilateralTriangle, EstimateMethod,
    EstimateStatus, ExitTimeEstimate, FieldQuery, HalfDisc, IsoscelesRightTriangle, Lens,
    Point2, PolarPoint, Rectangle, RegularPolygon, Strip, Wedge,
)
from .poisson import (
    circular_cutout_u, disc_u, ellipse_u, equilateral_triangle_u, isosceles_right_u,
    rectangle_u, strip_u, wedge_u,
)

logger = logging.getLogger(__name__)

FIELD_TYPES = (
    Disc, HalfDisc, EquilateralTriangle, IsoscelesRightTriangle, CircularCutout,
    Ellipse, Rectangle, Strip,
)
SERIES_TYPES = (IsoscelesRightTriangle, Rectangle)
HALF_SIDE = 1.0 / math.sqrt(2.0)
LENS_CENTRE_VALUE = 2.0 / math.pi - 0.5


def has_field(domain: DomainSpec) -> bool:
    """True when exit_time_field can evaluate u anywhere in the domain."""
    if isinstance(domain, FIELD_TYPES):
        return True
    if isinstance(domain, Wedge):
        return domain.p < 0.5
    if isinstance(domain, RegularPolygon):
        return domain.m in (3, 4)
    return False


def _halfdisc_u(pt: Point2, r0: float) -> float:
    domain = HalfDisc(r0=r0)
    if contains(domain, pt):
        return halfdisc_exit_time_closed(PolarPoint.from_point(pt), r0)
    if in_closure(domain, pt, 1e-12 * r0):
        return 0.0
    raise PreconditionError(f"point ({pt.x}, {pt.y}) is outside the half disc of radius {r0}")


def exit_time_field(query: FieldQuery) -> float:
    """
    Evaluate the closed-form exit time u at query.point.

    Boundary points are accepted and give 0 up to series truncation.

    Raises:
        InvalidParameterError: The domain has no closed-form field
        PreconditionError: The point lies outside the closure of the domain
    """
    domain, pt, terms = query.domain, query.point, query.series_terms
    polar = PolarPoint.from_point(pt)

    if isinstance(domain, Disc):
        return disc_u(polar.r, domain.r0)
    if isinstance(domain, HalfDisc):
        return _halfdisc_u(pt, domain.r0)
    if isinstance(domain, Wedge):
        return wedge_u(polar.r, polar.theta, math.pi * domain.p / 2.0)
    if isinstance(domain, EquilateralTriangle):
        return equilateral_triangle_u(pt.x, pt.y, domain.a)
    if isinstance(domain, IsoscelesRightTriangle):
        return isosceles_right_u(pt.x, pt.y, domain.a, terms)
    if isinstance(domain, CircularCutout):
        return circular_cutout_u(polar.r, polar.theta, domain.a, domain.b)
    if isinstance(domain, Ellipse):
        return ellipse_u(pt.x, pt.y, domain.a, domain.b)
    if isinstance(domain, Rectangle):
        return rectangle_u(pt.x, pt.y, domain.a, domain.b, terms)
    if isinstance(domain, Strip):
        return strip_u(pt.x, domain.a)
    if isinstance(domain, RegularPolygon) and domain.m == 3:
        # quarter turn clockwise puts a vertex on the positive imaginary axis
        z = pt.z * cmath.exp(-0.5j * math.pi)
        return equilateral_triangle_u(z.real, z.imag, math.sqrt(3.0))
    if isinstance(domain, RegularPolygon) and domain.m == 4:
        return rectangle_u(pt.x, pt.y, HALF_SIDE, HALF_SIDE, terms)
    raise InvalidParameterError(f"no closed-form exit-time field for domain kind '{domain.kind}'")


def closed_exit_time(domain: DomainSpec, pt: Point2, terms: int = 60, tol: float = 1e-12,
                     max_terms: int = 10 ** 6) -> Optional[ExitTimeEstimate]:
    """
    Closed-form estimate at pt, or None when no closed form covers the point.

    Fields are used where available; otherwise the centres of regular polygons
    (the ₄F₃ formula, summed to tol within max_terms) and of the lens are covered.
    """
    if isinstance(domain, Wedge) and domain.p >= 0.5:
        return ExitTimeEstimate(
            value=math.inf, method=EstimateMethod.CLOSED,
            status=EstimateStatus.DIVERGENCE_SUSPECTED, note="infinite expectation for p >= 1/2",
        )
    if has_field(domain):
        value = exit_time_field(FieldQuery(domain=domain, point=pt, series_terms=terms))
        series = isinstance(domain, SERIES_TYPES) or isinstance(domain, RegularPolygon) and domain.m == 4
        note = f"series truncated at {terms} terms" if series else None
        count = terms if series else None
        return ExitTimeEstimate(value=value, method=EstimateMethod.CLOSED, count=count, note=note)

    at_centre = math.hypot(pt.x, pt.y) <= 1e-12
    if isinstance(domain, RegularPolygon) and at_centre:
        return mgon_exit_time(domain.m, tol, max_terms)
    if isinstance(domain, Lens) and at_centre:
        return ExitTimeEstimate(value=LENS_CENTRE_VALUE, method=EstimateMethod.CLOSED, note="2/pi - 1/2")
    logger.debug(f"No closed form for {domain.kind} at ({pt.x}, {pt.y})")
    return None
