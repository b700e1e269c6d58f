"""
Membership, distance to the boundary and vertex lists for the supported domains.

Points are handled as complex numpy arrays internally. Every domain is
turned once into a region object (cached per DomainSpec) that answers the
vectorised queries; the public helpers wrap those for single points.
"""

import math
from abc import ABC, abstractmethod
from functools import lru_cache
from typing import List, Sequence, Tuple

import numpy as np

from ..errors import InvalidParameterError, PreconditionError
from ..schemas.models import (
    CircularCutout, Disc, DomainSpec, Ellipse, EquilateralTriangle, HalfDisc,
    IsoscelesRightTriangle, Lens, NGram, Point2, Rectangle, RegularPolygon, Strip, Wedge,
)

SQRT2 = math.sqrt(2.0)
ELLIPSE_BISECTIONS = 120


def _as_complex(z) -> np.ndarray:
    return np.atleast_1d(np.asarray(z, dtype=complex))


class Region(ABC):
    """Vectorised geometry of one domain."""

    @abstractmethod
    def contains(self, z: np.ndarray) -> np.ndarray:
        """Strict interior test."""

    @abstractmethod
    def distance(self, z: np.ndarray) -> np.ndarray:
        """Distance to the boundary for interior points."""

    @abstractmethod
    def nearest(self, z: np.ndarray) -> np.ndarray:
        """Nearest boundary point for interior points."""

    @abstractmethod
    def in_closure(self, z: np.ndarray, tol: float) -> np.ndarray:
        """Interior or within tol of the boundary."""


class Circle:
    """Constraint |z - c| < R (inside) or |z - c| > R (outside)."""

    def __init__(self, center: complex, radius: float, inside: bool = True):
        self.center = center
        self.radius = radius
        self.inside = inside

    def signed(self, z: np.ndarray) -> np.ndarray:
        gap = np.abs(z - self.center) - self.radius
        return gap if self.inside else -gap

    def foot(self, z: np.ndarray) -> np.ndarray:
        offset = z - self.center
        size = np.abs(offset)
        direction = np.where(size > 0, offset / np.where(size > 0, size, 1.0), 1.0)
        return self.center + self.radius * direction


class HalfPlane:
    """Constraint Re((z - p) conj(n)) < 0 with unit outward normal n."""

    def __init__(self, point: complex, normal: complex):
        self.point = point
        self.normal = normal / abs(normal)

    def signed(self, z: np.ndarray) -> np.ndarray:
        return np.real((z - self.point) * np.conj(self.normal))

    def foot(self, z: np.ndarray) -> np.ndarray:
        return z - self.signed(z) * self.normal


class ConstraintRegion(Region):
    """Intersection of circle and half-plane constraints."""

    def __init__(self, constraints: Sequence):
        self.constraints = list(constraints)

    def _signed(self, z: np.ndarray) -> np.ndarray:
        return np.stack([c.signed(z) for c in self.constraints])

    def contains(self, z):
        return np.all(self._signed(z) < 0, axis=0)

    def distance(self, z):
        return np.min(np.abs(self._signed(z)), axis=0)

    def nearest(self, z):
        which = np.argmin(np.abs(self._signed(z)), axis=0)
        feet = np.stack([c.foot(z) for c in self.constraints])
        return feet[which, np.arange(z.size)]

    def in_closure(self, z, tol):
        return np.all(self._signed(z) <= tol, axis=0)


class WedgeRegion(Region):
    """|arg z| < β with the two boundary lines as distance components."""

    def __init__(self, half_angle: float):
        self.half_angle = half_angle
        up = np.exp(1j * (half_angle + math.pi / 2))
        self.sides = ConstraintRegion([HalfPlane(0j, up), HalfPlane(0j, np.conj(up))])

    def contains(self, z):
        return (z != 0) & (np.abs(np.angle(z)) < self.half_angle)

    def distance(self, z):
        return self.sides.distance(z)

    def nearest(self, z):
        return self.sides.nearest(z)

    def in_closure(self, z, tol):
        return self.contains(z) | (self.sides.distance(z) <= tol) & (np.real(z) >= -tol)


def point_in_polygon(vertices: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Even-odd ray test of each point against a closed vertex list."""
    a = vertices[None, :]
    b = np.roll(vertices, -1)[None, :]
    zz = _as_complex(z)[:, None]
    straddles = (a.imag > zz.imag) != (b.imag > zz.imag)
    dy = np.where(straddles, b.imag - a.imag, 1.0)
    x_cross = (b.real - a.real) * (zz.imag - a.imag) / dy + a.real
    crossings = straddles & (zz.real < x_cross)
    return (np.count_nonzero(crossings, axis=1) % 2) == 1


def _segment_feet(vertices: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Closest point of every edge to every point, shape (points, edges)."""
    a = vertices[None, :]
    edge = (np.roll(vertices, -1) - vertices)[None, :]
    zz = z[:, None]
    t = np.real((zz - a) * np.conj(edge)) / np.abs(edge) ** 2
    return a + np.clip(t, 0.0, 1.0) * edge


class PolygonRegion(Region):
    """Simple polygon given by counterclockwise vertices."""

    def __init__(self, vertices: np.ndarray):
        self.vertices = np.asarray(vertices, dtype=complex)

    def contains(self, z):
        return point_in_polygon(self.vertices, z)

    def distance(self, z):
        return np.min(np.abs(z[:, None] - _segment_feet(self.vertices, z)), axis=1)

    def nearest(self, z):
        feet = _segment_feet(self.vertices, z)
        which = np.argmin(np.abs(z[:, None] - feet), axis=1)
        return feet[np.arange(z.size), which]

    def in_closure(self, z, tol):
        return self.contains(z) | (self.distance(z) <= tol)


class EllipseRegion(Region):
    """Ellipse x²/a² + y²/b² < 1 with exact distance by bisection on the normal-line parameter."""

    def __init__(self, a: float, b: float):
        self.a = a
        self.b = b

    def contains(self, z):
        return (z.real / self.a) ** 2 + (z.imag / self.b) ** 2 < 1.0

    def in_closure(self, z, tol):
        return (z.real / self.a) ** 2 + (z.imag / self.b) ** 2 <= 1.0 + tol

    def _closest(self, z: np.ndarray) -> np.ndarray:
        swap = self.a < self.b
        e0, e1 = (self.b, self.a) if swap else (self.a, self.b)
        u0 = np.abs(z.imag if swap else z.real)
        u1 = np.abs(z.real if swap else z.imag)
        x0 = np.empty_like(u0)
        x1 = np.empty_like(u1)

        on_major = u1 == 0
        general = ~on_major & (u0 > 0)
        on_minor = ~on_major & (u0 == 0)

        x0[on_minor] = 0.0
        x1[on_minor] = e1

        numer = e0 * u0[on_major]
        denom = e0 * e0 - e1 * e1
        inner = numer < denom
        ratio = np.where(inner, numer / np.where(denom > 0, denom, 1.0), 1.0)
        x0[on_major] = np.where(inner, e0 * ratio, e0)
        x1[on_major] = np.where(inner, e1 * np.sqrt(np.clip(1.0 - ratio ** 2, 0.0, None)), 0.0)

        if np.any(general):
            y0, y1 = u0[general], u1[general]
            z0, z1 = y0 / e0, y1 / e1
            r0 = (e0 / e1) ** 2
            n0 = r0 * z0
            level = z0 ** 2 + z1 ** 2 - 1.0
            lo = z1 - 1.0
            hi = np.where(level < 0, 0.0, np.hypot(n0, z1) - 1.0)
            for _ in range(ELLIPSE_BISECTIONS):
                mid = 0.5 * (lo + hi)
                f = (n0 / (mid + r0)) ** 2 + (z1 / (mid + 1.0)) ** 2 - 1.0
                lo = np.where(f > 0, mid, lo)
                hi = np.where(f > 0, hi, mid)
            s = 0.5 * (lo + hi)
            x0[general] = r0 * y0 / (s + r0)
            x1[general] = y1 / (s + 1.0)

        sx = np.where((z.imag if swap else z.real) < 0, -1.0, 1.0)
        sy = np.where((z.real if swap else z.imag) < 0, -1.0, 1.0)
        first, second = sx * x0, sy * x1
        return second + 1j * first if swap else first + 1j * second

    def distance(self, z):
        return np.abs(z - self._closest(z))

    def nearest(self, z):
        return self._closest(z)


def _regular_polygon_vertices(m: int) -> np.ndarray:
    k = np.arange(m)
    return np.exp(1j * (math.pi / m + 2.0 * math.pi * k / m))


def _triangle_vertices(a: float) -> np.ndarray:
    low = -a / (2.0 * math.sqrt(3.0))
    return np.array([complex(-a / 2, low), complex(a / 2, low), complex(0.0, a / math.sqrt(3.0))])


def _right_triangle_vertices(a: float) -> np.ndarray:
    h = a / 2.0
    return np.array([complex(h, h), complex(-h, h), complex(h, -h)])


def _rectangle_vertices(a: float, b: float) -> np.ndarray:
    return np.array([complex(a, b), complex(-a, b), complex(-a, -b), complex(a, -b)])


def _ngram_vertices(domain: NGram) -> np.ndarray:
    from ..conformal.ngram import ngram_vertices
    return ngram_vertices(domain.n, domain.mu1, domain.mu2)


def _vertices(domain: DomainSpec) -> np.ndarray:
    if isinstance(domain, RegularPolygon):
        return _regular_polygon_vertices(domain.m)
    if isinstance(domain, EquilateralTriangle):
        return _triangle_vertices(domain.a)
    if isinstance(domain, IsoscelesRightTriangle):
        return _right_triangle_vertices(domain.a)
    if isinstance(domain, Rectangle):
        return _rectangle_vertices(domain.a, domain.b)
    if isinstance(domain, NGram):
        return _ngram_vertices(domain)
    raise InvalidParameterError(f"domain '{domain.kind}' is not polygonal")


@lru_cache(maxsize=64)
def region_of(domain: DomainSpec) -> Region:
    """Build (once per domain value) the region answering geometric queries."""
    if isinstance(domain, Disc):
        return ConstraintRegion([Circle(0j, domain.r0)])
    if isinstance(domain, HalfDisc):
        return ConstraintRegion([Circle(0j, domain.r0), HalfPlane(0j, -1j)])
    if isinstance(domain, Wedge):
        return WedgeRegion(math.pi * domain.p / 2.0)
    if isinstance(domain, Lens):
        return ConstraintRegion([Circle(1 + 0j, SQRT2), Circle(-1 + 0j, SQRT2)])
    if isinstance(domain, Ellipse):
        return EllipseRegion(domain.a, domain.b)
    if isinstance(domain, Strip):
        return ConstraintRegion([HalfPlane(complex(domain.a, 0), 1 + 0j), HalfPlane(complex(-domain.a, 0), -1 + 0j)])
    if isinstance(domain, CircularCutout):
        return ConstraintRegion([Circle(complex(domain.a, 0), domain.a), Circle(0j, domain.b, inside=False)])
    return PolygonRegion(_vertices(domain))


def contains_many(domain: DomainSpec, z) -> np.ndarray:
    """Vectorised strict-interior test on complex points."""
    return region_of(domain).contains(_as_complex(z))


def boundary_distance_many(domain: DomainSpec, z) -> np.ndarray:
    """Vectorised distance to the boundary; the points are assumed interior."""
    return region_of(domain).distance(_as_complex(z))


def contains(domain: DomainSpec, pt: Point2) -> bool:
    """
    Strict interior test.

    Args:
        domain: Domain specification
        pt: Query point

    Returns:
        True iff pt lies in the open domain
    """
    return bool(contains_many(domain, pt.z)[0])


def boundary_distance(domain: DomainSpec, pt: Point2) -> float:
    """
    Euclidean distance from an interior point to the boundary.

    Args:
        domain: Domain specification
        pt: Interior point

    Returns:
        Distance to the nearest boundary point
    """
    if not contains(domain, pt):
        raise PreconditionError(f"point ({pt.x}, {pt.y}) is not interior to {domain.kind}")
    return float(boundary_distance_many(domain, pt.z)[0])


def nearest_boundary_point(domain: DomainSpec, pt: Point2) -> Point2:
    """Boundary point realising boundary_distance."""
    if not contains(domain, pt):
        raise PreconditionError(f"point ({pt.x}, {pt.y}) is not interior to {domain.kind}")
    return Point2.from_complex(complex(region_of(domain).nearest(_as_complex(pt.z))[0]))


def in_closure(domain: DomainSpec, pt: Point2, tol: float = 1e-9) -> bool:
    """True for interior points and points within tol of the boundary."""
    return bool(region_of(domain).in_closure(_as_complex(pt.z), tol)[0])


def polygon_vertices(domain: DomainSpec) -> List[Point2]:
    """Counterclockwise vertex list of a polygonal domain."""
    return [Point2.from_complex(complex(v)) for v in _vertices(domain)]


def bounding_box(domain: DomainSpec, extent: float = 2.0) -> Tuple[float, float, float, float]:
    """(xmin, xmax, ymin, ymax) covering the domain; unbounded domains are clipped to extent."""
    if isinstance(domain, (Disc, HalfDisc)):
        r = domain.r0
        return -r, r, (0.0 if isinstance(domain, HalfDisc) else -r), r
    if isinstance(domain, Wedge):
        return 0.0, extent, -extent, extent
    if isinstance(domain, Strip):
        return -domain.a, domain.a, -extent, extent
    if isinstance(domain, Lens):
        return 1.0 - SQRT2, SQRT2 - 1.0, -1.0, 1.0
    if isinstance(domain, Ellipse):
        return -domain.a, domain.a, -domain.b, domain.b
    if isinstance(domain, CircularCutout):
        return 0.0, 2.0 * domain.a, -domain.a, domain.a
    v = _vertices(domain)
    return float(v.real.min()), float(v.real.max()), float(v.imag.min()), float(v.imag.max())
