"""
Data models for domains, points, estimates and run requests using Pydantic for validation.
"""

import math
from enum import Enum
from itertools import combinations
from typing import Annotated, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class FrozenModel(BaseModel):
    """Immutable, hashable base model that rejects unknown fields."""
    model_config = ConfigDict(frozen=True, extra="forbid")


class Point2(FrozenModel):
    """A planar point, equivalently the complex number x + iy."""
    x: float
    y: float

    @field_validator('x', 'y')
    @classmethod
    def check_finite(cls, v):
        """Reject infinities and NaN."""
        if not math.isfinite(v):
            raise ValueError("point coordinates must be finite")
        return v

    @property
    def z(self) -> complex:
        return complex(self.x, self.y)

    @classmethod
    def from_complex(cls, z: complex) -> "Point2":
        return cls(x=z.real, y=z.imag)


class PolarPoint(FrozenModel):
    """Point in polar coordinates z = r e^{iθ}."""
    r: float = Field(..., ge=0)
    theta: float

    def to_point(self) -> Point2:
        return Point2(x=self.r * math.cos(self.theta), y=self.r * math.sin(self.theta))

    @classmethod
    def from_point(cls, pt: Point2) -> "PolarPoint":
        return cls(r=math.hypot(pt.x, pt.y), theta=math.atan2(pt.y, pt.x))


class Disc(FrozenModel):
    """Disc of radius r0 centred at the origin."""
    kind: Literal["disc"] = "disc"
    r0: float = Field(1.0, gt=0)


class HalfDisc(FrozenModel):
    """Upper half of the disc of radius r0."""
    kind: Literal["halfdisc"] = "halfdisc"
    r0: float = Field(1.0, gt=0)


class Wedge(FrozenModel):
    """Wedge |arg z| < πp/2 with apex at the origin."""
    kind: Literal["wedge"] = "wedge"
    p: float = Field(..., gt=0, le=1)


class RegularPolygon(FrozenModel):
    """Regular m-gon inscribed in the unit circle, one edge crossing the positive real axis."""
    kind: Literal["polygon"] = "polygon"
    m: int = Field(..., ge=3)


class NGram(FrozenModel):
    """Symmetric 2n-gon image of the Schwarz–Christoffel map with exterior angles πμ₁, πμ₂."""
    kind: Literal["ngram"] = "ngram"
    n: int = Field(..., ge=2)
    mu1: float = Field(..., gt=0, lt=1)
    mu2: float = Field(..., gt=0, lt=1)

    @model_validator(mode='after')
    def check_angle_sum(self):
        """The exterior angles must add up to 2π."""
        if abs(self.mu1 + self.mu2 - 2.0 / self.n) > 1e-12:
            raise ValueError(f"mu1 + mu2 must equal 2/n = {2.0 / self.n}, got {self.mu1 + self.mu2}")
        return self


class Lens(FrozenModel):
    """Intersection of the discs |z - 1| < √2 and |z + 1| < √2."""
    kind: Literal["lens"] = "lens"


class Ellipse(FrozenModel):
    """Ellipse x²/a² + y²/b² < 1."""
    kind: Literal["ellipse"] = "ellipse"
    a: float = Field(..., gt=0)
    b: float = Field(..., gt=0)


class Rectangle(FrozenModel):
    """Rectangle |x| < a, |y| < b."""
    kind: Literal["rectangle"] = "rectangle"
    a: float = Field(..., gt=0)
    b: float = Field(..., gt=0)


class Strip(FrozenModel):
    """Infinite strip |x| < a."""
    kind: Literal["strip"] = "strip"
    a: float = Field(..., gt=0)


class CircularCutout(FrozenModel):
    """Disc |z - a| < a with the disc |z| ≤ b removed."""
    kind: Literal["cutout"] = "cutout"
    a: float = Field(..., gt=0)
    b: float = Field(..., gt=0)

    @model_validator(mode='after')
    def check_radii(self):
        """The cut-out radius may not exceed the disc radius."""
        if self.b > self.a:
            raise ValueError(f"cutout needs a >= b, got a={self.a}, b={self.b}")
        return self


class EquilateralTriangle(FrozenModel):
    """Equilateral triangle of side a, vertex up, centroid at the origin."""
    kind: Literal["triangle"] = "triangle"
    a: float = Field(..., gt=0)


class IsoscelesRightTriangle(FrozenModel):
    """Right triangle with legs of length a on x = a/2, y = a/2 and hypotenuse on y = -x."""
    kind: Literal["right-triangle"] = "right-triangle"
    a: float = Field(..., gt=0)


DomainSpec = Annotated[
    Union[
        Disc, HalfDisc, Wedge, RegularPolygon, NGram, Lens, Ellipse, Rectangle,
        Strip, CircularCutout, EquilateralTriangle, IsoscelesRightTriangle,
    ],
    Field(discriminator="kind"),
]


class McMethod(str, Enum):
    """Monte Carlo estimators."""
    EULER = "euler"
    WALK_ON_SPHERES = "walk_on_spheres"


class EstimateMethod(str, Enum):
    """Independent routes to the expected exit time."""
    SERIES = "series"
    CLOSED = "closed"
    GREEN = "green"
    MC = "mc"


class EstimateStatus(str, Enum):
    """Outcome of an estimate."""
    OK = "ok"
    DIVERGENCE_SUSPECTED = "divergence-suspected"
    TRUNCATED = "truncated"


class SquareForm(str, Enum):
    """Equivalent expressions for the exit time from the centre of the square."""
    HYPERGEOMETRIC = "hypergeometric"
    DOUBLE_SINE = "double_sine"
    SINGLE_SERIES = "single_series"


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"


class Subcommand(str, Enum):
    EXIT_TIME = "exit-time"
    FIELD = "field"
    RADII = "radii"
    VERIFY = "verify"
    COMPARE = "compare"


class RunMethod(str, Enum):
    SERIES = "series"
    CLOSED = "closed"
    GREEN = "green"
    MC = "mc"
    ALL = "all"


class McConfig(FrozenModel):
    """Monte Carlo configuration."""
    method: McMethod = McMethod.WALK_ON_SPHERES
    paths: int = Field(100000, ge=100)
    step: float = Field(1e-4, gt=0)
    shell: float = Field(1e-5, gt=0)
    seed: int = Field(20240601, ge=0, lt=2 ** 64)
    max_steps: int = Field(10 ** 7, ge=1)
    batch_size: int = Field(4096, ge=1)
    workers: int = Field(1, ge=1)


class McResult(FrozenModel):
    """Sample mean of simulated exit times with its standard error."""
    mean: float
    std_error: float = Field(..., ge=0)
    paths_used: int = Field(..., ge=0)
    truncated_paths: int = Field(0, ge=0)
    bias_bound: float = Field(0.0, ge=0)
    method: McMethod = McMethod.WALK_ON_SPHERES

    @model_validator(mode='after')
    def check_truncation(self):
        """Truncated paths are a subset of the paths used."""
        if self.truncated_paths > self.paths_used:
            raise ValueError("truncated_paths cannot exceed paths_used")
        return self


class ExitTimeEstimate(FrozenModel):
    """An expected exit time with the method that produced it and an error indicator."""
    value: float
    method: EstimateMethod
    error: Optional[float] = Field(None, ge=0)
    count: Optional[int] = Field(None, description="terms summed or paths simulated")
    status: EstimateStatus = EstimateStatus.OK
    note: Optional[str] = None

    @property
    def is_finite(self) -> bool:
        return self.status != EstimateStatus.DIVERGENCE_SUSPECTED and math.isfinite(self.value)


class Discrepancy(FrozenModel):
    """Difference between two estimates of the same quantity."""
    first: EstimateMethod
    second: EstimateMethod
    difference: float
    sigmas: Optional[float] = None


class MethodReport(FrozenModel):
    """Estimates of one exit time from every applicable method, with pairwise discrepancies."""
    domain: str
    point: Point2
    estimates: List[ExitTimeEstimate]
    discrepancies: List[Discrepancy] = []

    @classmethod
    def from_estimates(cls, domain: str, point: Point2, estimates: List[ExitTimeEstimate]) -> "MethodReport":
        discrepancies = []
        finite = [e for e in estimates if e.is_finite]
        for first, second in combinations(finite, 2):
            difference = first.value - second.value
            sigmas = None
            for candidate in (first, second):
                if candidate.method == EstimateMethod.MC and candidate.error:
                    sigmas = abs(difference) / candidate.error
            discrepancies.append(Discrepancy(
                first=first.method, second=second.method, difference=difference, sigmas=sigmas
            ))
        return cls(domain=domain, point=point, estimates=estimates, discrepancies=discrepancies)


class NGramRadii(FrozenModel):
    """Vertex radii of the n-gram: circumradius R and inner radius R_D."""
    circumradius: float = Field(..., gt=0)
    inradius: float = Field(..., gt=0)

    @model_validator(mode='after')
    def check_order(self):
        """R ≥ R_D up to rounding."""
        if self.inradius > self.circumradius * (1.0 + 1e-12):
            raise ValueError("circumradius must not be smaller than inradius")
        return self


class FieldQuery(FrozenModel):
    """Point evaluation of the exit-time field of a domain."""
    domain: DomainSpec
    point: Point2
    series_terms: int = Field(60, ge=1)


class RunRequest(FrozenModel):
    """A parsed CLI invocation."""
    subcommand: Subcommand
    domain: Optional[str] = None
    point: Optional[Point2] = None
    method: RunMethod = RunMethod.ALL
    output: OutputFormat = OutputFormat.CSV
    mc: McConfig = McConfig()
    tol: float = Field(1e-10, gt=0, lt=1)
    terms: int = Field(60, ge=10)

    @model_validator(mode='after')
    def check_required(self):
        """Point-wise subcommands need a point; all but verify need a domain."""
        if self.subcommand != Subcommand.VERIFY and not self.domain:
            raise ValueError(f"{self.subcommand.value} requires --domain")
        if self.subcommand in (Subcommand.EXIT_TIME, Subcommand.COMPARE) and self.point is None:
            raise ValueError(f"{self.subcommand.value} requires --point")
        return self
