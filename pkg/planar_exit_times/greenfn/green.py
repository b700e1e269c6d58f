"""
Green-function route to the expected exit time, u(z) = 2∫∫ G(z, ζ) dA(ζ),
for the disc and the upper half disc.

The half-disc angular integrals reduce to imaginary parts of
Λ(ζ) = Li₂(ζ) - Li₂(-ζ); the radial integrals are done either in closed form
(dilog moment antiderivatives) or by adaptive quadrature split at ρ = r.
"""

import logging
import math
from typing import Optional

import numpy as np
from scipy import integrate

from ..errors import InvalidParameterError, PreconditionError
from ..schemas.models import Disc, DomainSpec, EstimateMethod, ExitTimeEstimate, HalfDisc, Point2, PolarPoint
from ..specfun import dilog
from .integrals import dilog_moment_integral, dilog_reciprocal_moment_integral

logger = logging.getLogger(__name__)


def _log_abs_sq(w: complex) -> float:
    return math.log(abs(w) ** 2)


def disc_green(z: PolarPoint, zeta: PolarPoint, r0: float) -> float:
    """(1/2π) ln(|r0² - z ζ̄| / (r0 |z - ζ|)), positive inside the disc."""
    a, b = z.to_point().z, zeta.to_point().z
    if a == b:
        raise PreconditionError("Green function is singular at coincident points")
    return math.log(abs(r0 * r0 - a * b.conjugate()) / (r0 * abs(a - b))) / (2.0 * math.pi)


def halfdisc_green(z: PolarPoint, zeta: PolarPoint, r0: float = 1.0) -> float:
    """
    Dirichlet Green function of the upper half disc, the disc Green function
    minus its reflection in the real axis:

        (1/4π) ln(|r0² - zζ̄|² |z - ζ̄|² / (|z - ζ|² |r0² - zζ|²))
    """
    for pt in (z, zeta):
        if pt.r > r0 or not 0.0 <= pt.theta <= math.pi:
            raise PreconditionError(f"point (r={pt.r}, theta={pt.theta}) is outside the half disc")
    a, b = z.to_point().z, zeta.to_point().z
    if a == b:
        raise PreconditionError("Green function is singular at coincident points")
    if b.imag == 0 or abs(b) == r0 or a.imag == 0 or abs(a) == r0:
        return 0.0
    r2 = r0 * r0
    value = (
        _log_abs_sq(r2 - a * b.conjugate()) + _log_abs_sq(a - b.conjugate())
        - _log_abs_sq(a - b) - _log_abs_sq(r2 - a * b)
    )
    return value / (4.0 * math.pi)


def log_kernel_expansion(r: float, rho: float, angle: float, terms: int) -> float:
    """
    Partial sum of ln(r² + ρ² - 2rρ cos x) = 2 ln max(r, ρ) - 2 Σ_k (1/k)(min/max)^k cos kx.

    Depends on r and ρ only through min and max, so swapping them changes nothing.
    """
    if r == rho:
        raise PreconditionError("log kernel expansion needs r != rho")
    big, small = max(r, rho), min(r, rho)
    k = np.arange(1, terms + 1)
    x = small / big
    return 2.0 * math.log(big) - 2.0 * float(np.sum(x ** k * np.cos(k * angle) / k))


def log_cosine_integral(a: float, b: float, n: int = 1) -> float:
    """∫₀^{nπ} ln(a² - 2ab cos x + b²) dx = 2πn ln max(|a|, |b|), for |a| != |b|."""
    if abs(a) == abs(b):
        raise InvalidParameterError("log cosine integral needs |a| != |b|")
    return 2.0 * math.pi * n * math.log(max(abs(a), abs(b)))


def _im_lambda(w) -> np.ndarray:
    return np.imag(dilog(w) - dilog(-np.asarray(w)))


def angular_dilog_integral(r: float, rho: float, theta: float, sign: int = 1) -> float:
    """
    ∫₀^π ln(r² + ρ² - 2rρ cos(θ - sign·φ)) dφ = 2π ln r - 2·sign·Im[Li₂(xe^{iθ}) - Li₂(-xe^{iθ})],
    with x = ρ/r.

    Args:
        r: Larger radius
        rho: Smaller radius, 0 <= rho < r
        theta: Angle of the fixed point
        sign: +1 for cos(θ - φ), -1 for cos(θ + φ)
    """
    if not r > rho >= 0:
        raise PreconditionError(f"angular dilog integral needs r > rho >= 0, got r={r}, rho={rho}")
    if sign not in (1, -1):
        raise InvalidParameterError("sign must be +1 or -1")
    x = rho / r
    return 2.0 * math.pi * math.log(r) - 2.0 * sign * float(_im_lambda(x * np.exp(1j * theta)))


def _check_halfdisc_point(pt: PolarPoint, r0: float) -> None:
    if not (0.0 < pt.r < r0 and 0.0 < pt.theta < math.pi):
        raise PreconditionError(f"point (r={pt.r}, theta={pt.theta}) is not interior to the half disc of radius {r0}")


def _lambda_moment(c: complex, rho: float) -> complex:
    """∫₀^ρ s Λ(cs) ds."""
    return complex(dilog_moment_integral(c, rho)) - complex(dilog_moment_integral(-c, rho))


def _lambda_reciprocal_moment(t: complex, lo: float, hi: float) -> complex:
    """∫_lo^hi s Λ(t/s) ds."""
    upper = complex(dilog_reciprocal_moment_integral(t, hi)) - complex(dilog_reciprocal_moment_integral(-t, hi))
    lower = complex(dilog_reciprocal_moment_integral(t, lo)) - complex(dilog_reciprocal_moment_integral(-t, lo))
    return upper - lower


def halfdisc_exit_time_closed(pt: PolarPoint, r0: float = 1.0) -> float:
    """
    u(r, θ) = (2/π) ∫₀^{r0} ρ [Im Λ((min/max) e^{iθ}) - Im Λ(rρ e^{iθ}/r0²)] dρ
    with every radial piece done by the dilog moment antiderivatives.
    """
    _check_halfdisc_point(pt, r0)
    r, unit = pt.r, complex(math.cos(pt.theta), math.sin(pt.theta))
    inner = _lambda_moment(unit / r, r)
    outer = _lambda_reciprocal_moment(r * unit, r, r0)
    image = _lambda_moment(r * unit / (r0 * r0), r0)
    return 2.0 / math.pi * (inner + outer - image).imag


def halfdisc_exit_time_quadrature(pt: PolarPoint, r0: float = 1.0, tol: float = 1e-12) -> float:
    """Same radial integral by adaptive quadrature, split at the kink ρ = r."""
    _check_halfdisc_point(pt, r0)
    r, unit = pt.r, np.exp(1j * pt.theta)

    def image(rho: float) -> float:
        return rho * float(_im_lambda(r * rho * unit / (r0 * r0)))

    def near(rho: float) -> float:
        return rho * float(_im_lambda(rho / r * unit)) - image(rho)

    def far(rho: float) -> float:
        return rho * float(_im_lambda(r / rho * unit)) - image(rho)

    first, _ = integrate.quad(near, 0.0, r, epsabs=tol, epsrel=tol, limit=200)
    second, _ = integrate.quad(far, r, r0, epsabs=tol, epsrel=tol, limit=200)
    return 2.0 / math.pi * (first + second)


def halfdisc_exit_time(pt: PolarPoint, r0: float = 1.0, tol: float = 1e-12) -> ExitTimeEstimate:
    """
    Expected exit time from an interior point of the upper half disc.

    The closed radial route is returned; the quadrature route supplies the
    error indicator.
    """
    closed = halfdisc_exit_time_closed(pt, r0)
    quadrature = halfdisc_exit_time_quadrature(pt, r0, tol)
    error = abs(closed - quadrature)
    logger.debug(f"Half-disc Green route at r={pt.r} theta={pt.theta}: closed={closed:.15g} quad={quadrature:.15g}")
    return ExitTimeEstimate(
        value=closed, method=EstimateMethod.GREEN, error=error, note="dilog antiderivatives vs quadrature"
    )


def disc_exit_time_via_green(r: float, r0: float = 1.0, tol: float = 1e-13) -> float:
    """
    u(r) = 2∫₀^{r0} ρ [∫₀^{2π} G dφ] dρ with the angular part from the log
    cosine integral, giving ∫G dφ = ln(r0/max(r, ρ)), and the radial part by
    quadrature split at ρ = r.
    """
    if not 0 <= r < r0:
        raise PreconditionError(f"disc Green route needs 0 <= r < r0, got r={r}, r0={r0}")

    def angular(rho: float) -> float:
        if rho == r:
            return math.log(r0 / r) if r > 0 else 0.0
        image = log_cosine_integral(r0 * r0, r * rho, 2)
        direct = log_cosine_integral(r, rho, 2)
        return (image - 4.0 * math.pi * math.log(r0) - direct) / (4.0 * math.pi)

    def radial(rho: float) -> float:
        return rho * angular(rho)

    pieces = [(0.0, r), (r, r0)] if r > 0 else [(0.0, r0)]
    total = 0.0
    for lo, hi in pieces:
        value, _ = integrate.quad(radial, lo, hi, epsabs=tol, epsrel=tol, limit=200)
        total += value
    return 2.0 * total


def green_exit_time(domain: DomainSpec, pt: Point2, tol: float = 1e-12) -> Optional[ExitTimeEstimate]:
    """Green-function estimate at pt for the disc and the half disc; None for other domains."""
    if isinstance(domain, Disc):
        r = math.hypot(pt.x, pt.y)
        value = disc_exit_time_via_green(r, domain.r0, tol)
        return ExitTimeEstimate(value=value, method=EstimateMethod.GREEN, note="log cosine integral")
    if isinstance(domain, HalfDisc):
        return halfdisc_exit_time(PolarPoint.from_point(pt), domain.r0, tol)
    return None
