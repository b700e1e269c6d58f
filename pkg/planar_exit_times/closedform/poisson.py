"""
Closed-form solutions of ∇²u = -2 with zero boundary values, i.e. the
expected exit time at every point of the domain.

Series solutions use exponentially scaled cosh/sinh ratios. Where a ratio is
close to 1 for the last retained term (points near the edge carrying the
boundary data), the series is rewritten as its known infinite sum minus a
complement series, which makes the boundary values exact.
"""

import math

import numpy as np

from ..domains.geometry import in_closure
from ..errors import InvalidParameterError, PreconditionError
from ..schemas.models import EquilateralTriangle, IsoscelesRightTriangle, Point2

SQRT3 = math.sqrt(3.0)
BOUNDARY_TOL = 1e-12
MIN_TERMS = 10
COMPLEMENT_SWITCH = 0.5


def _check_terms(terms: int) -> None:
    if terms < MIN_TERMS:
        raise InvalidParameterError(f"series solutions need at least {MIN_TERMS} terms, got {terms}")


def _sinh_ratio(k: np.ndarray, s: float, half: float) -> np.ndarray:
    """sinh(k s)/sinh(k·half) for |s| <= half without overflow."""
    t = abs(s)
    ratio = np.exp(k * (t - half)) * (-np.expm1(-2.0 * k * t)) / (-np.expm1(-2.0 * k * half))
    return math.copysign(1.0, s) * ratio


def _cosh_ratio(k: np.ndarray, s: float, half: float) -> np.ndarray:
    """cosh(k s)/cosh(k·half) for |s| <= half without overflow."""
    t = abs(s)
    return np.exp(k * (t - half)) * (1.0 + np.exp(-2.0 * k * t)) / (1.0 + np.exp(-2.0 * k * half))


def wedge_u(r: float, theta: float, alpha: float) -> float:
    """
    (r²/2)(cos 2θ / cos 2α - 1) on the wedge |θ| < α.

    Args:
        r: Distance from the apex
        theta: Polar angle
        alpha: Half-angle, below π/4 (the exit time is infinite otherwise)
    """
    if not 0 < alpha < math.pi / 4:
        raise InvalidParameterError(f"wedge half-angle must lie in (0, pi/4) for a finite exit time, got {alpha}")
    if r < 0 or abs(theta) > alpha + BOUNDARY_TOL:
        raise PreconditionError(f"point (r={r}, theta={theta}) is outside the wedge of half-angle {alpha}")
    return 0.5 * r * r * (math.cos(2.0 * theta) / math.cos(2.0 * alpha) - 1.0)


def disc_u(r: float, r0: float) -> float:
    """(r0² - r²)/2."""
    if r < 0 or r > r0 * (1.0 + BOUNDARY_TOL):
        raise PreconditionError(f"radius {r} is outside the disc of radius {r0}")
    return max(0.5 * (r0 * r0 - r * r), 0.0)


def equilateral_triangle_u(x: float, y: float, a: float) -> float:
    """(1/18a)(2√3y + a)(√3y + 3x - a)(√3y - 3x - a); the centroid value is a²/18."""
    if not in_closure(EquilateralTriangle(a=a), Point2(x=x, y=y), BOUNDARY_TOL * a):
        raise PreconditionError(f"point ({x}, {y}) is outside the triangle of side {a}")
    return (2 * SQRT3 * y + a) * (SQRT3 * y + 3 * x - a) * (SQRT3 * y - 3 * x - a) / (18.0 * a)


def circular_cutout_u(r: float, theta: float, a: float, b: float) -> float:
    """-½(r² - b²)(1 - 2a cos θ / r) on {r > b} ∩ {r < 2a cos θ}."""
    if b > a:
        raise InvalidParameterError(f"cutout needs a >= b, got a={a}, b={b}")
    slack = BOUNDARY_TOL * a
    if r < b - slack or r > 2.0 * a * math.cos(theta) + slack:
        raise PreconditionError(f"point (r={r}, theta={theta}) is outside the cut-out disc")
    return -0.5 * (r * r - b * b) * (1.0 - 2.0 * a * math.cos(theta) / r)


def _odd_cosine_cubic(k: np.ndarray, n: np.ndarray, s: float, weights: np.ndarray,
                      closed: float) -> float:
    """
    Σ (-1)ⁿ cos(k s) w_n / (2n+1)³ for weights of one sign, switching to
    ±[closed - Σ (-1)ⁿ cos(k s)(1 - |w_n|)/(2n+1)³] when the last |w_n| exceeds
    COMPLEMENT_SWITCH.
    """
    base = (-1.0) ** n * np.cos(k * s) / (2.0 * n + 1.0) ** 3
    if abs(weights[-1]) > COMPLEMENT_SWITCH:
        sign = math.copysign(1.0, weights[-1])
        return sign * (closed - float(np.sum(base * (1.0 - np.abs(weights)))))
    return float(np.sum(base * weights))


def isosceles_right_u(x: float, y: float, a: float, terms: int = 60) -> float:
    """
    Exit time in the right isosceles triangle with legs on x = a/2 and y = a/2
    and hypotenuse on y = -x: u = ψ - (x² + y²)/2 with the harmonic

        ψ = -xy + (a/2)(x + y) - (4a²/π³) Σ (-1)ⁿ [sinh(k y) cos(k x) + sinh(k x) cos(k y)] / ((2n+1)³ sinh(k a/2)),

    k = (2n+1)π/a.
    """
    _check_terms(terms)
    if not in_closure(IsoscelesRightTriangle(a=a), Point2(x=x, y=y), BOUNDARY_TOL * a):
        raise PreconditionError(f"point ({x}, {y}) is outside the right triangle of leg {a}")
    n = np.arange(terms)
    k = (2.0 * n + 1.0) * math.pi / a
    half = a / 2.0

    def closed_cosine(s: float) -> float:
        # Σ (-1)ⁿ cos(k s)/(2n+1)³ = (π³/32)(1 - 4s²/a²)
        return math.pi ** 3 / 32.0 * (1.0 - 4.0 * s * s / (a * a))

    total = 0.0
    for arg_sinh, arg_cos in ((y, x), (x, y)):
        weights = _sinh_ratio(k, arg_sinh, half)
        total += _odd_cosine_cubic(k, n, arg_cos, weights, closed_cosine(arg_cos))

    psi = -x * y + half * (x + y) - 4.0 * a * a / math.pi ** 3 * total
    return psi - 0.5 * (x * x + y * y)


def ellipse_u(x: float, y: float, a: float, b: float) -> float:
    """a²b²/(a² + b²) · (1 - x²/a² - y²/b²)."""
    level = (x / a) ** 2 + (y / b) ** 2
    if level > 1.0 + BOUNDARY_TOL:
        raise PreconditionError(f"point ({x}, {y}) is outside the ellipse a={a}, b={b}")
    return max(a * a * b * b / (a * a + b * b) * (1.0 - level), 0.0)


def rectangle_u(x: float, y: float, a: float, b: float, terms: int = 60) -> float:
    """
    Exit time in |x| < a, |y| < b:

        u = a² - x² - (4/a) Σ (-1)ⁿ cosh(αₙ y) cos(αₙ x) / (αₙ³ cosh(αₙ b)),  αₙ = (n + ½)π/a.
    """
    _check_terms(terms)
    if abs(x) > a * (1.0 + BOUNDARY_TOL) or abs(y) > b * (1.0 + BOUNDARY_TOL):
        raise PreconditionError(f"point ({x}, {y}) is outside the rectangle a={a}, b={b}")
    x = max(-a, min(a, x))
    y = max(-b, min(b, y))
    n = np.arange(terms)
    alpha = (n + 0.5) * math.pi / a
    weights = _cosh_ratio(alpha, y, b)
    # Σ (-1)ⁿ cos(αₙ x)/αₙ³ = (a/4)(a² - x²), scaled to the (2n+1)³ normalisation
    scale = (2.0 * a / math.pi) ** 3
    series = scale * _odd_cosine_cubic(alpha, n, x, weights, (a / 4.0) * (a * a - x * x) / scale)
    return a * a - x * x - 4.0 / a * series


def strip_u(x: float, a: float) -> float:
    """a² - x² on the strip |x| < a."""
    if abs(x) > a * (1.0 + BOUNDARY_TOL):
        raise PreconditionError(f"x={x} is outside the strip of half-width {a}")
    return max(a * a - x * x, 0.0)
