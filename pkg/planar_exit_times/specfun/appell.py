"""
Appell F₁(a; b₁, b₂; c; x, y) by double series and by Euler-type integral.
"""

import logging
import math
from dataclasses import dataclass

from scipy import integrate

from ..errors import ConvergenceError, InvalidParameterError
from .gamma import gauss_sum, lgamma, gamma_sign
from .hypergeometric import hyp2f1

logger = logging.getLogger(__name__)

TRANSFORM_BELOW = -0.5


@dataclass(frozen=True)
class AppellParams:
    """Parameters of F₁(a; b1, b2; c; x, y) with real x in [-1, 1) and y in [-1, 1]."""

    a: float
    b1: float
    b2: float
    c: float
    x: float
    y: float

    def __post_init__(self):
        if self.c <= 0 and float(self.c).is_integer():
            raise InvalidParameterError(f"Appell F1 needs c not a nonpositive integer, got c={self.c}")
        if not -1.0 <= self.x < 1.0:
            raise InvalidParameterError(f"Appell F1 needs x in [-1, 1), got x={self.x}")
        if not -1.0 <= self.y <= 1.0:
            raise InvalidParameterError(f"Appell F1 needs y in [-1, 1], got y={self.y}")
        if self.y == 1.0 and self.c - self.a - self.b2 <= 0:
            raise InvalidParameterError("Appell F1 at y=1 needs c - a - b2 > 0")


def _inner(a: float, b2: float, c: float, y: float, tol: float) -> float:
    """₂F₁(a, b2; c; y); at y = 1 by Gauss summation."""
    if y == 1.0:
        return gauss_sum(a, b2, c)
    return float(hyp2f1(a, b2, c, y, tol=tol))


def appell_f1_series(params: AppellParams, tol: float = 1e-13, max_terms: int = 100000) -> float:
    """
    Double series of F₁, summed as Σ_m (a)_m (b1)_m / ((c)_m m!) x^m ₂F₁(a+m, b2; c+m; y).

    For x < -1/2 the arguments are first moved to x/(x-1) ∈ [1/3, 1/2] with
    F₁(a;b1,b2;c;x,y) = (1-x)^(-a) F₁(a; c-b1-b2, b2; c; x/(x-1), (y-x)/(1-x)).
    """
    a, b1, b2, c, x, y = params.a, params.b1, params.b2, params.c, params.x, params.y
    prefactor = 1.0
    if x < TRANSFORM_BELOW:
        prefactor = (1.0 - x) ** (-a)
        b1, x, y = c - b1 - b2, x / (x - 1.0), (y - x) / (1.0 - x)
        y = min(y, 1.0)

    total = 0.0
    coef = 1.0
    quiet = 0
    for m in range(max_terms):
        term = coef * _inner(a + m, b2, c + m, y, max(tol * 1e-2, 1e-14))
        total += term
        quiet = quiet + 1 if abs(term) <= tol * abs(total) else 0
        if quiet >= 3 or coef == 0.0:
            return prefactor * total
        coef *= (a + m) * (b1 + m) / ((c + m) * (m + 1.0)) * x
    raise ConvergenceError(
        f"Appell F1 series did not converge within {max_terms} terms", partial=prefactor * total, terms=max_terms
    )


def appell_f1_integral(params: AppellParams, tol: float = 1e-12) -> float:
    """
    Integral representation Γ(c)/(Γ(a)Γ(c-a)) ∫₀¹ u^(a-1)(1-u)^(c-a-1)(1-ux)^(-b1)(1-uy)^(-b2) du.

    For a < 1 the substitution u = t^(1/a) removes the u = 0 singularity; the
    algebraic singularity at the upper end is handled by QUADPACK's
    algebraic weight.
    """
    a, b1, b2, c, x, y = params.a, params.b1, params.b2, params.c, params.x, params.y
    if a <= 0 or c <= a:
        raise InvalidParameterError(f"integral form of Appell F1 needs c > a > 0, got a={a}, c={c}")

    beta_exp = c - a - 1.0
    y_factor = True
    if y == 1.0:
        beta_exp -= b2
        y_factor = False

    def smooth(u: float) -> float:
        value = (1.0 - u * x) ** (-b1)
        if y_factor:
            value *= (1.0 - u * y) ** (-b2)
        return value

    if a < 1.0:
        def integrand(t: float) -> float:
            if t <= 0.0:
                return smooth(0.0) / a
            u = t ** (1.0 / a)
            gap = 1.0 - t
            ratio = 1.0 / a if gap < 1e-12 else -math.expm1(math.log(t) / a) / gap
            return smooth(u) * ratio ** beta_exp / a

        wvar = (0.0, beta_exp)
    else:
        integrand = smooth
        wvar = (a - 1.0, beta_exp)

    value, abserr = integrate.quad(
        integrand, 0.0, 1.0, weight="alg", wvar=wvar, epsabs=tol * 0.1, epsrel=tol * 0.1, limit=400
    )
    log_norm = lgamma(c) - lgamma(a) - lgamma(c - a)
    norm = gamma_sign(c) * gamma_sign(a) * gamma_sign(c - a) * math.exp(log_norm)
    logger.debug(f"Appell F1 quadrature value={value:.15g} abserr={abserr:.2e}")
    return norm * value


def appell_f1(params: AppellParams, tol: float = 1e-10) -> float:
    """
    Appell F₁ evaluated on both paths; they must agree to 10·tol.

    Args:
        params: Parameters and arguments
        tol: Target accuracy

    Returns:
        The double-series value
    """
    series = appell_f1_series(params, tol=tol * 1e-2)
    quadrature = appell_f1_integral(params, tol=tol * 1e-2)
    gap = abs(series - quadrature)
    if gap > 10.0 * tol * max(1.0, abs(series)):
        raise ConvergenceError(
            f"Appell F1 series and quadrature disagree by {gap:.3e}", partial=series
        )
    return series
