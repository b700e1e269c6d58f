"""
Gamma, Beta, Pochhammer and binomial helpers.

Thin wrappers around scipy.special that add pole detection and the
conventions used by the series code (products for Pochhammer symbols,
generalized binomial coefficients for real upper index).
"""

import math

import numpy as np
from scipy import special

from ..errors import InvalidParameterError, PoleError


def _is_pole(x: float) -> bool:
    return x <= 0 and float(x).is_integer()


def gamma(x: float) -> float:
    """
    Gamma function on the real line.

    Args:
        x: Argument; must not be a nonpositive integer

    Returns:
        Γ(x)
    """
    if _is_pole(x):
        raise PoleError(f"gamma has a pole at x={x}")
    return float(special.gamma(x))


def lgamma(x: float) -> float:
    """Logarithm of |Γ(x)|."""
    if _is_pole(x):
        raise PoleError(f"log-gamma has a pole at x={x}")
    return float(special.gammaln(x))


def gamma_sign(x: float) -> float:
    """Sign of Γ(x) for real non-pole x."""
    if _is_pole(x):
        raise PoleError(f"gamma has a pole at x={x}")
    return float(special.gammasgn(x))


def beta(x: float, y: float) -> float:
    """
    Beta function B(x, y) = Γ(x)Γ(y)/Γ(x+y), evaluated through log-gamma.

    A pole of Γ(x+y) in the denominator makes B vanish; poles in the
    numerator are rejected.
    """
    if _is_pole(x) or _is_pole(y):
        raise PoleError(f"beta has a pole at ({x}, {y})")
    if _is_pole(x + y):
        raise PoleError(f"beta is undefined for x + y = {x + y}")
    sign = gamma_sign(x) * gamma_sign(y) * gamma_sign(x + y)
    return sign * math.exp(lgamma(x) + lgamma(y) - lgamma(x + y))


def pochhammer(a: float, k: int) -> float:
    """
    Rising factorial (a)_k = a(a+1)...(a+k-1), with (a)_0 = 1.

    Evaluated as a product so negative and integer a are handled exactly.
    """
    if k < 0:
        raise InvalidParameterError(f"pochhammer index must be nonnegative, got {k}")
    if k == 0:
        return 1.0
    return float(np.prod(a + np.arange(k, dtype=float)))


def binomial(alpha: float, k: int) -> float:
    """Generalized binomial coefficient C(alpha, k) for integer k."""
    if k < 0:
        return 0.0
    return (-1.0) ** k * pochhammer(-alpha, k) / math.factorial(k)


def binomial_sequence(alpha: float, count: int) -> np.ndarray:
    """C(alpha, k) for k = 0..count-1 via the term-ratio recurrence."""
    if count <= 0:
        return np.zeros(0)
    k = np.arange(1, count, dtype=float)
    ratios = (alpha - k + 1.0) / k
    return np.concatenate(([1.0], np.cumprod(ratios)))


def gauss_sum(a: float, b: float, c: float) -> float:
    """
    Gauss summation ₂F₁(a, b; c; 1) = Γ(c)Γ(c−a−b)/(Γ(c−a)Γ(c−b)).

    Requires c − a − b > 0. A pole in Γ(c−a) or Γ(c−b) gives zero.
    """
    s = c - a - b
    if s <= 0:
        raise InvalidParameterError(f"Gauss summation needs c - a - b > 0, got {s}")
    if _is_pole(c - a) or _is_pole(c - b):
        return 0.0
    sign = gamma_sign(c) * gamma_sign(s) * gamma_sign(c - a) * gamma_sign(c - b)
    return sign * math.exp(lgamma(c) + lgamma(s) - lgamma(c - a) - lgamma(c - b))
