"""
Complex dilogarithm Li₂(z) = Σ zⁿ/n² on the closed unit disc.
"""

import math
from typing import Union

import numpy as np
from scipy.special import bernoulli, factorial

from ..errors import InvalidParameterError

ArrayLike = Union[complex, float, np.ndarray]

DIRECT_RADIUS = 0.5
DIRECT_TERMS = 64
BERNOULLI_TERMS = 40
DISC_SLACK = 1e-12

_n = np.arange(1, DIRECT_TERMS + 1, dtype=float)
_DIRECT_COEFFS = 1.0 / _n ** 2
_BERNOULLI_COEFFS = bernoulli(BERNOULLI_TERMS) / factorial(np.arange(1, BERNOULLI_TERMS + 2))


def _horner(coeffs: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Σ coeffs[k] z^(k+1)."""
    acc = np.zeros_like(z)
    for c in coeffs[::-1]:
        acc = (acc + c) * z
    return acc


def _small_or_left(z: np.ndarray) -> np.ndarray:
    """Li₂ for |z| ≤ 1 with Re z ≤ 1/2."""
    out = np.empty_like(z)
    direct = np.abs(z) <= DIRECT_RADIUS
    out[direct] = _horner(_DIRECT_COEFFS, z[direct])
    rest = ~direct
    u = -np.log1p(-z[rest])
    out[rest] = _horner(_BERNOULLI_COEFFS, u)
    return out


def dilog(z: ArrayLike) -> ArrayLike:
    """
    Principal branch of the dilogarithm for |z| ≤ 1.

    Uses the power series for |z| ≤ 1/2, the Bernoulli series in -ln(1-z)
    for the remaining points with Re z ≤ 1/2, and the reflection
    Li₂(z) = π²/6 - ln z ln(1-z) - Li₂(1-z) for Re z > 1/2.

    Args:
        z: Scalar or array of complex points in the closed unit disc

    Returns:
        Li₂(z), complex, with the shape of the input
    """
    scalar = np.ndim(z) == 0
    zz = np.atleast_1d(np.asarray(z, dtype=complex))
    if np.any(np.abs(zz) > 1.0 + DISC_SLACK):
        raise InvalidParameterError("dilog is only implemented on the closed unit disc |z| <= 1")

    out = np.empty_like(zz)
    right = zz.real > 0.5
    one = zz == 1.0
    out[one] = math.pi ** 2 / 6.0

    left = ~right
    out[left] = _small_or_left(zz[left])

    reflect = right & ~one
    if np.any(reflect):
        w = zz[reflect]
        out[reflect] = math.pi ** 2 / 6.0 - np.log(w) * np.log1p(-w) - _small_or_left(1.0 - w)

    return complex(out[0]) if scalar else out.reshape(np.shape(z))
