"""
Partial-fraction series for tan, cot and sech, and the alternating cubic
sum that links the double sine series of the square to its single series.

Each sum is truncated after a fixed number of terms and completed with an
exact tail written through Hurwitz zeta (and digamma) values.
"""

import math

import numpy as np
from scipy.special import psi, zeta

from ..errors import InvalidParameterError

HEAD_TERMS = 64
TAIL_ORDERS = 40


def _tail_series(x: float, hurwitz) -> float:
    """Σ_j x^(2j-2)·hurwitz(j) until the terms stop contributing."""
    total = 0.0
    for j in range(1, TAIL_ORDERS + 1):
        term = x ** (2 * j - 2) * hurwitz(j)
        total += term
        if abs(term) <= 1e-18 * max(abs(total), 1e-300):
            break
    return total


def _alternating_odd_tail(s: int, start: int) -> float:
    """Σ_{k≥start} (-1)^k / (2k+1)^s."""
    lo = (2 * start + 1) / 4.0
    hi = (2 * start + 3) / 4.0
    if s == 1:
        paired = psi(hi) - psi(lo)
    else:
        paired = zeta(s, lo) - zeta(s, hi)
    return (-1.0) ** start * 4.0 ** (-s) * float(paired)


def _check_tail_radius(x: float) -> None:
    if abs(x) >= 2 * HEAD_TERMS - 1:
        raise InvalidParameterError(f"|x| must be below {2 * HEAD_TERMS - 1} for the tail expansion")


def tan_partial_fraction(x: float) -> float:
    """tan(πx/2) = (4x/π) Σ_{k≥1} 1/((2k-1)² - x²)."""
    if float(x).is_integer() and int(x) % 2 == 1:
        raise InvalidParameterError(f"tan(pi x / 2) has a pole at x={x}")
    _check_tail_radius(x)
    odd = 2.0 * np.arange(1, HEAD_TERMS + 1) - 1.0
    head = float(np.sum(1.0 / (odd ** 2 - x * x)))
    tail = _tail_series(x, lambda j: 4.0 ** (-j) * zeta(2 * j, HEAD_TERMS + 0.5))
    return 4.0 * x / math.pi * (head + tail)


def cot_partial_fraction(x: float) -> float:
    """cot(πx/2) = 2/(πx) + (4x/π) Σ_{k≥1} 1/(x² - 4k²)."""
    if float(x).is_integer() and int(x) % 2 == 0:
        raise InvalidParameterError(f"cot(pi x / 2) has a pole at x={x}")
    _check_tail_radius(x)
    even = 2.0 * np.arange(1, HEAD_TERMS + 1)
    head = float(np.sum(1.0 / (x * x - even ** 2)))
    tail = -_tail_series(x, lambda j: 4.0 ** (-j) * zeta(2 * j, HEAD_TERMS + 1.0))
    return 2.0 / (math.pi * x) + 4.0 * x / math.pi * (head + tail)


def sech_partial_fraction(x: float) -> float:
    """sech(πx/2) = (4/π) Σ_{k≥0} (-1)^k (2k+1)/((2k+1)² + x²)."""
    _check_tail_radius(x)
    k = np.arange(HEAD_TERMS)
    odd = 2.0 * k + 1.0
    head = float(np.sum((-1.0) ** k * odd / (odd ** 2 + x * x)))
    tail = _tail_series(x, lambda j: (-1.0) ** (j - 1) * _alternating_odd_tail(2 * j - 1, HEAD_TERMS))
    return 4.0 / math.pi * (head + tail)


def alternating_cubic_sum(x: float) -> float:
    """Σ_{m≥1} (-1)^m / ((2m-1)((2m-1)² + x²))."""
    _check_tail_radius(x)
    m = np.arange(1, HEAD_TERMS + 1)
    odd = 2.0 * m - 1.0
    head = float(np.sum((-1.0) ** m / (odd * (odd ** 2 + x * x))))
    tail = -_tail_series(x, lambda j: (-1.0) ** (j - 1) * _alternating_odd_tail(2 * j + 1, HEAD_TERMS))
    return head + tail


def alternating_cubic_closed(x: float) -> float:
    """(π/(8x²))[-2 + cot(π(ix+1)/4) + tan(π(ix+1)/4)], the closed value of alternating_cubic_sum."""
    if x == 0:
        return -math.pi ** 3 / 32.0
    arg = complex(math.pi / 4.0, math.pi * x / 4.0)
    value = math.pi / (8.0 * x * x) * (-2.0 + 1.0 / np.tan(arg) + np.tan(arg))
    return float(np.real(value))
