"""
Antiderivatives of ρ·Li₂(cρ) and ρ·Li₂(t/ρ), the radial building blocks of
the half-disc Green-function route.
"""

from typing import Union

import numpy as np

from ..errors import InvalidParameterError
from ..specfun import dilog

Number = Union[float, complex]

SERIES_RADIUS = 0.5
SERIES_TERMS = 60

_n = np.arange(1, SERIES_TERMS + 1, dtype=float)
_MOMENT_COEFFS = 1.0 / (_n ** 2 * (_n + 2.0))


def _finish(value: complex, *inputs: Number) -> Number:
    if any(isinstance(v, complex) and v.imag != 0 for v in inputs):
        return complex(value)
    return float(value.real)


def dilog_moment_integral(c: Number, rho: float) -> Number:
    """
    ∫₀^ρ s·Li₂(cs) ds = (1/8c²)[4c²ρ²Li₂(cρ) + 2(c²ρ² - 1)ln(1 - cρ) - cρ(2 + cρ)].

    For |cρ| ≤ 1/2 the power series Σ cⁿρⁿ⁺²/(n²(n+2)) is used instead of the
    closed form, which cancels badly as cρ → 0. At cρ = 1 the logarithmic
    term is taken at its limit 0.

    Args:
        c: Real or complex scale
        rho: Upper limit, ρ ≥ 0

    Returns:
        The integral; complex when c is complex
    """
    u = complex(c) * rho
    if abs(u) > 1.0 + 1e-12:
        raise InvalidParameterError(f"dilog moment integral needs |c rho| <= 1, got {abs(u)}")
    if rho == 0 or c == 0:
        return _finish(0j, c)
    if abs(u) <= SERIES_RADIUS:
        powers = u ** _n
        value = rho * rho * np.sum(_MOMENT_COEFFS * powers)
        return _finish(complex(value), c)

    cc = complex(c)
    log_term = 0j if u == 1 else 2.0 * (u * u - 1.0) * np.log(1.0 - u)
    value = (4.0 * u * u * dilog(u) + log_term - u * (2.0 + u)) / (8.0 * cc * cc)
    return _finish(complex(value), c)


def dilog_reciprocal_moment_integral(t: Number, rho: float) -> Number:
    """
    Antiderivative of ρ·Li₂(t/ρ):

        ¼{2ρ²Li₂(t/ρ) + t[ρ + t ln(ρ - t)] - ρ² ln(1 - t/ρ)}

    obtained by three integrations by parts. Differences between two upper
    limits give definite integrals.

    Args:
        t: Real (t < ρ) or complex (|t| ≤ ρ, t ≠ ρ) parameter
        rho: Evaluation point

    Returns:
        The antiderivative value; complex when t is complex
    """
    if rho <= 0 or abs(t) > rho * (1.0 + 1e-12) or complex(t) == rho:
        raise InvalidParameterError(f"reciprocal moment integral needs rho >= |t| and t != rho, got rho={rho}, t={t}")
    tt = complex(t)
    ratio = tt / rho
    value = 0.25 * (
        2.0 * rho * rho * dilog(ratio)
        + tt * (rho + tt * np.log(rho - tt))
        - rho * rho * np.log(1.0 - ratio)
    )
    return _finish(complex(value), t)

