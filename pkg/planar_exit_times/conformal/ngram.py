"""
The n-gram: the 2n-gon image of the unit disc under

    w(z) = ∫₀^z (1 + tⁿ)^(-μ₁) (1 - tⁿ)^(-μ₂) dt = z F₁(1/n; μ₁, μ₂; 1+1/n; -zⁿ, zⁿ),

with μ₁ + μ₂ = 2/n. The vertices are the images of the 2n-th roots of unity.
"""

import logging
import math
from functools import lru_cache
from typing import Tuple

import numpy as np
from scipy import integrate

from ..errors import ConvergenceError, InvalidParameterError
from ..schemas.models import ExitTimeEstimate, NGram, NGramRadii
from ..specfun import AppellParams, appell_f1, binomial_sequence, gamma, hyp2f1
from .series import PowerSeries, binomial_series, coefficient_exit_time

logger = logging.getLogger(__name__)

DEFAULT_ORDER = 4096
RADII_AGREEMENT = 1e-9


def _check(n: int, mu1: float, mu2: float) -> None:
    # reuse the model validator for the angle-sum and range invariants
    try:
        NGram(n=n, mu1=mu1, mu2=mu2)
    except ValueError as e:
        raise InvalidParameterError(f"invalid n-gram parameters: {e}") from e


def ngram_coefficients(n: int, mu1: float, mu2: float, order: int = DEFAULT_ORDER) -> PowerSeries:
    """
    Maclaurin coefficients of the n-gram map.

    The derivative (1 + zⁿ)^(-μ₁)(1 - zⁿ)^(-μ₂) is the Cauchy product of two
    binomial series in zⁿ; integrating it leaves nonzero coefficients only at
    indices nm + 1, with a₁ = 1.

    The product is a direct convolution in the variable zⁿ; an FFT product
    loses the relative accuracy of the small tail coefficients.
    """
    _check(n, mu1, mu2)
    if order < n + 1:
        raise InvalidParameterError(f"order must be at least n + 1 = {n + 1}")
    count = order // n + 1
    outer = binomial_series(-mu1, count - 1)
    inner = binomial_series(-mu2, count - 1, scale=-1.0)
    compressed = np.convolve(outer.coeffs, inner.coeffs)[:count]
    derivative = np.zeros(order + 1, dtype=complex)
    derivative[::n][:count] = compressed
    return PowerSeries(derivative).integral()


def ngram_exit_time(n: int, mu1: float, mu2: float, tol: float = 1e-10,
                    order: int = DEFAULT_ORDER) -> ExitTimeEstimate:
    """Expected exit time from the centre of the n-gram."""
    return coefficient_exit_time(ngram_coefficients(n, mu1, mu2, order), tol)


def ngram_exit_time_direct(n: int, mu1: float, mu2: float, order: int = DEFAULT_ORDER,
                           tol: float = 1e-10) -> ExitTimeEstimate:
    """
    Same exit time with each coefficient written as the finite inner sum
    Σ_j (-1)^j C(-μ₂, j) C(-μ₁, m-j) / (nm + 1).
    """
    _check(n, mu1, mu2)
    count = (order - 1) // n + 1
    first = binomial_sequence(-mu2, count) * (-1.0) ** np.arange(count)
    second = binomial_sequence(-mu1, count)
    coeffs = np.zeros(order + 1)
    for m in range(count):
        inner = float(np.dot(first[:m + 1], second[m::-1]))
        coeffs[n * m + 1] = inner / (n * m + 1)
    return coefficient_exit_time(PowerSeries(coeffs), tol)


def _vertex_radius_hypergeometric(n: int, mu_a: float, mu_b: float) -> float:
    """|w| at the root of unity where (1 - zⁿ) vanishes with exponent μ_b."""
    a = 1.0 / n
    prefactor = gamma(1.0 + a) * gamma(1.0 - mu_b) / gamma(1.0 + a - mu_b)
    return prefactor * float(hyp2f1(a, mu_a, 1.0 + a - mu_b, -1.0))


def _vertex_radius_appell(n: int, mu_a: float, mu_b: float) -> float:
    return appell_f1(AppellParams(1.0 / n, mu_a, mu_b, 1.0 + 1.0 / n, -1.0, 1.0))


def ngram_radii(n: int, mu1: float, mu2: float) -> NGramRadii:
    """
    Circumradius R and inner vertex radius R_D of the n-gram.

    The vertex radii |w(1)| and |w(e^{iπ/n})| are evaluated both from the
    Gauss-reduced ₂F₁ forms and from Appell F₁ at the vertex; the two routes
    must agree to RADII_AGREEMENT.

    Raises:
        ConvergenceError: the two routes disagree
    """
    _check(n, mu1, mu2)
    radii = []
    for mu_a, mu_b in ((mu1, mu2), (mu2, mu1)):
        closed = _vertex_radius_hypergeometric(n, mu_a, mu_b)
        appell = _vertex_radius_appell(n, mu_a, mu_b)
        if abs(closed - appell) > RADII_AGREEMENT * max(1.0, closed):
            raise ConvergenceError(
                f"n-gram vertex radius routes disagree: 2F1 {closed:.15g} vs F1 {appell:.15g}",
                partial=closed,
            )
        radii.append(closed)
    logger.debug(f"n-gram n={n} mu1={mu1} mu2={mu2} vertex radii {radii}")
    return NGramRadii(circumradius=max(radii), inradius=min(radii))


def ngram_vertex_radii_quadrature(n: int, mu1: float, mu2: float, tol: float = 1e-12) -> Tuple[float, float]:
    """
    |w(1)| and |w(e^{iπ/n})| by adaptive quadrature of the Schwarz–Christoffel
    integrand along the two rays; the endpoint singularity (1 - t)^(-μ) is
    carried by QUADPACK's algebraic weight.
    """
    _check(n, mu1, mu2)
    out = []
    for mu_a, mu_b in ((mu1, mu2), (mu2, mu1)):
        def smooth(t: float, mu_a=mu_a, mu_b=mu_b) -> float:
            # (1 - tⁿ) = (1 - t)(1 + t + ... + t^(n-1))
            return (1.0 + t ** n) ** (-mu_a) * sum(t ** k for k in range(n)) ** (-mu_b)

        value, _ = integrate.quad(smooth, 0.0, 1.0, weight="alg", wvar=(0.0, -mu_b),
                                  epsabs=tol, epsrel=tol, limit=200)
        out.append(value)
    return out[0], out[1]


@lru_cache(maxsize=32)
def ngram_vertices(n: int, mu1: float, mu2: float) -> np.ndarray:
    """The 2n vertices, counterclockwise from the image of z = 1."""
    _check(n, mu1, mu2)
    outer = _vertex_radius_hypergeometric(n, mu1, mu2)
    inner = _vertex_radius_hypergeometric(n, mu2, mu1)
    k = np.arange(2 * n)
    radius = np.where(k % 2 == 0, outer, inner)
    vertices = radius * np.exp(1j * math.pi * k / n)
    vertices.setflags(write=False)
    return vertices
