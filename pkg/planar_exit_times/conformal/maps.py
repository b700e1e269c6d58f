"""
Maclaurin coefficients of the explicit conformal maps: wedge, half disc,
lens (and the lens family), Möbius maps of the disc, the Koebe function and
the regular polygon. Coefficients always come from series arithmetic; the
printed hypergeometric forms serve as independent oracles.
"""

import logging
import math

import numpy as np

from ..errors import InvalidParameterError, PreconditionError
from ..schemas.models import EstimateMethod, EstimateStatus, ExitTimeEstimate
from ..specfun import HyperParams, beta, binomial_sequence, gauss_sum, hyp2f1, pfq
from .series import PowerSeries, binomial_series, geometric_series, coefficient_exit_time

logger = logging.getLogger(__name__)

SQRT2 = math.sqrt(2.0)
DEFAULT_ORDER = 4096
WEDGE_TAIL_TERMS = 8


def wedge_coefficients(p: float, q: float, order: int) -> PowerSeries:
    """
    Coefficients of (1+z)^q / (1-z)^p by Cauchy product of the two binomial series.

    Args:
        p: Exponent of the pole factor, 0 < p <= 1
        q: Exponent of the branch factor
        order: Truncation order M

    Returns:
        PowerSeries a₀..a_M; with q = p this maps the disc onto the wedge
        |arg w| < πp/2 sending 0 to 1
    """
    if not 0 < p <= 1:
        raise InvalidParameterError(f"wedge exponent p must lie in (0, 1], got {p}")
    if order < 1:
        raise InvalidParameterError("order must be at least 1")
    return binomial_series(q, order) * binomial_series(-p, order, scale=-1.0)


def wedge_coefficient_closed(p: float, q: float, m: int) -> float:
    """Hypergeometric form (p)_m/m! · ₂F₁(-m, -q; 1-m-p; -1) of the m-th wedge coefficient."""
    return float(_rising_ratio_sequence(p, m + 1)[-1]) * float(hyp2f1(-m, -q, 1 - m - p, -1.0))


def _rising_ratio_sequence(alpha: float, count: int) -> np.ndarray:
    """(alpha)_m / m! for m = 0..count-1."""
    m = np.arange(1, count, dtype=float)
    return np.concatenate(([1.0], np.cumprod((alpha + m - 1.0) / m)))


def _wedge_tail(p: float, order: int):
    """
    Σ_{m>order} a_m² from the singular expansions at z = 1 and z = -1.

    a_m ≈ A_m + B_m with A_m = Σ_j c_j (p-j)_m/m! and B_m = Σ_k d_k C(p+k, m);
    the squared sums are closed by Gauss summation, the alternating cross term
    by its first omitted term.
    """
    j = np.arange(WEDGE_TAIL_TERMS)
    c = 2.0 ** p * binomial_sequence(p, WEDGE_TAIL_TERMS) * (-0.5) ** j
    d = 2.0 ** (-p) * binomial_sequence(-p, WEDGE_TAIL_TERMS) * (-0.5) ** j
    alphas = p - j
    betas = -p - j

    count = order + 2
    rows_a = np.array([_rising_ratio_sequence(a, count) for a in alphas])
    rows_b = np.array([_rising_ratio_sequence(b, count) for b in betas])
    big_a = c @ rows_a
    big_b = d @ rows_b

    full_aa = sum(c[x] * c[y] * gauss_sum(alphas[x], alphas[y], 1.0) for x in j for y in j)
    full_bb = sum(d[x] * d[y] * gauss_sum(betas[x], betas[y], 1.0) for x in j for y in j)
    tail_aa = full_aa - float(np.sum(big_a[:order + 1] ** 2))
    tail_bb = full_bb - float(np.sum(big_b[:order + 1] ** 2))

    sign = (-1.0) ** (order + 1)
    cross = sign * big_a[order + 1] * big_b[order + 1]
    return tail_aa + tail_bb + cross, abs(cross) / order


def wedge_exit_time(p: float, tol: float = 1e-10, order: int = DEFAULT_ORDER) -> ExitTimeEstimate:
    """
    Expected exit time from w = 1 of the wedge |arg w| < πp/2.

    Finite iff p < 1/2, where it equals ½(sec πp - 1). For p >= 1/2 the
    partial sum is returned with status divergence-suspected.
    """
    coeffs = wedge_coefficients(p, p, order).coeffs.real
    head = float(np.sum(coeffs[1:] ** 2))
    if p >= 0.5:
        return ExitTimeEstimate(
            value=0.5 * head, method=EstimateMethod.SERIES, error=math.inf, count=order,
            status=EstimateStatus.DIVERGENCE_SUSPECTED,
            note=f"coefficients decay like m^{p - 1:.3f}; infinite for p >= 1/2",
        )
    tail, tail_error = _wedge_tail(p, order)
    value = 0.5 * (head + tail)
    error = 0.5 * tail_error + 1e-15 * order
    status = EstimateStatus.OK if error <= tol * max(1.0, value) else EstimateStatus.TRUNCATED
    return ExitTimeEstimate(
        value=value, method=EstimateMethod.SERIES, error=error, count=order, status=status,
        note="singular-expansion tail",
    )


def halfdisc_coefficients(order: int = DEFAULT_ORDER) -> PowerSeries:
    """Coefficients of i(1 + z - √2√(1+z²))/(z - 1), the map of the disc onto the upper half disc."""
    if order < 2:
        raise InvalidParameterError("order must be at least 2")
    numerator = 1.0 + PowerSeries.identity(order) - SQRT2 * binomial_series(0.5, order, stride=2)
    return -1j * numerator * geometric_series(1.0, order)


def halfdisc_inverse_map(z):
    """Principal-branch map of the unit disc onto the upper half of the unit disc."""
    z = np.asarray(z, dtype=complex)
    return 1j * (1.0 + z - SQRT2 * np.sqrt(1.0 + z * z)) / (z - 1.0)


def halfdisc_alternative_inverse(z):
    """The other square-root branch; it sends the unit disc outside the half disc."""
    z = np.asarray(z, dtype=complex)
    return 1j * (1.0 + z + SQRT2 * np.sqrt(1.0 + z * z)) / (z - 1.0)


def halfdisc_coefficient_squares(count: int) -> np.ndarray:
    """|a_m|² = 4[1 - S_{⌊m/2⌋}/√2]² for m = 1..count, with S_L the partial sums of C(1/2, ℓ)."""
    partial = np.cumsum(binomial_sequence(0.5, count // 2 + 1))
    m = np.arange(1, count + 1)
    return 4.0 * (1.0 - partial[m // 2] / SQRT2) ** 2


def halfdisc_tail_sum(count: int) -> float:
    """Σ_{m≥1} T_{⌊m/2⌋}² with T_L = √2 - S_L, which equals half the coefficient sum of the half disc."""
    tails = SQRT2 - np.cumsum(binomial_sequence(0.5, count // 2 + 1))
    m = np.arange(1, count + 1)
    return float(np.sum(tails[m // 2] ** 2))


def lens_coefficients(order: int = DEFAULT_ORDER) -> PowerSeries:
    """Coefficients of z(w) = (√(1+w²) - 1)/w = Σ_ℓ C(1/2, ℓ+1) w^(2ℓ+1)."""
    if order < 1:
        raise InvalidParameterError("order must be at least 1")
    root = binomial_series(0.5, order + 1, stride=2)
    return (root - 1.0).divide_by_z(1)


def lens_forward_map(z):
    """w = 2z/(1 - z²), the map of the lens onto the unit disc."""
    zz = np.asarray(z, dtype=complex)
    if np.any(np.abs(zz * zz - 1.0) == 0):
        raise InvalidParameterError("lens map is singular at z = ±1")
    return 2.0 * zz / (1.0 - zz * zz)


def lens_inverse_map(w):
    """z(w) = (-1 + √(1+w²))/w, principal branch, with z(0) = 0."""
    ww = np.asarray(w, dtype=complex)
    safe = np.where(ww == 0, 1.0, ww)
    return np.where(ww == 0, 0.0, (-1.0 + np.sqrt(1.0 + ww * ww)) / safe)


def lens_family_coefficients(p: float, order: int = DEFAULT_ORDER) -> PowerSeries:
    """Coefficients of i[(1+z)^p - (1-z)^p]/[(1+z)^p + (1-z)^p]; arcs meet at angle πp."""
    if not 0 < p <= 1:
        raise InvalidParameterError(f"lens family parameter must lie in (0, 1], got {p}")
    plus = binomial_series(p, order)
    minus = binomial_series(p, order, scale=-1.0)
    return 1j * (plus - minus) / (plus + minus)


def lens_family_exit_time(p: float, tol: float = 1e-10, order: int = DEFAULT_ORDER) -> ExitTimeEstimate:
    """Exit time from the centre of the lens-family member p; p = 1 is the unit disc."""
    return coefficient_exit_time(lens_family_coefficients(p, order), tol)


def disc_coefficients(r0: float, z0: complex, order: int = DEFAULT_ORDER) -> PowerSeries:
    """Möbius map r0(z + c)/(1 + c̄z), c = z0/r0, of the unit disc onto Disc{r0} sending 0 to z0."""
    c = complex(z0) / r0
    if abs(c) >= 1.0:
        raise PreconditionError(f"point {z0} is not inside the disc of radius {r0}")
    n = np.arange(1, order + 1)
    coeffs = np.empty(order + 1, dtype=complex)
    coeffs[0] = r0 * c
    coeffs[1:] = r0 * (1.0 - abs(c) ** 2) * (-np.conj(c)) ** (n - 1)
    return PowerSeries(coeffs)


def koebe_coefficients(order: int = DEFAULT_ORDER) -> PowerSeries:
    """Koebe function z/(1-z)², aₙ = n."""
    return PowerSeries(np.arange(order + 1, dtype=float))


def polygon_coefficients(m: int, order: int = DEFAULT_ORDER) -> PowerSeries:
    """Schwarz–Christoffel map ∫(1 - z^m)^(-2/m) onto the regular m-gon of circumradius 1."""
    if m < 3:
        raise InvalidParameterError(f"a polygon needs m >= 3, got {m}")
    raw = binomial_series(-2.0 / m, order, stride=m, scale=-1.0).integral()
    return raw / (beta(1.0 / m, 1.0 - 2.0 / m) / m)


def mgon_exit_time(m: int, tol: float = 1e-12, max_terms: int = 10 ** 6) -> ExitTimeEstimate:
    """
    Exit time from the centre of the regular m-gon inscribed in the unit circle,
    m²/(2B²(1/m, 1-2/m)) · ₄F₃(1/m, 1/m, 2/m, 2/m; 1+1/m, 1+1/m, 1; 1).
    """
    if m < 3:
        raise InvalidParameterError(f"a polygon needs m >= 3, got {m}")
    inv = 1.0 / m
    params = HyperParams((inv, inv, 2 * inv, 2 * inv), (1 + inv, 1 + inv, 1.0), 1.0)
    series = float(pfq(params, tol=tol, max_terms=max_terms))
    value = m * m / (2.0 * beta(inv, 1.0 - 2 * inv) ** 2) * series
    return ExitTimeEstimate(
        value=value, method=EstimateMethod.CLOSED, error=tol * value, note="4F3 at unit argument"
    )
