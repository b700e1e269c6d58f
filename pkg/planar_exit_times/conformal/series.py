"""
Truncated Maclaurin series of conformal maps and the exit-time functional
E_{f(0)}[τ] = ½ Σ_{n≥1} |aₙ|².
"""

import logging
import math
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np
from scipy.signal import fftconvolve
from scipy.special import zeta

from ..errors import InvalidParameterError
from ..schemas.models import EstimateMethod, EstimateStatus, ExitTimeEstimate
from ..specfun import binomial_sequence

logger = logging.getLogger(__name__)

Scalar = Union[int, float, complex]

DIRECT_CONVOLVE_MAX = 256
MONOTONE_WINDOW = 100
MIN_FIT_POINTS = 8


@dataclass(frozen=True, eq=False)
class PowerSeries:
    """Coefficients a₀..a_M of Σ aₙ zⁿ, truncated at order M."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex)
        if c.ndim != 1 or c.size < 2:
            raise InvalidParameterError("a power series needs at least a₀ and a₁ (M >= 1)")
        if not np.all(np.isfinite(c)):
            raise InvalidParameterError("power series coefficients must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    def __len__(self) -> int:
        return self.coeffs.size

    def __getitem__(self, n: int) -> complex:
        return complex(self.coeffs[n])

    def _aligned(self, other: "PowerSeries") -> Tuple[np.ndarray, np.ndarray]:
        m = min(self.order, other.order) + 1
        return self.coeffs[:m], other.coeffs[:m]

    def __add__(self, other):
        if isinstance(other, PowerSeries):
            a, b = self._aligned(other)
            return PowerSeries(a + b)
        c = self.coeffs.copy()
        c[0] += other
        return PowerSeries(c)

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries(-self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, PowerSeries):
            a, b = self._aligned(other)
            if a.size <= DIRECT_CONVOLVE_MAX:
                product = np.convolve(a, b)
            else:
                product = fftconvolve(a, b)
            return PowerSeries(product[:a.size])
        return PowerSeries(self.coeffs * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, PowerSeries):
            return self * other.reciprocal()
        return PowerSeries(self.coeffs / other)

    def reciprocal(self) -> "PowerSeries":
        """1/f by the recursion b₀ = 1/a₀, bₙ = -(1/a₀) Σ_{k=1..n} a_k b_{n-k}."""
        a = self.coeffs
        if a[0] == 0:
            raise InvalidParameterError("reciprocal needs a nonzero constant term")
        b = np.zeros_like(a)
        b[0] = 1.0 / a[0]
        for n in range(1, a.size):
            b[n] = -np.dot(a[1:n + 1], b[n - 1::-1]) / a[0]
        return PowerSeries(b)

    def substitute_power(self, n: int) -> "PowerSeries":
        """f(zⁿ), keeping the truncation order."""
        c = np.zeros_like(self.coeffs)
        src = self.coeffs[: self.order // n + 1]
        c[::n][: src.size] = src
        return PowerSeries(c)

    def divide_by_z(self, k: int = 1) -> "PowerSeries":
        """f(z)/z^k for a series whose first k coefficients vanish."""
        if np.any(self.coeffs[:k] != 0):
            raise InvalidParameterError(f"series is not divisible by z^{k}")
        return PowerSeries(self.coeffs[k:])

    def derivative(self) -> "PowerSeries":
        n = np.arange(1, self.coeffs.size)
        return PowerSeries(np.append(self.coeffs[1:] * n, 0.0))

    def integral(self) -> "PowerSeries":
        """Antiderivative vanishing at 0; the top coefficient is dropped to keep the order."""
        n = np.arange(1, self.coeffs.size)
        return PowerSeries(np.concatenate(([0.0], self.coeffs[:-1] / n)))

    def evaluate(self, w):
        """Value of the truncated polynomial at w (scalar or array)."""
        return np.polynomial.polynomial.polyval(w, self.coeffs)

    @classmethod
    def identity(cls, order: int = 1) -> "PowerSeries":
        c = np.zeros(order + 1, dtype=complex)
        c[1] = 1.0
        return cls(c)


def binomial_series(alpha: float, order: int, stride: int = 1, scale: Scalar = 1.0) -> PowerSeries:
    """(1 + scale·z^stride)^alpha truncated at z^order."""
    count = order // stride + 1
    c = np.zeros(order + 1, dtype=complex)
    c[::stride][:count] = binomial_sequence(alpha, count) * np.asarray(scale, dtype=complex) ** np.arange(count)
    return PowerSeries(c)


def geometric_series(ratio: Scalar, order: int) -> PowerSeries:
    """1/(1 - ratio·z) truncated at z^order."""
    return PowerSeries(np.asarray(ratio, dtype=complex) ** np.arange(order + 1))


def _nonzero_tail(coeffs: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Indices n ≥ 1 with aₙ ≠ 0 and the corresponding |aₙ|²."""
    squares = np.abs(coeffs) ** 2
    idx = np.nonzero(squares[1:] > 0)[0] + 1
    return idx, squares[idx]


def _fit_tail(idx: np.ndarray, squares: np.ndarray, order: int, stride: int):
    """
    Fit |aₙ|² over the last decade of nonzero indices by a power law C n^(-s)
    and by a geometric law C ρⁿ, keep the better fit and sum it beyond order.

    Returns:
        (tail, exponent or None, rms residual, model name)
    """
    window = idx >= max(idx[-1] // 10, 1)
    n = idx[window].astype(float)
    logs = np.log(squares[window])

    slope_p, icpt_p = np.polyfit(np.log(n), logs, 1)
    rms_p = float(np.sqrt(np.mean((icpt_p + slope_p * np.log(n) - logs) ** 2)))
    slope_g, icpt_g = np.polyfit(n, logs, 1)
    rms_g = float(np.sqrt(np.mean((icpt_g + slope_g * n - logs) ** 2)))

    start = idx[-1] + stride
    if rms_g < rms_p and slope_g < 0:
        ratio = math.exp(slope_g * stride)
        tail = math.exp(icpt_g + slope_g * start) / (1.0 - ratio)
        return tail, None, rms_g, "geometric"

    s = -slope_p
    if s <= 1.0:
        return math.inf, s, rms_p, "power"
    # Σ_{k≥0} C (start + k·stride)^(-s) = C stride^(-s) ζ(s, start/stride)
    tail = math.exp(icpt_p) * stride ** (-s) * float(zeta(s, start / stride))
    return tail, s, rms_p, "power"


def coefficient_exit_time(series: PowerSeries, tol: float = 1e-10) -> ExitTimeEstimate:
    """
    Expected exit time ½ Σ_{n≥1} |aₙ|² from the image of the origin.

    The truncated sum is completed with a fitted tail. The estimate is
    flagged divergence-suspected when the last MONOTONE_WINDOW nonzero
    |aₙ|² never decrease or the fitted power-law exponent is at most 1,
    and truncated when the tail uncertainty exceeds tol.

    Args:
        series: Maclaurin series of the map
        tol: Accepted uncertainty of the returned value

    Returns:
        ExitTimeEstimate with method "series"
    """
    idx, squares = _nonzero_tail(series.coeffs)
    head = 0.5 * float(np.sum(squares))
    order = series.order

    if idx.size == 0:
        return ExitTimeEstimate(value=0.0, method=EstimateMethod.SERIES, error=0.0, count=order)

    if idx.size >= MONOTONE_WINDOW and np.all(np.diff(squares[-MONOTONE_WINDOW:]) >= 0):
        logger.info(f"Series coefficients not decaying over the last {MONOTONE_WINDOW} terms")
        return ExitTimeEstimate(
            value=head, method=EstimateMethod.SERIES, error=math.inf, count=order,
            status=EstimateStatus.DIVERGENCE_SUSPECTED, note="coefficients do not decay",
        )

    stride = int(np.gcd.reduce(np.diff(idx))) if idx.size > 1 else 1
    if order - idx[-1] >= stride or np.count_nonzero(idx >= max(idx[-1] // 10, 1)) < MIN_FIT_POINTS:
        # polynomial map (or decay below underflow): nothing beyond the last coefficient
        return ExitTimeEstimate(value=head, method=EstimateMethod.SERIES, error=0.0, count=order)

    tail, exponent, rms, model = _fit_tail(idx, squares, order, stride)
    if not math.isfinite(tail):
        return ExitTimeEstimate(
            value=head, method=EstimateMethod.SERIES, error=math.inf, count=order,
            status=EstimateStatus.DIVERGENCE_SUSPECTED,
            note=f"|a_n|^2 decays like n^-{exponent:.3f}; the sum diverges",
        )

    value = head + 0.5 * tail
    error = 0.5 * tail * min(1.0, max(rms, 1e-3))
    note = f"{model} tail fit" + (f", exponent {exponent:.4f}" if exponent is not None else "")
    status = EstimateStatus.OK if error <= tol * max(1.0, value) else EstimateStatus.TRUNCATED
    logger.debug(f"Coefficient sum: head={head:.15g} tail={0.5 * tail:.3e} ({note})")
    return ExitTimeEstimate(
        value=value, method=EstimateMethod.SERIES, error=error, count=order, status=status, note=note
    )
