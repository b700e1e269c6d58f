"""
Three equivalent expressions for the expected exit time from the centre of the
square inscribed in the unit circle (half-side 1/√2).
"""

import logging
import math
from typing import Union

import numpy as np

from ..conformal.maps import mgon_exit_time
from ..errors import ConvergenceError, InvalidParameterError
from ..schemas.models import SquareForm

logger = logging.getLogger(__name__)

DOUBLE_SINE_MIN_TERMS = 200
DOUBLE_SINE_BLOCK = 512


def _single_series(tol: float) -> float:
    """½ - (16/π³) Σ (-1)^k sech((k + ½)π) / (2k + 1)³."""
    count = int(math.ceil(-math.log(tol) / math.pi)) + 2
    k = np.arange(count)
    odd = 2.0 * k + 1.0
    # sech(x) = 2e^{-x}/(1 + e^{-2x}), finite for every k
    sech = 2.0 * np.exp(-odd * math.pi / 2.0) / (1.0 + np.exp(-odd * math.pi))
    return 0.5 - 16.0 / math.pi ** 3 * float(np.sum((-1.0) ** k * sech / odd ** 3))


def _double_sine(tol: float) -> float:
    """
    (64/π⁴) Σ_{m,n odd} (-1)^((m+n-2)/2) / (mn(m² + n²)).

    Both alternating indices are truncated at the same count and the last
    retained term of each is halved, i.e. the two final partial sums are
    averaged.
    """
    count = max(DOUBLE_SINE_MIN_TERMS, int(math.ceil(2.0 * tol ** (-1.0 / 3.0))))
    odd = 2.0 * np.arange(count) + 1.0
    weights = (-1.0) ** np.arange(count)
    weights[-1] *= 0.5
    total = 0.0
    for start in range(0, count, DOUBLE_SINE_BLOCK):
        m = odd[start:start + DOUBLE_SINE_BLOCK, None]
        block = weights[start:start + DOUBLE_SINE_BLOCK, None] * weights[None, :]
        total += float(np.sum(block / (m * odd[None, :] * (m * m + odd[None, :] ** 2))))
    logger.debug(f"Double sine series summed over {count}x{count} odd indices")
    return 64.0 / math.pi ** 4 * total


def square_center_exit_time(form: Union[SquareForm, str], tol: float = 1e-10) -> float:
    """
    Expected exit time from the centre of the square with vertices e^{i(π/4 + kπ/2)}.

    Args:
        form: hypergeometric (the m = 4 polygon formula), double_sine
            (eigenfunction expansion) or single_series (sech series)
        tol: Target accuracy

    Returns:
        The exit time, approximately 0.294685
    """
    try:
        form = SquareForm(form)
    except ValueError:
        raise InvalidParameterError(f"Unknown square form '{form}'")
    if not 0 < tol < 1:
        raise InvalidParameterError(f"tol must lie in (0, 1), got {tol}")

    if form == SquareForm.HYPERGEOMETRIC:
        value = mgon_exit_time(4, tol=min(tol, 1e-12)).value
    elif form == SquareForm.SINGLE_SERIES:
        value = _single_series(tol)
    else:
        value = _double_sine(tol)

    if not math.isfinite(value):
        raise ConvergenceError(f"square centre form {form.value} did not converge", partial=value)
    return value
