"""
Generalized hypergeometric series ₚF_q(a; b; x).

Terms are generated from the term-ratio recurrence in numpy blocks. Three
regimes are handled:

* terminating series (an upper parameter is a nonpositive integer): exact
  finite sum;
* |x| < 1, or p ≤ q: plain summation with the three-consecutive-terms stop rule;
* p = q + 1 at x = 1: tail-corrected partial sums on a doubling sequence with
  Richardson extrapolation; at x = -1: repeated averaging of partial sums.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple, Union

import numpy as np
from scipy.special import comb

from ..errors import ConvergenceError, DivergentSeriesError, InvalidParameterError

logger = logging.getLogger(__name__)

Number = Union[float, complex]

BLOCK = 2048
STOP_RUN = 3
AVERAGING_LEVELS = 24
UNIT_FIRST_CHECKPOINT = 64
UNIT_EXTRAPOLATION_LEVELS = 8


def _nonpositive_integer(value: float) -> bool:
    return value <= 0 and float(value).is_integer()


@dataclass(frozen=True)
class HyperParams:
    """Parameters and argument of ₚF_q(a₁..a_p; b₁..b_q; x)."""

    upper: Tuple[float, ...]
    lower: Tuple[float, ...]
    argument: Number
    terminating_index: Optional[int] = field(init=False, default=None)

    def __post_init__(self):
        object.__setattr__(self, "upper", tuple(float(a) for a in self.upper))
        object.__setattr__(self, "lower", tuple(float(b) for b in self.lower))
        if len(self.upper) > len(self.lower) + 1:
            raise InvalidParameterError(
                f"pFq needs p <= q + 1, got p={len(self.upper)}, q={len(self.lower)}"
            )

        stops = [int(-a) for a in self.upper if _nonpositive_integer(a)]
        terminating = min(stops) if stops else None
        object.__setattr__(self, "terminating_index", terminating)

        for b in self.lower:
            if not _nonpositive_integer(b):
                continue
            if terminating is None or -b < terminating:
                raise InvalidParameterError(
                    f"lower parameter {b} is a nonpositive integer reached before the series terminates"
                )

    @property
    def p(self) -> int:
        return len(self.upper)

    @property
    def q(self) -> int:
        return len(self.lower)

    @property
    def is_complex(self) -> bool:
        return isinstance(self.argument, complex) and self.argument.imag != 0.0

    @property
    def excess(self) -> float:
        """s = 1 + Σb − Σa; terms behave like k^(-s) when p = q + 1 and |x| = 1."""
        return 1.0 + sum(self.lower) - sum(self.upper)


def _ratios(params: HyperParams, start: int, count: int, x: Number) -> np.ndarray:
    """Term ratios t_{k+1}/t_k for k = start .. start+count-1."""
    k = np.arange(start, start + count, dtype=float)
    num = np.ones(count)
    den = k + 1.0
    for a in params.upper:
        num = num * (a + k)
    for b in params.lower:
        den = den * (b + k)
    return (num / den) * x


def _block_terms(params: HyperParams, first: Number, start: int, count: int, x: Number) -> np.ndarray:
    """Terms t_start .. t_{start+count-1} given t_start."""
    dtype = complex if isinstance(first, complex) or isinstance(x, complex) else float
    terms = np.empty(count, dtype=dtype)
    terms[0] = first
    if count > 1:
        terms[1:] = first * np.cumprod(_ratios(params, start, count - 1, x))
    return terms


def _first_run_end(ok: np.ndarray, carry: int, need: int) -> Tuple[Optional[int], int]:
    """Index where a run of `need` consecutive True values completes, plus the carried run length."""
    n = ok.size
    idx = np.arange(n)
    last_false = np.maximum.accumulate(np.where(~ok, idx, -1))
    run = np.where(last_false < 0, idx + 1 + carry, idx - last_false)
    hits = np.flatnonzero(run >= need)
    if hits.size:
        return int(hits[0]), 0
    return None, int(run[-1]) if n else carry


def _finish(value: Number, params: HyperParams) -> Number:
    if params.is_complex:
        return complex(value)
    return float(np.real(value))


def _terminating_sum(params: HyperParams, x: Number) -> Number:
    count = params.terminating_index + 1
    terms = _block_terms(params, 1.0, 0, count, x)
    return _finish(np.sum(terms), params)


def _direct_sum(params: HyperParams, x: Number, tol: float, max_terms: int) -> Number:
    total: Number = 0.0
    first: Number = 1.0
    start = 0
    carry = 0
    while start < max_terms:
        count = min(BLOCK, max_terms - start)
        terms = _block_terms(params, first, start, count + 1, x)
        partial = total + np.cumsum(terms[:-1])
        ok = np.abs(terms[:-1]) <= tol * np.abs(partial)
        hit, carry = _first_run_end(ok, carry, STOP_RUN)
        if hit is not None:
            return _finish(partial[hit], params)
        total = partial[-1]
        first = terms[-1]
        start += count
        if first == 0:
            return _finish(total, params)
    raise ConvergenceError(
        f"pFq did not converge within {max_terms} terms", partial=total, terms=max_terms
    )


def _unit_tail_factor(params: HyperParams, k: int) -> float:
    """Asymptotic ratio T_k / t_k of the tail Σ_{j≥k} t_j to its first term at x = 1."""
    s = params.excess
    lower_all = list(params.lower) + [1.0]
    gamma_coef = 0.5 * (s + sum(a * a for a in params.upper) - sum(b * b for b in lower_all))
    return k / (s - 1.0) + 0.5 - gamma_coef / (s * (s - 1.0))


def _unit_sum(params: HyperParams, tol: float, max_terms: int) -> Number:
    """
    Sum at x = 1 from tail-corrected partial sums at K, 2K, 4K, ...

    The corrected sums S_K + t_K·T(K) differ from the limit by an expansion in
    K^(-s), K^(-s-1), ...; Richardson elimination of those exponents on the
    doubling sequence gives the value, and the change between consecutive
    diagonal entries is the error estimate.
    """
    s = params.excess
    if s <= 1.0:
        raise DivergentSeriesError(
            f"pFq at x=1 diverges: sum(lower) - sum(upper) = {s - 1.0} <= 0"
        )
    scale = 1.0 + max(abs(v) for v in params.upper + params.lower + (1.0,))
    checkpoint = max(int(16 * scale), UNIT_FIRST_CHECKPOINT)

    chunks = []
    first = 1.0
    start = 0
    table: List[List[float]] = []
    previous: Optional[float] = None
    while checkpoint <= max_terms:
        terms = _block_terms(params, first, start, checkpoint - start + 1, 1.0)
        chunks.append(math.fsum(terms[:-1]))
        first = float(terms[-1])
        start = checkpoint
        total = math.fsum(chunks)
        if first == 0.0:
            return _finish(total, params)

        row = [total + first * _unit_tail_factor(params, start)]
        for j in range(min(len(table), UNIT_EXTRAPOLATION_LEVELS)):
            factor = 2.0 ** (-s - j)
            row.append((row[j] - factor * table[-1][j]) / (1.0 - factor))
        table.append(row)

        estimate = row[-1]
        if previous is not None and abs(estimate - previous) <= tol * abs(estimate):
            logger.debug(
                f"unit-argument pFq converged after {start} terms, "
                f"{len(row) - 1} extrapolation levels, change {abs(estimate - previous):.3e}"
            )
            return _finish(estimate, params)
        previous = estimate
        checkpoint *= 2
    raise ConvergenceError(
        f"pFq at x=1 did not reach tol={tol} within {max_terms} terms",
        partial=previous,
        terms=max_terms,
    )



def _averaged(partials: np.ndarray) -> float:
    levels = partials.size - 1
    weights = comb(levels, np.arange(levels + 1)) / 2.0 ** levels
    return float(np.dot(weights, partials))


def _alternating_sum(params: HyperParams, tol: float, max_terms: int) -> Number:
    if params.excess <= 0.0:
        raise DivergentSeriesError(
            f"pFq at x=-1 diverges: sum(lower) - sum(upper) = {params.excess - 1.0} <= -1"
        )
    scale = 1.0 + max(abs(v) for v in params.upper + params.lower + (1.0,))
    count = max(128, int(4 * scale))
    previous: Optional[float] = None
    while count <= max_terms:
        terms = _block_terms(params, 1.0, 0, count, -1.0)
        partials = np.cumsum(terms)
        estimate = _averaged(partials[-(AVERAGING_LEVELS + 1):])
        if previous is not None and abs(estimate - previous) <= tol * max(abs(estimate), 1e-300):
            return _finish(estimate, params)
        previous = estimate
        count *= 2
    raise ConvergenceError(
        f"pFq at x=-1 did not reach tol={tol} within {max_terms} terms",
        partial=previous,
        terms=max_terms,
    )


def pfq(params: HyperParams, tol: float = 1e-14, max_terms: int = 10 ** 6) -> Number:
    """
    Evaluate ₚF_q(a; b; x) by direct summation.

    Args:
        params: Upper/lower parameters and argument
        tol: Relative stopping tolerance
        max_terms: Hard cap on the number of terms

    Returns:
        The series value, real unless the argument is complex
    """
    x = params.argument
    if params.terminating_index is not None:
        return _terminating_sum(params, x)
    if x == 0:
        return _finish(1.0, params)
    if params.p <= params.q or abs(x) < 1.0:
        return _direct_sum(params, x, tol, max_terms)
    if abs(x) > 1.0:
        raise InvalidParameterError(f"pFq with p = q + 1 is not defined by its series at |x|={abs(x)} > 1")
    if x == 1:
        return _unit_sum(params, tol, max_terms)
    if x == -1:
        return _alternating_sum(params, tol, max_terms)
    raise InvalidParameterError(f"pFq on the unit circle is only supported at x = ±1, got {x}")


def hyp2f1(a: float, b: float, c: float, x: Number, tol: float = 1e-14, max_terms: int = 10 ** 6) -> Number:
    """Gauss hypergeometric function ₂F₁(a, b; c; x)."""
    return pfq(HyperParams((a, b), (c,), x), tol=tol, max_terms=max_terms)
