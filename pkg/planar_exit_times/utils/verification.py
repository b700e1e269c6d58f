"""
Identity suite behind the `verify` command: each check recomputes a known
identity through two independent routes and compares the residual against a
fixed tolerance.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional

import numpy as np
from scipy import integrate

from ..closedform import rectangle_u, square_center_exit_time
from ..conformal import (
    halfdisc_coefficient_squares, halfdisc_coefficients, halfdisc_tail_sum, coefficient_exit_time,
    lens_coefficients, mgon_exit_time, wedge_coefficient_closed, wedge_coefficients, wedge_exit_time,
)
from ..greenfn import (
    angular_dilog_integral, dilog_moment_integral, dilog_reciprocal_moment_integral,
    disc_exit_time_via_green, halfdisc_exit_time, log_cosine_integral,
)
from ..monitoring.metrics import MetricsCollector, RunLogger
from ..schemas.models import EstimateStatus, PolarPoint, SquareForm
from ..specfun import (
    AppellParams, alternating_cubic_closed, alternating_cubic_sum, appell_f1, cot_partial_fraction,
    dilog, gamma, gauss_sum, hyp2f1, sech_partial_fraction, tan_partial_fraction,
)

logger = logging.getLogger(__name__)

HALFDISC_VALUE = 2.0 * (math.sqrt(2.0) - 1.0 - 1.0 / math.pi)
LENS_VALUE = 2.0 / math.pi - 0.5
FD_STEP = 1e-5


@dataclass
class CheckResult:
    """Outcome of one identity check."""
    name: str
    passed: bool
    residual: float
    tolerance: float
    note: Optional[str] = None
    known_issue: bool = False


def _relative(value: float, target: float) -> float:
    return abs(value - target) / max(abs(target), 1e-300)


def _mixed(value: float, target: float) -> float:
    return abs(value - target) / max(abs(target), 1.0)


def _quad_complex(func: Callable[[float], complex], lo: float, hi: float) -> complex:
    real, _ = integrate.quad(lambda s: func(s).real, lo, hi, epsabs=1e-14, epsrel=1e-13, limit=200)
    imag, _ = integrate.quad(lambda s: func(s).imag, lo, hi, epsabs=1e-14, epsrel=1e-13, limit=200)
    return complex(real, imag)


class IdentityChecker:
    """Runs the identity suite and reports one CheckResult per identity."""

    def __init__(self, metrics: Optional[MetricsCollector] = None, run_logger: Optional[RunLogger] = None):
        self.metrics = metrics
        self.run_logger = run_logger
        self.checks = self._initialize_checks()

    def _initialize_checks(self) -> Dict[str, Callable[[], CheckResult]]:
        """Name → check function, in report order."""
        return {
            "gauss-summation": self._check_gauss_summation,
            "appell-reductions": self._check_appell_reductions,
            "wedge-series": self._check_wedge_series,
            "wedge-quarter-plane": self._check_wedge_quarter,
            "wedge-divergence": self._check_wedge_divergence,
            "wedge-coefficient-form": self._check_wedge_coefficient_form,
            "halfdisc-series": self._check_halfdisc_series,
            "halfdisc-coefficient-squares": self._check_halfdisc_squares,
            "halfdisc-tail-sum": self._check_halfdisc_tail_sum,
            "halfdisc-green": self._check_halfdisc_green,
            "disc-green": self._check_disc_green,
            "lens-generating-function": self._check_lens_generating_function,
            "lens-centre": self._check_lens_centre,
            "triangle-centre": self._check_triangle_centre,
            "partial-fractions": self._check_partial_fractions,
            "alternating-cubic-sum": self._check_alternating_cubic,
            "square-forms": self._check_square_forms,
            "log-cosine-integral": self._check_log_cosine_integral,
            "angular-dilog-integral": self._check_angular_dilog_integral,
            "dilog-moment-integral": self._check_dilog_moment_integral,
            "dilog-reciprocal-moment-integral": self._check_dilog_reciprocal_moment_integral,
        }

    def run_check(self, name: str) -> CheckResult:
        """
        Run a single named check.

        Exceptions raised by the check are reported as a failed result.
        """
        if name not in self.checks:
            raise KeyError(f"Unknown check '{name}'")
        try:
            result = self.checks[name]()
        except Exception as e:
            logger.error(f"Check '{name}' raised: {e}")
            result = CheckResult(name=name, passed=False, residual=math.nan, tolerance=0.0, note=str(e))

        if self.run_logger is not None:
            self.run_logger.log_check(result.name, result.passed, result.residual, result.tolerance)
        if self.metrics is not None:
            self.metrics.increment_counter("verify.checks", labels={"passed": str(result.passed).lower()})
        return result

    def run_all(self, names: Optional[Iterable[str]] = None) -> List[CheckResult]:
        """Run the given checks, or all of them."""
        return [self.run_check(name) for name in (names or self.checks)]

    @staticmethod
    def all_passed(results: Iterable[CheckResult]) -> bool:
        """True when every check passed; a known-issue annotation does not waive a failure."""
        return all(r.passed for r in results)

    @staticmethod
    def _result(name: str, residual: float, tolerance: float, note: Optional[str] = None,
                known_issue: bool = False) -> CheckResult:
        passed = bool(np.isfinite(residual) and residual <= tolerance)
        return CheckResult(name=name, passed=passed, residual=float(residual), tolerance=tolerance,
                           note=note, known_issue=known_issue)

    def _antiderivative_result(self, name: str, definite: List[float], slopes: List[float]) -> CheckResult:
        """Definite integrals against quadrature at 1e-9, derivatives against the integrand at 1e-6."""
        result = self._result(name, max(definite), 1e-9, f"max derivative residual {max(slopes):.2e}")
        result.passed = result.passed and max(slopes) <= 1e-6
        return result

    # Special functions

    def _check_gauss_summation(self) -> CheckResult:
        residual = max(
            _relative(float(hyp2f1(p, p, 1.0, 1.0)), gamma(1.0 - 2.0 * p) / gamma(1.0 - p) ** 2)
            for p in (0.1, 0.2, 0.3, 0.4)
        )
        return self._result("gauss-summation", residual, 1e-9, "2F1(p,p;1;1) = Γ(1-2p)/Γ(1-p)²")

    def _check_appell_reductions(self) -> CheckResult:
        a, b1, b2, c, x = 1.0 / 3.0, 0.25, 0.2, 2.0, 0.5
        diagonal = appell_f1(AppellParams(a, b1, b2, c, x, x))
        unit = appell_f1(AppellParams(a, b1, b2, c, x, 1.0))
        residual = max(
            _relative(diagonal, float(hyp2f1(a, b1 + b2, c, x))),
            _relative(unit, gauss_sum(a, b2, c) * float(hyp2f1(a, b1, c - b2, x))),
        )
        return self._result("appell-reductions", residual, 1e-9, "F1 at y = x and at y = 1")

    def _check_partial_fractions(self) -> CheckResult:
        residuals = []
        for x in (0.3, 0.7, 2.5):
            residuals.append(_mixed(tan_partial_fraction(x), math.tan(math.pi * x / 2.0)))
        for x in (0.3, 1.0, 2.5):
            residuals.append(_mixed(cot_partial_fraction(x), 1.0 / math.tan(math.pi * x / 2.0)))
            residuals.append(_mixed(sech_partial_fraction(x), 1.0 / math.cosh(math.pi * x / 2.0)))
        return self._result("partial-fractions", max(residuals), 1e-10, "tan, cot and sech expansions")

    def _check_alternating_cubic(self) -> CheckResult:
        residual = max(
            _relative(alternating_cubic_sum(x), alternating_cubic_closed(x)) for x in (0.5, 1.0, 2.0)
        )
        return self._result("alternating-cubic-sum", residual, 1e-10)

    # Conformal series

    def _check_wedge_series(self) -> CheckResult:
        residual = max(
            _relative(wedge_exit_time(p).value, 0.5 * (1.0 / math.cos(math.pi * p) - 1.0))
            for p in (0.1, 0.25, 0.4)
        )
        return self._result("wedge-series", residual, 1e-6, "½Σa² = ½(sec πp - 1)")

    def _check_wedge_quarter(self) -> CheckResult:
        total = 1.0 + 2.0 * wedge_exit_time(0.25).value
        return self._result("wedge-quarter-plane", _relative(total, math.sqrt(2.0)), 1e-6, "Σ_{n≥0} a² = √2")

    def _check_wedge_divergence(self) -> CheckResult:
        estimate = wedge_exit_time(0.55)
        flagged = estimate.status == EstimateStatus.DIVERGENCE_SUSPECTED
        return CheckResult(name="wedge-divergence", passed=flagged, residual=0.0 if flagged else 1.0,
                           tolerance=0.0, note="p = 0.55 flagged divergent")

    def _check_wedge_coefficient_form(self) -> CheckResult:
        p = 0.3
        coeffs = wedge_coefficients(p, p, 30).coeffs.real
        residual = max(abs(wedge_coefficient_closed(p, p, m) - coeffs[m]) for m in range(31))
        return self._result("wedge-coefficient-form", residual, 1e-10, "hypergeometric coefficient form, q = p")

    def _check_halfdisc_series(self) -> CheckResult:
        value = coefficient_exit_time(halfdisc_coefficients()).value
        return self._result("halfdisc-series", abs(value - HALFDISC_VALUE), 1e-6, "2(√2 - 1 - 1/π)")

    def _check_halfdisc_squares(self) -> CheckResult:
        computed = np.abs(halfdisc_coefficients(60).coeffs[1:51]) ** 2
        residual = float(np.max(np.abs(computed - halfdisc_coefficient_squares(50))))
        return self._result("halfdisc-coefficient-squares", residual, 1e-12)

    def _check_halfdisc_tail_sum(self) -> CheckResult:
        residual = abs(halfdisc_tail_sum(1 << 14) - HALFDISC_VALUE)
        return self._result("halfdisc-tail-sum", residual, 1e-6)

    def _check_lens_generating_function(self) -> CheckResult:
        z = 0.5
        squares = np.abs(lens_coefficients(200).coeffs) ** 2
        partial = float(np.polyval(squares[::-1], z))
        closed = (-1.0 + float(hyp2f1(-0.5, -0.5, 1.0, z * z))) / z
        return self._result("lens-generating-function", abs(partial - closed), 1e-10, "Σ|a_n|² zⁿ at z = 1/2")

    def _check_lens_centre(self) -> CheckResult:
        value = coefficient_exit_time(lens_coefficients()).value
        return self._result(
            "lens-centre", abs(value - LENS_VALUE), 1e-8,
            "asserting 2/pi - 1/2; the alternative closed form 1/pi - 1/2 is negative and disagrees with the series",
            known_issue=True,
        )

    def _check_triangle_centre(self) -> CheckResult:
        return self._result("triangle-centre", _relative(mgon_exit_time(3).value, 1.0 / 6.0), 1e-6)

    def _check_square_forms(self) -> CheckResult:
        values = [square_center_exit_time(form) for form in SquareForm]
        half = 1.0 / math.sqrt(2.0)
        values.append(rectangle_u(0.0, 0.0, half, half))
        residual = max(values) - min(values)
        return self._result("square-forms", residual, 1e-6, "three centre forms and the rectangle series")

    # Green-function route

    def _check_halfdisc_green(self) -> CheckResult:
        pt = PolarPoint(r=math.sqrt(2.0) - 1.0, theta=math.pi / 2.0)
        residual = abs(halfdisc_exit_time(pt).value - HALFDISC_VALUE)
        return self._result("halfdisc-green", residual, 1e-4)

    def _check_disc_green(self) -> CheckResult:
        residual = max(abs(disc_exit_time_via_green(r) - 0.5 * (1.0 - r * r)) for r in (0.0, 0.3, 0.8))
        return self._result("disc-green", residual, 1e-10)

    def _check_log_cosine_integral(self) -> CheckResult:
        residuals = []
        for a, b, n in ((2.0, 1.0, 1), (1.0, 3.0, 2), (0.5, 0.2, 1)):
            numeric, _ = integrate.quad(
                lambda x: math.log(a * a - 2.0 * a * b * math.cos(x) + b * b),
                0.0, n * math.pi, epsabs=1e-13, epsrel=1e-13, limit=200,
            )
            residuals.append(abs(numeric - log_cosine_integral(a, b, n)))
        return self._result("log-cosine-integral", max(residuals), 1e-10)

    def _check_angular_dilog_integral(self) -> CheckResult:
        residuals = []
        for r in (0.5, 0.8, 1.0):
            for fraction in (0.1, 0.4, 0.7):
                rho = fraction * r
                for theta in (0.3, 1.2, 2.5):
                    for sign in (1, -1):
                        numeric, _ = integrate.quad(
                            lambda phi: math.log(r * r + rho * rho - 2.0 * r * rho * math.cos(theta - sign * phi)),
                            0.0, math.pi, epsabs=1e-13, epsrel=1e-13, limit=200,
                        )
                        residuals.append(abs(numeric - angular_dilog_integral(r, rho, theta, sign)))
        return self._result("angular-dilog-integral", max(residuals), 1e-10, "3x3x3 grid, both signs")

    def _check_dilog_moment_integral(self) -> CheckResult:
        definite_residuals, slope_residuals = [], []
        rho = 0.9
        for c in (0.5, -0.8, complex(0.6, 0.3)):
            def integrand(s, c=c):
                return s * complex(dilog(c * s))

            definite = _quad_complex(integrand, 0.0, rho)
            definite_residuals.append(abs(complex(dilog_moment_integral(c, rho)) - definite))
            slope = (complex(dilog_moment_integral(c, rho + FD_STEP))
                     - complex(dilog_moment_integral(c, rho - FD_STEP))) / (2.0 * FD_STEP)
            slope_residuals.append(abs(slope - integrand(rho)))
        return self._antiderivative_result("dilog-moment-integral", definite_residuals, slope_residuals)

    def _check_dilog_reciprocal_moment_integral(self) -> CheckResult:
        definite_residuals, slope_residuals = [], []
        lo, hi, mid = 0.5, 0.9, 0.7
        for t in (0.3, -0.4, complex(0.2, 0.2)):
            def integrand(s, t=t):
                return s * complex(dilog(t / s))

            definite = _quad_complex(integrand, lo, hi)
            closed = complex(dilog_reciprocal_moment_integral(t, hi)) - complex(dilog_reciprocal_moment_integral(t, lo))
            definite_residuals.append(abs(closed - definite))
            slope = (complex(dilog_reciprocal_moment_integral(t, mid + FD_STEP))
                     - complex(dilog_reciprocal_moment_integral(t, mid - FD_STEP))) / (2.0 * FD_STEP)
            slope_residuals.append(abs(slope - integrand(mid)))
        return self._antiderivative_result("dilog-reciprocal-moment-integral", definite_residuals, slope_residuals)
