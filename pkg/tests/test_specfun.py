"""
Tests for the special-function kernel.
"""

import math

import numpy as np
import pytest

from planar_exit_times.errors import (
    ConvergenceError, DivergentSeriesError, InvalidParameterError, PoleError,
)
from planar_exit_times.specfun import (
    AppellParams, HyperParams, alternating_cubic_closed, alternating_cubic_sum, appell_f1,
    appell_f1_integral, appell_f1_series, beta, binomial, binomial_sequence, cot_partial_fraction,
    dilog, gamma, gauss_sum, hyp2f1, lgamma, pfq, pochhammer, sech_partial_fraction,
    tan_partial_fraction,
)


class TestGammaFamily:
    """Test Gamma, Beta, Pochhammer and binomial helpers."""

    def test_gamma_values(self):
        """Test Gamma at integers and half-integers."""
        assert gamma(5.0) == pytest.approx(24.0, rel=1e-14)
        assert gamma(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-14)
        assert gamma(-0.5) == pytest.approx(-2.0 * math.sqrt(math.pi), rel=1e-14)

    def test_gamma_poles(self):
        """Test that nonpositive integers are rejected."""
        for x in (0.0, -1.0, -7.0):
            with pytest.raises(PoleError):
                gamma(x)
        with pytest.raises(PoleError):
            lgamma(-2.0)

    def test_beta(self):
        """Test B(2, 3) = 1/12 and B(1/2, 1/2) = π."""
        assert beta(2.0, 3.0) == pytest.approx(1.0 / 12.0, rel=1e-13)
        assert beta(0.5, 0.5) == pytest.approx(math.pi, rel=1e-13)

    def test_pochhammer_and_binomial(self):
        """Test rising factorials and generalized binomials."""
        assert pochhammer(0.5, 3) == pytest.approx(0.5 * 1.5 * 2.5, rel=1e-14)
        assert pochhammer(3.0, 0) == 1.0
        assert binomial(0.5, 2) == pytest.approx(-0.125, rel=1e-14)
        np.testing.assert_allclose(binomial_sequence(3.0, 5), [1, 3, 3, 1, 0], atol=1e-15)

    def test_gauss_sum(self):
        """Test Gauss summation and its domain."""
        assert gauss_sum(1.0, 1.0, 3.0) == pytest.approx(2.0, rel=1e-13)
        with pytest.raises(InvalidParameterError):
            gauss_sum(1.0, 1.0, 2.0)


class TestHypergeometric:
    """Test the generalized hypergeometric series."""

    def test_logarithm(self):
        """Test ₂F₁(1, 1; 2; x) = -ln(1 - x)/x."""
        assert hyp2f1(1.0, 1.0, 2.0, 0.5) == pytest.approx(2.0 * math.log(2.0), rel=1e-13)

    def test_terminating(self):
        """Test ₂F₁(-2, 1; 1; x) = (1 - x)²."""
        assert hyp2f1(-2.0, 1.0, 1.0, 0.5) == pytest.approx(0.25, rel=1e-14)
        assert hyp2f1(-2.0, 1.0, 1.0, 3.0) == pytest.approx(4.0, rel=1e-14)

    def test_exponential(self):
        """Test ₀F₀(;;x) = eˣ."""
        assert pfq(HyperParams((), (), 1.5)) == pytest.approx(math.exp(1.5), rel=1e-13)

    def test_complex_argument(self):
        """Test that complex arguments give complex values."""
        x = complex(0.3, 0.4)
        value = hyp2f1(1.0, 1.0, 2.0, x)
        assert isinstance(value, complex)
        assert value == pytest.approx(-np.log(1.0 - x) / x, rel=1e-12)

    @pytest.mark.parametrize("p", [0.1, 0.2, 0.3, 0.4])
    def test_unit_argument_matches_gauss(self, p):
        """Test the x = 1 summation against Gauss summation, down to c - a - b = 0.2."""
        expected = gamma(1.0 - 2.0 * p) / gamma(1.0 - p) ** 2
        assert hyp2f1(p, p, 1.0, 1.0) == pytest.approx(expected, rel=1e-12)

    def test_unit_argument_slow_decay(self):
        """Test c - a - b = 0.05, where the terms fall off like k^(-1.05)."""
        a, b, c = 0.5, 0.45, 1.0
        assert hyp2f1(a, b, c, 1.0, tol=1e-11) == pytest.approx(gauss_sum(a, b, c), rel=1e-9)

    def test_unit_argument_dixon(self):
        """Test a ₃F₂ at x = 1 against Dixon's sum."""
        a, b, c = 0.5, 0.25, 0.25
        params = HyperParams((a, b, c), (1.0 + a - b, 1.0 + a - c), 1.0)
        expected = gamma(1.25) ** 3 * gamma(0.75) / gamma(1.5)
        assert pfq(params) == pytest.approx(expected, rel=1e-12)

    def test_alternating_unit_argument(self):
        """Test ₂F₁(1, 1; 2; -1) = ln 2."""
        assert hyp2f1(1.0, 1.0, 2.0, -1.0) == pytest.approx(math.log(2.0), rel=1e-9)

    def test_divergent_at_one(self):
        """Test that c - a - b <= 0 at x = 1 is reported as divergent."""
        with pytest.raises(DivergentSeriesError):
            hyp2f1(1.0, 1.0, 1.0, 1.0)
        assert issubclass(DivergentSeriesError, ConvergenceError)

    def test_outside_unit_disc(self):
        """Test that |x| > 1 is rejected for p = q + 1."""
        with pytest.raises(InvalidParameterError):
            hyp2f1(0.5, 0.5, 1.0, 1.5)

    def test_bad_lower_parameter(self):
        """Test that a nonpositive-integer lower parameter is rejected."""
        with pytest.raises(InvalidParameterError):
            HyperParams((0.5,), (-1.0,), 0.5)

    def test_too_many_upper_parameters(self):
        """Test that p > q + 1 is rejected."""
        with pytest.raises(InvalidParameterError):
            HyperParams((1.0, 1.0, 1.0), (1.0,), 0.5)


class TestAppell:
    """Test Appell F₁."""

    def test_reduces_to_gauss_at_zero(self):
        """Test F₁(a; b1, b2; c; x, 0) = ₂F₁(a, b1; c; x)."""
        params = AppellParams(0.5, 0.5, 0.5, 1.5, 0.3, 0.0)
        assert appell_f1(params) == pytest.approx(float(hyp2f1(0.5, 0.5, 1.5, 0.3)), rel=1e-10)

    def test_diagonal_reduction(self):
        """Test F₁(a; b1, b2; c; x, x) = ₂F₁(a, b1 + b2; c; x)."""
        params = AppellParams(1.0 / 3.0, 0.25, 0.2, 2.0, 0.5, 0.5)
        assert appell_f1(params) == pytest.approx(float(hyp2f1(1.0 / 3.0, 0.45, 2.0, 0.5)), rel=1e-9)

    def test_series_matches_integral_after_transformation(self):
        """Test the x < -1/2 transformation against the integral form."""
        params = AppellParams(0.2, 0.3, 0.1, 1.2, -1.0, 1.0)
        assert appell_f1_series(params) == pytest.approx(appell_f1_integral(params), rel=1e-9)

    def test_parameter_checks(self):
        """Test the argument and parameter ranges."""
        with pytest.raises(InvalidParameterError):
            AppellParams(0.5, 0.5, 0.5, 1.5, 1.0, 0.0)
        with pytest.raises(InvalidParameterError):
            AppellParams(0.5, 0.5, 0.5, -2.0, 0.1, 0.0)
        with pytest.raises(InvalidParameterError):
            AppellParams(0.5, 0.5, 1.0, 1.5, 0.1, 1.0)


class TestDilogarithm:
    """Test the complex dilogarithm."""

    def test_special_values(self):
        """Test Li₂ at 1, -1 and 1/2."""
        assert dilog(1.0) == pytest.approx(math.pi ** 2 / 6.0, abs=1e-15)
        assert dilog(-1.0).real == pytest.approx(-math.pi ** 2 / 12.0, abs=1e-14)
        expected = math.pi ** 2 / 12.0 - math.log(2.0) ** 2 / 2.0
        assert dilog(0.5).real == pytest.approx(expected, abs=1e-14)

    def test_power_series(self):
        """Test small arguments against the defining series."""
        z = complex(0.2, -0.1)
        n = np.arange(1, 80)
        assert dilog(z) == pytest.approx(complex(np.sum(z ** n / n ** 2)), abs=1e-15)

    def test_against_mpmath(self):
        """Test every evaluation branch against mpmath."""
        mpmath = pytest.importorskip("mpmath")
        points = [complex(0.9, 0.1), complex(-0.7, 0.6), complex(0.6, -0.79), complex(0.0, 1.0)]
        for z in points:
            expected = complex(mpmath.polylog(2, z))
            assert dilog(z) == pytest.approx(expected, abs=1e-13)

    def test_array_shape(self):
        """Test that arrays keep their shape."""
        values = dilog(np.zeros((2, 3)))
        assert values.shape == (2, 3)
        assert np.all(values == 0)

    def test_outside_disc(self):
        """Test that |z| > 1 is rejected."""
        with pytest.raises(InvalidParameterError):
            dilog(1.5)


class TestPartialFractions:
    """Test the partial-fraction expansions."""

    @pytest.mark.parametrize("x", [0.3, 0.7, 2.5])
    def test_tan(self, x):
        """Test the tangent expansion away from its poles."""
        assert tan_partial_fraction(x) == pytest.approx(math.tan(math.pi * x / 2.0), rel=1e-11)

    def test_tan_pole(self):
        """Test that odd integers are rejected."""
        with pytest.raises(InvalidParameterError):
            tan_partial_fraction(1.0)

    @pytest.mark.parametrize("x", [0.3, 1.0, 2.5])
    def test_cot(self, x):
        """Test the cotangent expansion."""
        assert cot_partial_fraction(x) == pytest.approx(1.0 / math.tan(math.pi * x / 2.0), rel=1e-10, abs=1e-12)

    def test_cot_pole(self):
        """Test that even integers are rejected."""
        with pytest.raises(InvalidParameterError):
            cot_partial_fraction(2.0)

    @pytest.mark.parametrize("x", [0.0, 1.3, 4.0])
    def test_sech(self, x):
        """Test the hyperbolic secant expansion."""
        assert sech_partial_fraction(x) == pytest.approx(1.0 / math.cosh(math.pi * x / 2.0), rel=1e-10)

    @pytest.mark.parametrize("x", [0.0, 0.5, 2.0])
    def test_alternating_cubic(self, x):
        """Test the alternating cubic sum against its closed form."""
        assert alternating_cubic_sum(x) == pytest.approx(alternating_cubic_closed(x), rel=1e-10)

    def test_alternating_cubic_at_zero(self):
        """Test Σ (-1)^m/(2m-1)³ = -π³/32."""
        assert alternating_cubic_closed(0.0) == pytest.approx(-math.pi ** 3 / 32.0, rel=1e-15)


if __name__ == "__main__":
    pytest.main([__file__])
