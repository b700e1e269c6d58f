"""
Tests for power-series arithmetic, the conformal-map coefficient engines and
the series exit-time functional.
"""

import math

import numpy as np
import pytest

from planar_exit_times.conformal import (
    PowerSeries, binomial_series, disc_coefficients, geometric_series, halfdisc_alternative_inverse,
    halfdisc_coefficient_squares, halfdisc_coefficients, halfdisc_inverse_map, halfdisc_tail_sum,
    koebe_coefficients, coefficient_exit_time, lens_coefficients, lens_family_exit_time, lens_forward_map,
    lens_inverse_map, mgon_exit_time, ngram_coefficients, ngram_exit_time, ngram_exit_time_direct,
    ngram_radii, ngram_vertex_radii_quadrature, polygon_coefficients, series_exit_time,
    wedge_coefficient_closed, wedge_coefficients, wedge_exit_time,
)
from planar_exit_times.errors import InvalidParameterError, PreconditionError
from planar_exit_times.schemas.models import (
    Disc, EstimateMethod, EstimateStatus, HalfDisc, Lens, NGram, Point2, Rectangle, RegularPolygon, Wedge,
)
from planar_exit_times.specfun import binomial_sequence

HALFDISC_VALUE = 2.0 * (math.sqrt(2.0) - 1.0 - 1.0 / math.pi)
LENS_VALUE = 2.0 / math.pi - 0.5


class TestPowerSeries:
    """Test truncated series arithmetic."""

    def test_product_and_reciprocal(self):
        """Test (1 + z)·1/(1 + z) = 1."""
        one_plus_z = binomial_series(1.0, 8)
        product = one_plus_z * one_plus_z.reciprocal()
        np.testing.assert_allclose(product.coeffs, np.eye(1, 9)[0], atol=1e-15)

    def test_fft_product_matches_direct(self):
        """Test that long products agree with the direct convolution."""
        a = geometric_series(0.5, 600)
        b = binomial_series(-0.5, 600, scale=-1.0)
        direct = np.convolve(a.coeffs, b.coeffs)[:601]
        np.testing.assert_allclose((a * b).coeffs, direct, atol=1e-13)

    def test_geometric(self):
        """Test that 1/(1 - z/2) equals the reciprocal of 1 - z/2."""
        series = PowerSeries(np.array([1.0, -0.5, 0.0, 0.0, 0.0]))
        np.testing.assert_allclose(series.reciprocal().coeffs, geometric_series(0.5, 4).coeffs, atol=1e-15)

    def test_substitute_and_divide(self):
        """Test f(z²) and division by z."""
        f = binomial_series(1.0, 6)
        np.testing.assert_allclose(f.substitute_power(2).coeffs.real, [1, 0, 1, 0, 0, 0, 0])
        np.testing.assert_allclose((f - 1.0).divide_by_z().coeffs.real, [1, 0, 0, 0, 0, 0])
        with pytest.raises(InvalidParameterError):
            f.divide_by_z()

    def test_derivative_and_integral(self):
        """Test that the integral inverts the derivative up to the dropped top term."""
        f = geometric_series(0.3, 10)
        g = f.derivative().integral()
        np.testing.assert_allclose(g.coeffs[1:10], f.coeffs[1:10], atol=1e-15)
        assert g.coeffs[0] == 0

    def test_validation(self):
        """Test that degenerate or non-finite coefficients are rejected."""
        with pytest.raises(InvalidParameterError):
            PowerSeries(np.array([1.0]))
        with pytest.raises(InvalidParameterError):
            PowerSeries(np.array([1.0, np.inf]))


class TestExitTimeFunctional:
    """Test ½Σ|aₙ|² and its status flags."""

    def test_polynomial_map(self):
        """Test the identity map: E = 1/2 exactly."""
        estimate = coefficient_exit_time(PowerSeries.identity(16))
        assert estimate.value == 0.5
        assert estimate.error == 0.0
        assert estimate.method == EstimateMethod.SERIES

    def test_koebe_diverges(self):
        """Test that the growing Koebe coefficients are flagged."""
        estimate = coefficient_exit_time(koebe_coefficients(512))
        assert estimate.status == EstimateStatus.DIVERGENCE_SUSPECTED
        assert not estimate.is_finite

    def test_slowly_decaying_power_law(self):
        """Test that |aₙ|² ~ n^(-1/2) is flagged divergent."""
        n = np.arange(2049, dtype=float)
        coeffs = np.concatenate(([0.0], n[1:] ** -0.25))
        estimate = coefficient_exit_time(PowerSeries(coeffs))
        assert estimate.status == EstimateStatus.DIVERGENCE_SUSPECTED

    def test_power_law_tail(self):
        """Test that the fitted tail completes Σ 1/n³ to ζ(3)."""
        n = np.arange(1025, dtype=float)
        coeffs = np.concatenate(([0.0], n[1:] ** -1.5))
        estimate = coefficient_exit_time(PowerSeries(coeffs), tol=1e-6)
        assert estimate.value == pytest.approx(0.5 * 1.2020569031595942, rel=1e-7)


class TestDiscAndWedge:
    """Test the disc Möbius maps and the wedge."""

    def test_disc_centre_and_offset(self):
        """Test E_z[τ] = (r0² - |z|²)/2 in the disc."""
        for r0, z in ((1.0, 0j), (2.0, 0.6 - 0.8j), (1.0, 0.9j)):
            estimate = coefficient_exit_time(disc_coefficients(r0, z))
            assert estimate.value == pytest.approx(0.5 * (r0 * r0 - abs(z) ** 2), rel=1e-12)

    def test_disc_outside(self):
        """Test that points outside the disc are rejected."""
        with pytest.raises(PreconditionError):
            disc_coefficients(1.0, 1.0 + 0j)

    @pytest.mark.parametrize("p", [0.1, 0.25, 0.4])
    def test_wedge_exit_time(self, p):
        """Test ½Σa² = ½(sec πp - 1)."""
        estimate = wedge_exit_time(p)
        assert estimate.value == pytest.approx(0.5 * (1.0 / math.cos(math.pi * p) - 1.0), rel=1e-6)
        assert estimate.is_finite

    def test_quarter_plane_sum(self):
        """Test Σ_{n≥0} aₙ² = √2 for p = 1/4."""
        assert 1.0 + 2.0 * wedge_exit_time(0.25).value == pytest.approx(math.sqrt(2.0), rel=1e-6)

    @pytest.mark.parametrize("p", [0.5, 0.75, 1.0])
    def test_wedge_divergence(self, p):
        """Test that p >= 1/2 is flagged divergent."""
        estimate = wedge_exit_time(p, order=512)
        assert estimate.status == EstimateStatus.DIVERGENCE_SUSPECTED
        assert math.isinf(estimate.error)

    def test_wedge_coefficients(self):
        """Test the first coefficients of (1+z)^p/(1-z)^p and the hypergeometric form."""
        p = 0.3
        coeffs = wedge_coefficients(p, p, 30).coeffs.real
        assert coeffs[0] == pytest.approx(1.0)
        assert coeffs[1] == pytest.approx(2.0 * p)
        assert coeffs[2] == pytest.approx(2.0 * p * p)
        for m in (0, 1, 5, 17, 30):
            assert wedge_coefficient_closed(p, p, m) == pytest.approx(coeffs[m], abs=1e-10)

    def test_wedge_coefficients_general_q(self):
        """Test that q != p gives (1+z)^q/(1-z)^p."""
        coeffs = wedge_coefficients(0.5, 1.0, 4).coeffs.real
        tail = binomial_series(-0.5, 4, scale=-1.0).coeffs.real
        np.testing.assert_allclose(coeffs, tail + np.concatenate(([0.0], tail[:-1])), atol=1e-15)

    def test_wedge_parameter_range(self):
        """Test that p outside (0, 1] is rejected."""
        with pytest.raises(InvalidParameterError):
            wedge_coefficients(1.5, 1.5, 10)
        with pytest.raises(InvalidParameterError):
            wedge_coefficients(0.0, 0.0, 10)


class TestHalfDisc:
    """Test the half-disc map."""

    def test_exit_time(self):
        """Test 2(√2 - 1 - 1/π) at i(√2 - 1)."""
        assert coefficient_exit_time(halfdisc_coefficients()).value == pytest.approx(HALFDISC_VALUE, abs=1e-6)

    def test_map_sends_origin(self):
        """Test f(0) = i(√2 - 1) and that the map lands inside the half disc."""
        assert complex(halfdisc_inverse_map(0.0)) == pytest.approx(1j * (math.sqrt(2.0) - 1.0))
        z = 0.7 * np.exp(1j * np.linspace(0.0, 2.0 * math.pi, 50))
        w = halfdisc_inverse_map(z)
        assert np.all(np.abs(w) < 1.0)
        assert np.all(w.imag > 0.0)

    def test_alternative_branch(self):
        """Test that the other square-root branch leaves the half disc."""
        assert abs(complex(halfdisc_alternative_inverse(0.0))) > 1.0

    def test_coefficient_squares(self):
        """Test the closed form of |a_m|²."""
        computed = np.abs(halfdisc_coefficients(60).coeffs[1:51]) ** 2
        np.testing.assert_allclose(computed, halfdisc_coefficient_squares(50), atol=1e-12)

    def test_tail_sum(self):
        """Test Σ T²_{⌊m/2⌋} against the exit time."""
        assert halfdisc_tail_sum(1 << 14) == pytest.approx(HALFDISC_VALUE, abs=1e-6)


class TestLens:
    """Test the lens maps."""

    def test_centre(self):
        """Test E = 2/π - 1/2 at the centre of the lens."""
        assert coefficient_exit_time(lens_coefficients()).value == pytest.approx(LENS_VALUE, abs=1e-8)

    def test_maps_invert(self):
        """Test that the forward map inverts the series map."""
        w = np.array([0.3, 0.5j, -0.4 + 0.2j])
        np.testing.assert_allclose(lens_forward_map(lens_inverse_map(w)), w, atol=1e-14)
        series = lens_coefficients(200)
        np.testing.assert_allclose(series.evaluate(w), lens_inverse_map(w), atol=1e-14)

    def test_forward_map_singular(self):
        """Test that z = ±1 is rejected."""
        with pytest.raises(InvalidParameterError):
            lens_forward_map(1.0)

    def test_family(self):
        """Test the lens family: p = 1 is the disc and p = 1/2 is the lens."""
        assert lens_family_exit_time(1.0).value == pytest.approx(0.5, abs=1e-10)
        assert lens_family_exit_time(0.5).value == pytest.approx(LENS_VALUE, abs=1e-7)


class TestPolygonsAndNGrams:
    """Test regular polygons and n-grams."""

    def test_triangle_and_square(self):
        """Test the hypergeometric centre values against the series."""
        assert mgon_exit_time(3).value == pytest.approx(1.0 / 6.0, rel=1e-8)
        square = coefficient_exit_time(polygon_coefficients(4, 1 << 14))
        assert square.value == pytest.approx(mgon_exit_time(4).value, abs=1e-8)

    def test_polygon_map_vertex(self):
        """Test that the polygon map sends 1 near the vertex at distance 1."""
        series = polygon_coefficients(6, 1 << 14)
        assert abs(series.evaluate(0.999)) == pytest.approx(1.0, abs=1e-2)

    def test_polygon_rejects_digon(self):
        """Test that m < 3 is rejected."""
        with pytest.raises(InvalidParameterError):
            mgon_exit_time(2)

    def test_ngram_coefficients_sparse(self):
        """Test that only indices nm + 1 are nonzero and a₁ = 1."""
        coeffs = ngram_coefficients(5, 0.3, 0.1, 64).coeffs
        assert coeffs[1] == pytest.approx(1.0)
        nonzero = np.flatnonzero(np.abs(coeffs) > 0)
        assert np.all((nonzero - 1) % 5 == 0)

    def test_ngram_routes_agree(self):
        """Test the Cauchy-product and finite-sum coefficient routes."""
        fast = ngram_exit_time(5, 0.3, 0.1)
        direct = ngram_exit_time_direct(5, 0.3, 0.1)
        assert fast.value == pytest.approx(direct.value, rel=1e-12)

    def test_ngram_tail_coefficients_accurate(self):
        """Test the far coefficients against the finite inner sum."""
        n, mu1, mu2 = 5, 0.3, 0.1
        coeffs = ngram_coefficients(n, mu1, mu2, 4096).coeffs
        m = 800
        first = binomial_sequence(-mu2, m + 1) * (-1.0) ** np.arange(m + 1)
        second = binomial_sequence(-mu1, m + 1)
        expected = float(np.dot(first, second[::-1])) / (n * m + 1)
        assert coeffs[n * m + 1].real == pytest.approx(expected, rel=1e-12)

    def test_ngram_square(self):
        """Test that the 2-gram with μ₁ = μ₂ = 1/2 is the square of circumradius R."""
        ngram = ngram_exit_time(2, 0.5, 0.5, order=1 << 14)
        radius = ngram_radii(2, 0.5, 0.5).circumradius
        assert radius == pytest.approx(ngram_radii(2, 0.5, 0.5).inradius, rel=1e-12)
        assert ngram.value == pytest.approx(mgon_exit_time(4).value * radius ** 2, rel=1e-8)

    def test_ngram_radii(self):
        """Test that the closed radii agree with quadrature and are ordered."""
        radii = ngram_radii(5, 0.3, 0.1)
        first, second = ngram_vertex_radii_quadrature(5, 0.3, 0.1)
        assert radii.circumradius == pytest.approx(max(first, second), rel=1e-9)
        assert radii.inradius == pytest.approx(min(first, second), rel=1e-9)
        assert radii.circumradius > radii.inradius

    def test_ngram_bad_angles(self):
        """Test that μ₁ + μ₂ != 2/n is rejected."""
        with pytest.raises(InvalidParameterError):
            ngram_coefficients(5, 0.3, 0.3)


class TestSeriesDispatch:
    """Test the (domain, point) dispatch of the series route."""

    def test_disc_any_point(self):
        """Test that every disc point is covered."""
        estimate = series_exit_time(Disc(r0=1.0), Point2(x=0.3, y=0.4))
        assert estimate.value == pytest.approx(0.5 * (1.0 - 0.25), rel=1e-12)

    def test_wedge_axis_scaling(self):
        """Test E_x[τ] = x² E_1[τ] on the wedge axis and None off it."""
        wedge = Wedge(p=0.25)
        at_two = series_exit_time(wedge, Point2(x=2.0, y=0.0))
        assert at_two.value == pytest.approx(4.0 * 0.5 * (math.sqrt(2.0) - 1.0), rel=1e-6)
        assert series_exit_time(wedge, Point2(x=1.0, y=0.1)) is None

    def test_halfdisc_point(self):
        """Test that only i(√2 - 1)r0 is covered in the half disc."""
        estimate = series_exit_time(HalfDisc(r0=2.0), Point2(x=0.0, y=2.0 * (math.sqrt(2.0) - 1.0)))
        assert estimate.value == pytest.approx(4.0 * HALFDISC_VALUE, abs=1e-5)
        assert series_exit_time(HalfDisc(r0=1.0), Point2(x=0.0, y=0.5)) is None

    def test_centres(self):
        """Test the lens, polygon and n-gram centres and an uncovered domain."""
        origin = Point2(x=0.0, y=0.0)
        assert series_exit_time(Lens(), origin).value == pytest.approx(LENS_VALUE, abs=1e-8)
        assert series_exit_time(RegularPolygon(m=3), origin).value == pytest.approx(1.0 / 6.0, rel=1e-6)
        assert series_exit_time(NGram(n=5, mu1=0.3, mu2=0.1), origin) is not None
        assert series_exit_time(Lens(), Point2(x=0.1, y=0.0)) is None
        assert series_exit_time(Rectangle(a=1.0, b=1.0), origin) is None


if __name__ == "__main__":
    pytest.main([__file__])
