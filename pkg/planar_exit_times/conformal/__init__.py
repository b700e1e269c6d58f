"""Conformal-map coefficient engines and the coefficient exit-time functional."""

from .series import PowerSeries, binomial_series, geometric_series, coefficient_exit_time
from .maps import (
    wedge_coefficients, wedge_coefficient_closed, wedge_exit_time,
    halfdisc_coefficients, halfdisc_inverse_map, halfdisc_alternative_inverse,
    halfdisc_coefficient_squares, halfdisc_tail_sum,
    lens_coefficients, lens_forward_map, lens_inverse_map,
    lens_family_coefficients, lens_family_exit_time,
    disc_coefficients, koebe_coefficients, polygon_coefficients, mgon_exit_time
)
from .ngram import (
    ngram_coefficients, ngram_exit_time, ngram_exit_time_direct, ngram_radii,
    ngram_vertex_radii_quadrature, ngram_vertices
)
from .dispatch import series_exit_time

__all__ = [
    'PowerSeries', 'binomial_series', 'geometric_series', 'coefficient_exit_time',
    'wedge_coefficients', 'wedge_coefficient_closed', 'wedge_exit_time',
    'halfdisc_coefficients', 'halfdisc_inverse_map', 'halfdisc_alternative_inverse',
    'halfdisc_coefficient_squares', 'halfdisc_tail_sum',
    'lens_coefficients', 'lens_forward_map', 'lens_inverse_map',
    'lens_family_coefficients', 'lens_family_exit_time',
    'disc_coefficients', 'koebe_coefficients', 'polygon_coefficients', 'mgon_exit_time',
    'ngram_coefficients', 'ngram_exit_time', 'ngram_exit_time_direct', 'ngram_radii',
    'ngram_vertex_radii_quadrature', 'ngram_vertices',
    'series_exit_time',
]
