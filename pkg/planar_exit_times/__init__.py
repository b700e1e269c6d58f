"""
Expected exit times of planar Brownian motion

This package computes the expected exit time of two-dimensional Brownian
motion from a catalogue of simply connected domains using four independent
routes: conformal-map coefficient series, closed-form Poisson solutions,
Green-function quadrature and Monte Carlo simulation.
"""

__version__ = "1.0.0"
__author__ = "Technology Professional"
