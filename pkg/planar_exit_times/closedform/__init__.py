"""Closed-form Poisson solutions: the exit-time field of each catalogued domain."""

from .poisson import (
    wedge_u, disc_u, equilateral_triangle_u, circular_cutout_u, isosceles_right_u,
    ellipse_u, rectangle_u, strip_u
)
from .square import square_center_exit_time
from .field import exit_time_field, has_field, closed_exit_time

__all__ = [
    'wedge_u', 'disc_u', 'equilateral_triangle_u', 'circular_cutout_u', 'isosceles_right_u',
    'ellipse_u', 'rectangle_u', 'strip_u',
    'square_center_exit_time',
    'exit_time_field', 'has_field', 'closed_exit_time',
]
