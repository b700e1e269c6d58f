"""Domain geometry: membership, boundary distance, vertex lists and the text grammar."""

from .geometry import (
    contains, contains_many, boundary_distance, boundary_distance_many,
    nearest_boundary_point, in_closure, polygon_vertices, bounding_box,
    point_in_polygon, region_of
)
from .grammar import parse_domain, format_domain

__all__ = [
    'contains', 'contains_many', 'boundary_distance', 'boundary_distance_many',
    'nearest_boundary_point', 'in_closure', 'polygon_vertices', 'bounding_box',
    'point_in_polygon', 'region_of',
    'parse_domain', 'format_domain',
]
