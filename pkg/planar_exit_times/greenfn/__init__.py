"""Green-function route: disc and half-disc kernels, log-kernel expansions and dilogarithm integrals."""

from .green import (
    disc_green, halfdisc_green, log_kernel_expansion, log_cosine_integral,
    angular_dilog_integral, halfdisc_exit_time, halfdisc_exit_time_closed,
    halfdisc_exit_time_quadrature, disc_exit_time_via_green, green_exit_time
)
from .integrals import dilog_moment_integral, dilog_reciprocal_moment_integral

__all__ = [
    'disc_green', 'halfdisc_green', 'log_kernel_expansion', 'log_cosine_integral',
    'angular_dilog_integral', 'halfdisc_exit_time', 'halfdisc_exit_time_closed',
    'halfdisc_exit_time_quadrature', 'disc_exit_time_via_green', 'green_exit_time',
    'dilog_moment_integral', 'dilog_reciprocal_moment_integral',
]
