"""Monte Carlo oracle: walk on spheres and Euler path simulation."""

from .simulator import simulate, wedge_divergence_probe

__all__ = ['simulate', 'wedge_divergence_probe']
