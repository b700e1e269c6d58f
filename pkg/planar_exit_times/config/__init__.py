"""Configuration for numerics, Monte Carlo runs and logging."""

from .settings import NumericsConfig, MonteCarloSettings, LoggingConfig

__all__ = ['NumericsConfig', 'MonteCarloSettings', 'LoggingConfig']
