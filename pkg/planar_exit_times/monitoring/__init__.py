"""Metrics and structured logging."""

from .metrics import MetricsCollector, RunLogger

__all__ = ['MetricsCollector', 'RunLogger']
