"""
Run metrics and structured logging for the exit-time toolkit.
"""

import logging
import time
from collections import defaultdict
from datetime import datetime, timezone
from typing import Any, Dict, Optional

from ..schemas.models import ExitTimeEstimate, McResult

HISTOGRAM_WINDOW = 1000


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


class MetricsCollector:
    """Collect counters, gauges and histograms in process and export them to the log."""

    def __init__(self, metric_prefix: str = "exit_times", export_interval: Optional[float] = None):
        """
        Initialize metrics collector.

        Args:
            metric_prefix: Prefix for all metric names
            export_interval: Seconds between automatic exports; None exports only on request
        """
        self.metric_prefix = metric_prefix
        self.export_interval = export_interval

        self.counters: Dict[str, int] = defaultdict(int)
        self.gauges: Dict[str, float] = defaultdict(float)
        self.histograms: Dict[str, list] = defaultdict(list)
        self.last_export_time = time.time()

    def increment_counter(self, metric_name: str, value: int = 1, labels: Optional[Dict[str, str]] = None):
        """
        Increment a counter metric.

        Args:
            metric_name: Name of the metric
            value: Value to increment by
            labels: Optional labels for the metric
        """
        key = self._create_metric_key(f"{self.metric_prefix}.{metric_name}", labels)
        self.counters[key] += value
        self._maybe_export_metrics()

    def set_gauge(self, metric_name: str, value: float, labels: Optional[Dict[str, str]] = None):
        """Set a gauge metric value."""
        key = self._create_metric_key(f"{self.metric_prefix}.{metric_name}", labels)
        self.gauges[key] = value
        self._maybe_export_metrics()

    def record_histogram(self, metric_name: str, value: float, labels: Optional[Dict[str, str]] = None):
        """Record a value for a histogram metric, keeping the most recent values only."""
        key = self._create_metric_key(f"{self.metric_prefix}.{metric_name}", labels)
        self.histograms[key].append(value)
        if len(self.histograms[key]) > HISTOGRAM_WINDOW:
            self.histograms[key] = self.histograms[key][-HISTOGRAM_WINDOW:]
        self._maybe_export_metrics()

    def _create_metric_key(self, metric_name: str, labels: Optional[Dict[str, str]]) -> str:
        """Create a unique key for a metric with labels."""
        if labels:
            label_str = ",".join(f"{k}={v}" for k, v in sorted(labels.items()))
            return f"{metric_name}[{label_str}]"
        return metric_name

    def _maybe_export_metrics(self):
        if self.export_interval is None:
            return
        current_time = time.time()
        if current_time - self.last_export_time >= self.export_interval:
            self.export_metrics()
            self.last_export_time = current_time

    def snapshot(self) -> Dict[str, Any]:
        """Current values without clearing them."""
        return {
            "counters": dict(self.counters),
            "gauges": dict(self.gauges),
            "histograms": {
                key: {"count": len(values), "avg": sum(values) / len(values) if values else 0.0}
                for key, values in self.histograms.items()
            },
        }

    def export_metrics(self) -> Dict[str, Any]:
        """Log all accumulated metrics and clear them."""
        exported = self.snapshot()
        self._log_metrics(exported)
        self.counters.clear()
        self.gauges.clear()
        self.histograms.clear()
        return exported

    def _log_metrics(self, exported: Dict[str, Any]):
        if exported["counters"]:
            logging.info(f"Counters: {exported['counters']}")
        if exported["gauges"]:
            logging.info(f"Gauges: {exported['gauges']}")
        if exported["histograms"]:
            logging.info(f"Histograms: {exported['histograms']}")


class RunLogger:
    """Structured logging of estimates, identity checks and simulations."""

    def __init__(self, log_name: str = "planar-exit-times", structured: bool = True):
        """
        Initialize run logger.

        Args:
            log_name: Name of the logger
            structured: Attach the record fields as ``extra`` data
        """
        self.log_name = log_name
        self.structured = structured
        self.logger = logging.getLogger(log_name)

    def _emit(self, level: int, message: str, log_data: Dict[str, Any]):
        if self.structured:
            self.logger.log(level, message, extra=log_data)
        else:
            self.logger.log(level, message)

    def log_estimate(self, domain: str, estimate: ExitTimeEstimate):
        """Log one exit-time estimate."""
        log_data = {
            "domain": domain,
            "method": estimate.method.value,
            "value": estimate.value,
            "error": estimate.error,
            "count": estimate.count,
            "status": estimate.status.value,
            "timestamp": _now(),
            "component": "estimator",
        }
        if estimate.is_finite:
            self._emit(logging.INFO, f"Estimate {estimate.method.value} for {domain}: {estimate.value:.12g}", log_data)
        else:
            self._emit(logging.WARNING, f"Estimate {estimate.method.value} for {domain}: {estimate.status.value}",
                       log_data)

    def log_check(self, name: str, passed: bool, residual: float, tolerance: float):
        """Log one identity check."""
        log_data = {
            "check": name,
            "passed": passed,
            "residual": residual,
            "tolerance": tolerance,
            "timestamp": _now(),
            "component": "verification",
        }
        if passed:
            self._emit(logging.DEBUG, f"Check {name} passed", log_data)
        else:
            self._emit(logging.ERROR, f"Check {name} failed: residual {residual:.3g} > {tolerance:.3g}", log_data)

    def log_simulation(self, domain: str, result: McResult, elapsed_s: float):
        """Log a finished Monte Carlo run."""
        log_data = {
            "domain": domain,
            "method": result.method.value,
            "mean": result.mean,
            "std_error": result.std_error,
            "paths_used": result.paths_used,
            "truncated_paths": result.truncated_paths,
            "elapsed_s": elapsed_s,
            "timestamp": _now(),
            "component": "montecarlo",
        }
        if result.truncated_paths:
            self._emit(logging.WARNING, f"{result.truncated_paths} of {result.paths_used} paths truncated", log_data)
        else:
            self._emit(logging.INFO, f"Simulated {result.paths_used} paths in {elapsed_s:.2f}s", log_data)
