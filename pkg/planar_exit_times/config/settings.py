"""
Configuration settings for the exit-time toolkit.
"""

import os
from dataclasses import dataclass
from typing import Optional

from ..schemas.models import McConfig, McMethod


@dataclass
class NumericsConfig:
    """Tolerances and truncation orders of the deterministic methods."""

    series_tol: float = 1e-12
    max_terms: int = 10 ** 6
    truncation: int = 4096
    field_terms: int = 60
    quad_tol: float = 1e-12

    @classmethod
    def from_env(cls) -> "NumericsConfig":
        """Create configuration from environment variables."""
        return cls(
            series_tol=float(os.getenv("EXIT_TIMES_SERIES_TOL", "1e-12")),
            max_terms=int(os.getenv("EXIT_TIMES_MAX_TERMS", "1000000")),
            truncation=int(os.getenv("EXIT_TIMES_TRUNCATION", "4096")),
            field_terms=int(os.getenv("EXIT_TIMES_FIELD_TERMS", "60")),
            quad_tol=float(os.getenv("EXIT_TIMES_QUAD_TOL", "1e-12")),
        )

    def validate(self) -> bool:
        """Validate the configuration."""
        for name in ("series_tol", "quad_tol"):
            if not 0 < getattr(self, name) < 1:
                raise ValueError(f"{name} must lie in (0, 1)")
        if self.max_terms < 1:
            raise ValueError("max_terms must be positive")
        if self.truncation < 16:
            raise ValueError("truncation must be at least 16")
        if self.field_terms < 10:
            raise ValueError("field_terms must be at least 10")
        return True


@dataclass
class MonteCarloSettings:
    """Defaults of the Monte Carlo oracle."""

    paths: int = 100000
    step: float = 1e-4
    shell: float = 1e-5
    max_steps: int = 10 ** 7
    seed: int = 20240601
    batch_size: int = 4096
    workers: int = 1
    confidence_sigma: float = 3.0

    @classmethod
    def from_env(cls) -> "MonteCarloSettings":
        """Create configuration from environment variables."""
        return cls(
            paths=int(os.getenv("EXIT_TIMES_PATHS", "100000")),
            step=float(os.getenv("EXIT_TIMES_STEP", "1e-4")),
            shell=float(os.getenv("EXIT_TIMES_SHELL", "1e-5")),
            max_steps=int(os.getenv("EXIT_TIMES_MAX_STEPS", "10000000")),
            seed=int(os.getenv("EXIT_TIMES_SEED", "20240601")),
            batch_size=int(os.getenv("EXIT_TIMES_BATCH_SIZE", "4096")),
            workers=int(os.getenv("EXIT_TIMES_WORKERS", "1")),
            confidence_sigma=float(os.getenv("EXIT_TIMES_SIGMA", "3.0")),
        )

    def validate(self) -> bool:
        """Validate the configuration."""
        if self.paths < 100:
            raise ValueError("paths must be at least 100")
        if self.step <= 0 or self.shell <= 0:
            raise ValueError("step and shell must be positive")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.batch_size < 1 or self.workers < 1 or self.max_steps < 1:
            raise ValueError("batch_size, workers and max_steps must be positive")
        if self.confidence_sigma <= 0:
            raise ValueError("confidence_sigma must be positive")
        return True

    def to_mc_config(self, method: McMethod = McMethod.WALK_ON_SPHERES) -> McConfig:
        """Freeze these settings into the model consumed by the simulator."""
        return McConfig(
            method=method,
            paths=self.paths,
            step=self.step,
            shell=self.shell,
            seed=self.seed,
            max_steps=self.max_steps,
            batch_size=self.batch_size,
            workers=self.workers,
        )


@dataclass
class LoggingConfig:
    """Configuration for logging and run metrics."""

    log_level: str = "INFO"
    log_file: Optional[str] = None
    structured: bool = True

    @classmethod
    def from_env(cls) -> "LoggingConfig":
        """Create configuration from environment variables."""
        return cls(
            log_level=os.getenv("EXIT_TIMES_LOG_LEVEL", "INFO"),
            log_file=os.getenv("EXIT_TIMES_LOG_FILE"),
            structured=os.getenv("EXIT_TIMES_STRUCTURED_LOGS", "true").lower() == "true",
        )

    def validate(self) -> bool:
        """Validate the configuration."""
        if self.log_level.upper() not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            raise ValueError(f"Unknown log level '{self.log_level}'")
        return True
