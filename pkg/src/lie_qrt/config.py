"""
Configuration management for the Lie-algebra QRT laboratory.
Centralizes numerical tolerances and run settings with environment variable support.
"""

import os
from dataclasses import dataclass
from typing import Optional


def _env_bool(name: str, default: str) -> bool:
    return os.getenv(name, default).strip().lower() in ("1", "true", "yes", "on")


@dataclass
class NumericsConfig:
    """Thresholds shared by the numerical modules."""
    exp_max_dim: int = None
    qr_singular_tol: float = 1e-12
    ginibre_resample_tol: float = 1e-8
    null_outcome_tol: float = 1e-14
    normalization_tol: float = 1e-10
    pivot_tol: float = 1e-12

    def __post_init__(self):
        if self.exp_max_dim is None:
            self.exp_max_dim = int(os.getenv('LIE_QRT_EXP_MAX_DIM', '4096'))


@dataclass
class RunConfig:
    """Experiment run settings for the CLI."""
    workers: int = None
    output_format: str = None
    log_level: str = None
    structured_logs: bool = None

    def __post_init__(self):
        if self.workers is None:
            self.workers = int(os.getenv('LIE_QRT_WORKERS', '1'))
        if self.output_format is None:
            self.output_format = os.getenv('LIE_QRT_FORMAT', 'csv')
        if self.log_level is None:
            self.log_level = os.getenv('LIE_QRT_LOG_LEVEL', 'info')
        if self.structured_logs is None:
            self.structured_logs = _env_bool('LIE_QRT_STRUCTURED_LOGS', 'true')


@dataclass
class AppConfig:
    """Main application configuration combining all settings."""
    numerics: NumericsConfig = None
    run: RunConfig = None

    def __post_init__(self):
        if self.numerics is None:
            self.numerics = NumericsConfig()
        if self.run is None:
            self.run = RunConfig()


# Global configuration instance
_config: Optional[AppConfig] = None


def get_config() -> AppConfig:
    """Get the global configuration instance."""
    global _config
    if _config is None:
        _config = AppConfig()
    return _config


def reload_config() -> AppConfig:
    """Reload configuration from environment variables."""
    global _config
    _config = AppConfig()
    return _config
