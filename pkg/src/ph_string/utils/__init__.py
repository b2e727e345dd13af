"""
Utility modules for configuration, logging, validation and error handling.
"""

from .config import Config
from .error_handling import (
    ConfigurationError,
    ConvergenceError,
    MaterialDomainError,
    SimulationFailure,
    StringSimError,
)
from .logging_config import get_logger, setup_logging
from .validators import safe_file_read, safe_file_write, validate_file_path


__all__ = [
    "Config",
    "ConfigurationError",
    "ConvergenceError",
    "MaterialDomainError",
    "SimulationFailure",
    "StringSimError",
    "get_logger",
    "safe_file_read",
    "safe_file_write",
    "setup_logging",
    "validate_file_path",
]
