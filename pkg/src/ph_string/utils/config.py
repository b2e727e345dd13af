"""
Process-level configuration for the string simulator.

Physical scenarios live in scenario files (see ``ph_string.core.scenario``);
this class only carries settings that belong to the running process, read
from the environment or a ``.env`` file.
"""

import os
from pathlib import Path
from typing import Any, Optional

from dotenv import load_dotenv

from .error_handling import ConfigurationError


LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")
TRUE_VALUES = ("1", "true", "yes", "on")
DEFAULT_MAX_CONFIG_SIZE = 5 * 1024 * 1024


def _flag(name: str, default: bool) -> bool:
    value = os.getenv(name)
    if value is None:
        return default
    return value.strip().lower() in TRUE_VALUES


class Config:
    """
    Application settings read from the environment.

    Values are parsed leniently on construction; ``validate`` reports every
    unusable one at once, named by its environment variable.
    """

    def __init__(self, env_file: Optional[str] = None):
        # existing environment variables win over the file
        if env_file:
            load_dotenv(env_file)
        else:
            load_dotenv()
        self._problems: list[str] = []

        self.log_level = os.getenv("LOG_LEVEL", "INFO").strip().upper()
        self.debug = _flag("DEBUG", False)
        log_file = os.getenv("LOG_FILE")
        self.log_file: Optional[Path] = Path(log_file) if log_file else None

        self.output_dir = Path(os.getenv("OUTPUT_DIR", "results"))
        self.max_config_size = self._integer("MAX_CONFIG_SIZE", DEFAULT_MAX_CONFIG_SIZE)
        self.enable_resource_monitoring = _flag("ENABLE_RESOURCE_MONITORING", True)

    def _integer(self, name: str, default: int) -> int:
        raw = os.getenv(name)
        if raw is None:
            return default
        try:
            return int(raw)
        except ValueError:
            self._problems.append(f"{name}: expected an integer, got {raw!r}")
            return default

    def validate(self) -> None:
        """
        Raises:
            ConfigurationError: Listing each invalid environment variable
        """
        errors = list(self._problems)
        if self.log_level not in LOG_LEVELS:
            errors.append(f"LOG_LEVEL: must be one of {', '.join(LOG_LEVELS)}")
        if self.max_config_size <= 0:
            errors.append("MAX_CONFIG_SIZE: must be positive")
        if self.output_dir.exists() and not self.output_dir.is_dir():
            errors.append(f"OUTPUT_DIR: {self.output_dir} is not a directory")
        if errors:
            raise ConfigurationError(errors)

    def to_dict(self) -> dict[str, Any]:
        return {
            "log_level": self.log_level,
            "debug": self.debug,
            "log_file": str(self.log_file) if self.log_file else None,
            "output_dir": str(self.output_dir),
            "max_config_size": self.max_config_size,
            "enable_resource_monitoring": self.enable_resource_monitoring,
        }

    @classmethod
    def from_env_file(cls, env_file: str) -> "Config":
        return cls(env_file=env_file)

    @classmethod
    def get_default(cls) -> "Config":
        return cls()
