"""
Scenario file reading.
"""

import logging
from pathlib import Path
from typing import Any, Optional, Union

import yaml

from ..core.scenario import ScenarioConfig
from ..utils.config import Config
from ..utils.error_handling import (
    ConfigParseError,
    ConfigurationError,
    ErrorCategory,
    error_context,
)
from ..utils.validators import CONFIG_EXTENSIONS, safe_file_read


logger = logging.getLogger(__name__)


class ConfigReader:
    """
    Reader for YAML scenario files.

    Accepts plain scenario files and run manifests, whose ``scenario`` key
    holds the resolved configuration of a previous run.
    """

    def __init__(self, config: Optional[Config] = None) -> None:
        """
        Initialize the reader.

        Args:
            config: Process settings; the size limit for scenario files is
                taken from it
        """
        self.config = config or Config.get_default()
        logger.debug("ConfigReader initialized")

    def read_mapping(self, file_path: Union[str, Path]) -> dict[str, Any]:
        """
        Parse a scenario file into a mapping.

        Raises:
            FileNotFoundError: If the file doesn't exist
            ConfigParseError: If the text is not valid YAML, with line info
            ConfigurationError: If the file is not a mapping or cannot be read
        """
        try:
            text = safe_file_read(
                file_path,
                allowed_extensions=CONFIG_EXTENSIONS,
                max_size=self.config.max_config_size,
            )
        except ValueError as e:
            raise ConfigurationError([f"config: {e}"], e) from e

        try:
            data = yaml.safe_load(text)
        except yaml.YAMLError as e:
            mark = getattr(e, "problem_mark", None)
            line = mark.line + 1 if mark is not None else None
            column = mark.column + 1 if mark is not None else None
            problem = getattr(e, "problem", None) or str(e)
            logger.error(f"Cannot parse {file_path}: {problem}")
            raise ConfigParseError(problem, line, column, e) from e

        if not isinstance(data, dict):
            raise ConfigurationError(["scenario: expected a mapping at top level"])
        if "scenario" in data and "geometry" not in data:
            logger.info(f"Reading resolved scenario from run manifest {file_path}")
            data = data["scenario"]
        return data

    def read(self, file_path: Union[str, Path]) -> ScenarioConfig:
        """
        Read and validate a scenario file.

        Raises:
            FileNotFoundError: If the file doesn't exist
            ConfigurationError: Listing every invalid field
        """
        with error_context({"file": str(file_path)}, ErrorCategory.CONFIGURATION):
            data = self.read_mapping(file_path)
            name = data.get("name")
            config = ScenarioConfig.from_dict(data, name=name or Path(file_path).stem)
        logger.info(f"Loaded scenario '{config.name}' from {file_path}")
        return config


def load_config(
    file_path: Union[str, Path], config: Optional[Config] = None
) -> ScenarioConfig:
    """Read and validate a scenario file."""
    return ConfigReader(config).read(file_path)
