"""
Input/output: scenario files and run results.
"""

from .config_reader import ConfigReader, load_config
from .output_writer import OutputWriter


__all__ = ["ConfigReader", "OutputWriter", "load_config"]
