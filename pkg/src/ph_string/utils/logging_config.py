"""
Logging configuration for the string simulator.

``setup_logging`` wires the root logger once per process (console plus an
optional rotating file). Simulation code logs through ``StructuredLogger``,
which appends ``key=value`` pairs so that per-step records stay greppable:

    Newton iteration | t=0.12 | scheme=dg | iteration=2 | residual=3.4e-09
"""

import functools
import logging
import logging.handlers
import numbers
import sys
import time
from pathlib import Path
from typing import Any, Callable, Optional, TypeVar, Union


F = TypeVar("F", bound=Callable[..., Any])

DEFAULT_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
DEBUG_FORMAT = (
    "%(asctime)s - %(name)s - %(levelname)s - %(filename)s:%(lineno)d - %(message)s"
)
PACKAGE_LOGGER = "ph_string"


def _rotating_file_handler(
    log_file: Union[str, Path], max_bytes: int, backup_count: int
) -> logging.Handler:
    path = Path(log_file)
    path.parent.mkdir(parents=True, exist_ok=True)
    return logging.handlers.RotatingFileHandler(
        path, maxBytes=max_bytes, backupCount=backup_count, encoding="utf-8"
    )


def setup_logging(
    log_level: str = "INFO",
    log_file: Optional[Union[str, Path]] = None,
    max_bytes: int = 10 * 1024 * 1024,
    backup_count: int = 5,
    format_string: Optional[str] = None,
) -> logging.Logger:
    """
    Configure the root logger and return the package logger.

    Existing root handlers are replaced. Unknown level names fall back to
    INFO. At DEBUG the format also carries file and line of each record.

    Example:
        >>> logger = setup_logging("DEBUG", "logs/run.log")
        >>> logger.info("Simulation started")
    """
    level = logging.getLevelName(log_level.upper())
    if not isinstance(level, int):
        level = logging.INFO
    if format_string is None:
        format_string = DEBUG_FORMAT if level <= logging.DEBUG else DEFAULT_FORMAT

    handlers: list[logging.Handler] = [logging.StreamHandler(sys.stdout)]
    if log_file:
        handlers.append(_rotating_file_handler(log_file, max_bytes, backup_count))

    root_logger = logging.getLogger()
    for handler in root_logger.handlers[:]:
        root_logger.removeHandler(handler)
    root_logger.setLevel(level)

    formatter = logging.Formatter(format_string)
    for handler in handlers:
        handler.setLevel(level)
        handler.setFormatter(formatter)
        root_logger.addHandler(handler)

    package_logger = logging.getLogger(PACKAGE_LOGGER)
    package_logger.info(f"Logging configured at level: {logging.getLevelName(level)}")
    return package_logger


def _format_value(value: Any) -> str:
    if isinstance(value, numbers.Integral):
        return str(value)
    if isinstance(value, numbers.Real):
        return f"{float(value):.6g}"
    return str(value)


class StructuredLogger:
    """Logger wrapper that appends ``key=value`` context to every message."""

    def __init__(self, name: str, extra_context: Optional[dict[str, Any]] = None):
        self.logger = logging.getLogger(name)
        self.extra_context = dict(extra_context or {})

    def with_context(self, **context: Any) -> "StructuredLogger":
        """New logger for the same name with additional fixed context."""
        return StructuredLogger(self.logger.name, {**self.extra_context, **context})

    def _emit(
        self, level: int, message: str, context: Optional[dict[str, Any]]
    ) -> None:
        if not self.logger.isEnabledFor(level):
            return
        merged = {**self.extra_context, **(context or {})}
        if merged:
            pairs = " | ".join(f"{key}={_format_value(value)}" for key, value in merged.items())
            message = f"{message} | {pairs}"
        # report the caller, not this wrapper
        self.logger.log(level, message, stacklevel=3)

    def debug(self, message: str, context: Optional[dict[str, Any]] = None) -> None:
        self._emit(logging.DEBUG, message, context)

    def info(self, message: str, context: Optional[dict[str, Any]] = None) -> None:
        self._emit(logging.INFO, message, context)

    def warning(self, message: str, context: Optional[dict[str, Any]] = None) -> None:
        self._emit(logging.WARNING, message, context)

    def error(self, message: str, context: Optional[dict[str, Any]] = None) -> None:
        self._emit(logging.ERROR, message, context)


def get_logger(
    name: str, extra_context: Optional[dict[str, Any]] = None
) -> StructuredLogger:
    """
    Get a structured logger.

    Example:
        >>> logger = get_logger(__name__, {"scheme": "dg"})
        >>> logger.info("Step accepted", {"step": 3, "iterations": 4})
    """
    return StructuredLogger(name, extra_context)


def log_function_call(func: F) -> F:
    """Log entry, wall time and failures of a coarse operation at DEBUG."""

    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        logger = logging.getLogger(func.__module__)
        logger.debug(f"Calling {func.__name__}")
        start = time.perf_counter()
        try:
            result = func(*args, **kwargs)
        except Exception as e:
            logger.debug(f"{func.__name__} raised {type(e).__name__}: {e}")
            raise
        logger.debug(f"{func.__name__} finished in {time.perf_counter() - start:.3g} s")
        return result

    return wrapper  # type: ignore[return-value]
