"""
Error types and error handling helpers for the string simulator.

This module provides the exception hierarchy shared by all modules together
with a decorator and a context manager that log failures with context
information before re-raising them.
"""

import functools
import inspect
import logging
from collections.abc import Iterator
from contextlib import contextmanager
from enum import Enum
from typing import Any, Callable, Optional, TypeVar


logger = logging.getLogger(__name__)

F = TypeVar("F", bound=Callable[..., Any])


class ErrorCategory(Enum):
    """Error categories for log classification."""

    CONFIGURATION = "configuration"
    MATERIAL_DOMAIN = "material_domain"
    CONVERGENCE = "convergence"
    FILE_IO = "file_io"
    UNKNOWN = "unknown"


class StringSimError(Exception):
    """Base exception for simulator errors."""

    category = ErrorCategory.UNKNOWN

    def __init__(self, message: str, original_error: Optional[Exception] = None):
        super().__init__(message)
        self.original_error = original_error


class ConfigurationError(StringSimError, ValueError):
    """Invalid arguments or scenario settings.

    Attributes:
        errors: One message per offending field, each naming the dotted
            field path (e.g. ``material.EA``).
    """

    category = ErrorCategory.CONFIGURATION

    def __init__(self, errors: list[str], original_error: Optional[Exception] = None):
        self.errors = list(errors)
        super().__init__(
            f"Configuration errors: {'; '.join(self.errors)}", original_error
        )


class ConfigParseError(ConfigurationError):
    """Scenario file that is not well-formed structured text."""

    def __init__(
        self,
        message: str,
        line: Optional[int] = None,
        column: Optional[int] = None,
        original_error: Optional[Exception] = None,
    ):
        self.line = line
        self.column = column
        location = f" (line {line}, column {column})" if line is not None else ""
        super().__init__([f"parse error{location}: {message}"], original_error)


class MaterialDomainError(StringSimError, ValueError):
    """Strain or stretch outside the domain of a material law."""

    category = ErrorCategory.MATERIAL_DOMAIN


class ConvergenceError(StringSimError):
    """Newton iteration that did not reach the residual tolerance.

    Attributes:
        report: The ``StepReport`` of the failed solve.
    """

    category = ErrorCategory.CONVERGENCE

    def __init__(
        self, message: str, report: Any, original_error: Optional[Exception] = None
    ):
        super().__init__(message, original_error)
        self.report = report


class SimulationFailure(StringSimError):
    """Aborted simulation with the trajectory computed so far.

    Attributes:
        trajectory: Partial trajectory up to the last accepted step.
        step_index: Index of the step that failed.
        report: Report of the failed Newton solve.
    """

    category = ErrorCategory.CONVERGENCE

    def __init__(
        self,
        message: str,
        trajectory: Any,
        step_index: int,
        report: Any,
        original_error: Optional[Exception] = None,
    ):
        super().__init__(message, original_error)
        self.trajectory = trajectory
        self.step_index = step_index
        self.report = report


def _category_of(error: Exception) -> ErrorCategory:
    if isinstance(error, StringSimError):
        return error.category
    if isinstance(error, OSError):
        return ErrorCategory.FILE_IO
    return ErrorCategory.UNKNOWN


def with_error_logging(
    category: Optional[ErrorCategory] = None,
    context_data: Optional[dict[str, Any]] = None,
) -> Callable[[F], F]:
    """
    Decorator that logs exceptions with call context and re-raises them.

    Args:
        category: Category to log; derived from the exception when omitted
        context_data: Additional context included in the log message
    """

    def decorator(func: F) -> F:
        @functools.wraps(func)
        def wrapper(*args: Any, **kwargs: Any) -> Any:
            try:
                return func(*args, **kwargs)
            except Exception as e:
                resolved = category or _category_of(e)
                context = {
                    "function": func.__name__,
                    "module": func.__module__,
                    "category": resolved.value,
                    **(context_data or {}),
                }
                context_str = " | ".join(f"{k}={v}" for k, v in context.items())
                logger.error(f"{type(e).__name__}: {e} | {context_str}")
                raise

        return wrapper  # type: ignore[return-value]

    return decorator


@contextmanager
def error_context(
    context_data: dict[str, Any], category: Optional[ErrorCategory] = None
) -> Iterator[None]:
    """
    Context manager that logs exceptions raised in its block with context.

    Args:
        context_data: Dictionary of context information
        category: Category to log; derived from the exception when omitted
    """
    try:
        yield
    except Exception as e:
        frame = inspect.currentframe()
        caller = frame.f_back.f_back if frame and frame.f_back else None
        function_name = caller.f_code.co_name if caller else "unknown"
        resolved = category or _category_of(e)
        context_str = " | ".join(f"{k}={v}" for k, v in context_data.items())
        logger.error(
            f"Error in {function_name} [{resolved.value}]: "
            f"{type(e).__name__}: {e} | {context_str}"
        )
        raise
