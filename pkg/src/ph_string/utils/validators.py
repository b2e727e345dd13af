"""
File checks for scenario input and run output.

Scenario files are validated before parsing; result files are written
through a hidden ``.partial`` sibling and renamed into place, so a crashed
run never leaves a truncated CSV under its final name.
"""

import logging
from pathlib import Path
from typing import Union


logger = logging.getLogger(__name__)

CONFIG_EXTENSIONS = (".yaml", ".yml", ".cfg")
DEFAULT_MAX_SIZE = 5 * 1024 * 1024
PARTIAL_SUFFIX = ".partial"


def validate_file_path(
    file_path: Union[str, Path],
    allowed_extensions: tuple[str, ...] = CONFIG_EXTENSIONS,
    max_size: int = DEFAULT_MAX_SIZE,
) -> Path:
    """
    Check that a scenario file exists, has a known suffix and a sane size.

    Raises:
        FileNotFoundError: If nothing exists at the path
        ValueError: If the path is a directory, has another suffix or
            exceeds ``max_size`` bytes
    """
    path = Path(file_path)
    if not path.exists():
        raise FileNotFoundError(f"File not found: {path}")
    if not path.is_file():
        raise ValueError(f"Path is not a file: {path}")

    suffix = path.suffix.lower()
    if suffix not in allowed_extensions:
        raise ValueError(
            f"Invalid file type '{suffix}' for {path.name}; "
            f"expected one of {', '.join(allowed_extensions)}"
        )

    size = path.stat().st_size
    if size > max_size:
        raise ValueError(f"File too large: {path.name} has {size} bytes, limit {max_size}")
    return path


def safe_file_read(
    file_path: Union[str, Path],
    encoding: str = "utf-8",
    allowed_extensions: tuple[str, ...] = CONFIG_EXTENSIONS,
    max_size: int = DEFAULT_MAX_SIZE,
) -> str:
    """Read a scenario file after ``validate_file_path``."""
    path = validate_file_path(file_path, allowed_extensions, max_size)
    try:
        return path.read_text(encoding=encoding)
    except UnicodeDecodeError as e:
        raise ValueError(f"Invalid file encoding in {path.name}, expected {encoding}") from e


def create_safe_directory(dir_path: Union[str, Path]) -> Path:
    """
    Create an output directory with its parents.

    Raises:
        NotADirectoryError: If a regular file already occupies the path
        OSError: If the directory cannot be created
    """
    path = Path(dir_path)
    if path.exists() and not path.is_dir():
        raise NotADirectoryError(f"Output path is a file: {path}")
    try:
        path.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        logger.error(f"Cannot create output directory {path}: {e}")
        raise
    return path


def safe_file_write(
    file_path: Union[str, Path], content: str, encoding: str = "utf-8"
) -> Path:
    """
    Write ``content`` to ``file_path`` atomically.

    Newlines are written as given. On failure the partial file is removed
    and the error re-raised; an existing file at ``file_path`` is untouched.
    """
    path = Path(file_path)
    create_safe_directory(path.parent)
    partial = path.with_name(f".{path.name}{PARTIAL_SUFFIX}")
    try:
        with open(partial, "w", encoding=encoding, newline="") as handle:
            handle.write(content)
        partial.replace(path)
    except OSError as e:
        logger.error(f"Cannot write {path}: {e}")
        partial.unlink(missing_ok=True)
        raise
    logger.debug(f"Wrote {path} ({len(content)} characters)")
    return path
