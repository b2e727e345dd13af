"""
Pytest configuration and shared fixtures.
"""

# Add src to Python path for testing
import logging
import sys
import tempfile
from collections.abc import Generator
from pathlib import Path

import numpy as np
import pytest


sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from ph_string.core.boundary import BoundarySpec, FixedEnd, ForceEnd, ZeroSignal
from ph_string.core.discretization import Mesh, build_mesh
from ph_string.core.material import MaterialKind, MaterialLaw


ENV_KEYS = (
    "LOG_LEVEL",
    "DEBUG",
    "LOG_FILE",
    "OUTPUT_DIR",
    "MAX_CONFIG_SIZE",
    "ENABLE_RESOURCE_MONITORING",
)


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch: pytest.MonkeyPatch, tmp_path: Path) -> None:
    """Keep process settings and relative output paths from leaking between tests."""
    for key in ENV_KEYS:
        monkeypatch.delenv(key, raising=False)
    monkeypatch.chdir(tmp_path)


@pytest.fixture
def temp_dir() -> Generator[Path, None, None]:
    """Create a temporary directory for testing."""
    with tempfile.TemporaryDirectory() as tmp_dir:
        yield Path(tmp_dir)


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded random generator."""
    return np.random.default_rng(20240611)


@pytest.fixture(params=list(MaterialKind), ids=lambda kind: kind.value)
def law(request: pytest.FixtureRequest) -> MaterialLaw:
    """Each material law with EA = 20 N."""
    return MaterialLaw(request.param, 20.0)


@pytest.fixture
def hyperelastic() -> MaterialLaw:
    return MaterialLaw(MaterialKind.HYPERELASTIC, 20.0)


@pytest.fixture
def pinned_spec() -> BoundarySpec:
    """Unit string fixed at both ends along the x axis."""
    return BoundarySpec(FixedEnd(np.zeros(2)), FixedEnd(np.array([1.0, 0.0])))


@pytest.fixture
def free_spec() -> BoundarySpec:
    """Both ends force-controlled with zero load."""
    return BoundarySpec(ForceEnd(ZeroSignal(2)), ForceEnd(ZeroSignal(2)))


@pytest.fixture
def two_element_mesh() -> Mesh:
    return build_mesh(1.0, 2, 2)


@pytest.fixture
def three_element_mesh() -> Mesh:
    return build_mesh(1.0, 3, 2)


@pytest.fixture
def scenario_file(temp_dir: Path):
    """Factory writing scenario text to a YAML file."""

    def _write(content: str, name: str = "scenario.yaml") -> Path:
        path = temp_dir / name
        path.write_text(content, encoding="utf-8")
        return path

    return _write


@pytest.fixture
def env_vars(monkeypatch: pytest.MonkeyPatch):
    """Factory setting environment variables for one test."""

    def _set(values: dict[str, str]) -> None:
        for key, value in values.items():
            monkeypatch.setenv(key, value)

    return _set


@pytest.fixture
def restore_root_logger() -> Generator[None, None, None]:
    """Put the root logger back the way pytest configured it."""
    root = logging.getLogger()
    handlers = root.handlers[:]
    level = root.level
    yield
    for handler in root.handlers[:]:
        root.removeHandler(handler)
        if handler not in handlers:
            handler.close()
    for handler in handlers:
        root.addHandler(handler)
    root.setLevel(level)
