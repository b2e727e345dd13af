"""
Run output: energy, port and snapshot CSV files plus a YAML manifest.
"""

import logging
from pathlib import Path
from typing import Any, Optional, Union

import pandas as pd
import yaml

from ..core.boundary import dirichlet_ends, is_free_floating, neumann_ends
from ..core.diagnostics import (
    EnergyRecord,
    energy_certificate_applicable,
    energy_records,
)
from ..core.integrator import Trajectory
from ..core.scenario import ScenarioConfig
from ..utils.config import Config
from ..utils.error_handling import ErrorCategory, with_error_logging
from ..utils.validators import create_safe_directory, safe_file_write


logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"
COMPONENTS = ("x", "y", "z")

ENERGY_FILE = "energy.csv"
PORTS_FILE = "ports.csv"
SNAPSHOTS_FILE = "snapshots.csv"
MANIFEST_FILE = "manifest.yaml"


def _slot_columns(prefix: str, ends: list[str], d: int) -> list[str]:
    return [f"{prefix}_{end}_{COMPONENTS[i]}" for end in ends for i in range(d)]


def energy_frame(records: list[EnergyRecord]) -> pd.DataFrame:
    """One row per grid time."""
    frame = pd.DataFrame([record.to_dict() for record in records])
    frame.insert(0, "step", range(len(records)))
    return frame


def ports_frame(trajectory: Trajectory) -> pd.DataFrame:
    """One row per step with midpoint inputs, outputs and support reactions."""
    d = trajectory.operators.mesh.d
    spec = trajectory.boundary
    columns = (
        ["step", "t_mid", "h"]
        + _slot_columns("u", neumann_ends(spec), d)
        + _slot_columns("y", neumann_ends(spec), d)
        + _slot_columns("reaction", dirichlet_ends(spec), d)
    )
    rows = [
        [index, port.t_mid, port.h, *port.u, *port.y, *port.reaction]
        for index, port in enumerate(trajectory.ports)
    ]
    return pd.DataFrame(rows, columns=columns)


def snapshots_frame(trajectory: Trajectory, stride: int) -> pd.DataFrame:
    """Nodal positions every ``stride`` steps; the last state is always kept."""
    mesh = trajectory.operators.mesh
    columns = ["step", "t"] + [
        f"r_{node}_{COMPONENTS[i]}" for node in range(mesh.n_nodes) for i in range(mesh.d)
    ]
    last = len(trajectory.states) - 1
    rows = [
        [index, trajectory.times[index], *state.r_hat]
        for index, state in enumerate(trajectory.states)
        if index % stride == 0 or index == last
    ]
    return pd.DataFrame(rows, columns=columns)


class OutputWriter:
    """
    Writer for the files of one simulation run.

    All floats are written with 17 significant digits so that energy
    increments can be audited from the files alone.
    """

    def __init__(self, config: Optional[Config] = None) -> None:
        self.config = config or Config.get_default()
        logger.debug("OutputWriter initialized")

    def _write_frame(self, frame: pd.DataFrame, path: Path) -> Path:
        text = frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
        return safe_file_write(path, text)

    @with_error_logging(ErrorCategory.FILE_IO)
    def write_run(
        self,
        trajectory: Trajectory,
        scenario: ScenarioConfig,
        output_dir: Union[str, Path],
        resources: Optional[dict[str, Any]] = None,
        failure_message: Optional[str] = None,
    ) -> dict[str, Path]:
        """
        Write CSV files and the manifest of a (possibly partial) run.

        Args:
            trajectory: Integrated trajectory, partial if the run failed
            scenario: Resolved scenario including command-line overrides
            output_dir: Target directory, created if missing
            resources: Wall time and memory summary
            failure_message: Error message of a failed step

        Returns:
            Mapping of file kind to written path
        """
        directory = create_safe_directory(output_dir)
        records = energy_records(trajectory)
        paths = {
            "energy": self._write_frame(energy_frame(records), directory / ENERGY_FILE),
            "ports": self._write_frame(ports_frame(trajectory), directory / PORTS_FILE),
            "snapshots": self._write_frame(
                snapshots_frame(trajectory, scenario.output.snapshot_stride),
                directory / SNAPSHOTS_FILE,
            ),
        }
        manifest = self.manifest(trajectory, scenario, records, resources, failure_message)
        paths["manifest"] = safe_file_write(
            directory / MANIFEST_FILE,
            yaml.safe_dump(manifest, sort_keys=False, default_flow_style=None),
        )
        logger.info(f"Run output written to {directory}")
        return paths

    def manifest(
        self,
        trajectory: Trajectory,
        scenario: ScenarioConfig,
        records: list[EnergyRecord],
        resources: Optional[dict[str, Any]] = None,
        failure_message: Optional[str] = None,
    ) -> dict[str, Any]:
        """Run summary; its ``scenario`` entry reloads as a ScenarioConfig."""
        resources = resources or {}
        post_increments = [record.increment for record in records[1:]]
        return {
            "scenario": scenario.to_dict(),
            "scheme": trajectory.settings.scheme.value,
            "status": "converged" if trajectory.succeeded else "failed",
            "failed_step": trajectory.failed_step,
            "failure": failure_message,
            "steps": trajectory.n_steps,
            "final_time": float(trajectory.times[-1]),
            "wall_time_s": float(resources.get("wall_time_s", 0.0)),
            "peak_rss_mb": float(resources.get("peak_rss_mb", 0.0)),
            "newton": trajectory.newton_statistics(),
            "free_floating": is_free_floating(trajectory.boundary),
            "energy_certificate": energy_certificate_applicable(trajectory.operators),
            "max_energy_increment": float(max(post_increments, default=0.0)),
            "max_power_residual": float(
                max((record.power_residual for record in records), default=0.0)
            ),
            "max_kinematic_error": float(
                max((record.kinematic_error for record in records), default=0.0)
            ),
        }
