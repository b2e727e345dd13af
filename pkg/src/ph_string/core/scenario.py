"""
Scenario configuration and problem construction.

A scenario is a nested mapping (usually a YAML document) describing the
geometry, material, loads, boundary conditions, initial data, time grid,
solver and output settings of one simulation. ``ScenarioConfig.from_dict``
validates every field and reports all problems at once, each message naming
its dotted field path.
"""

import logging
import math
from dataclasses import dataclass, field, replace
from importlib import resources
from typing import Any, Optional

import numpy as np
import yaml
from scipy.optimize import brentq

from ..utils.error_handling import (
    ConfigurationError,
    MaterialDomainError,
    StringSimError,
)
from .boundary import (
    BoundarySpec,
    ConstantSignal,
    FixedEnd,
    ForceEnd,
    HalfSinePulse,
    InputSignal,
    PiecewiseTable,
    ZeroSignal,
    input_map,
)
from .diagnostics import kinematic_consistency
from .discretization import (
    Mesh,
    State,
    SystemOperators,
    assemble_body_force,
    assemble_operators,
    build_mesh,
    mesh_from_nodes,
    project_initial_strain,
)
from .integrator import JacobianMode, LinearSolver, Scheme, StepSettings
from .material import DEFAULT_SWITCH_TOL, MaterialLaw, material_from_name, tension


logger = logging.getLogger(__name__)

SCENARIO_PACKAGE = "ph_string.data"
KINEMATIC_TOLERANCE = 1e-12

R0_TYPES = ("straight", "nodal", "hanging")
V0_TYPES = ("zero", "uniform", "linear", "nodal")
SIGNAL_TYPES = ("zero", "constant", "half-sine", "table")


class _FieldReader:
    """Typed field access that collects errors instead of raising."""

    def __init__(self) -> None:
        self.errors: list[str] = []

    def fail(self, path: str, message: str) -> None:
        self.errors.append(f"{path}: {message}")

    def section(self, data: Any, key: str, path: str, required: bool = True) -> dict:
        value = data.get(key) if isinstance(data, dict) else None
        if value is None:
            if required:
                self.fail(path, "missing section")
            return {}
        if not isinstance(value, dict):
            self.fail(path, "expected a mapping")
            return {}
        return value

    def number(
        self,
        data: dict,
        key: str,
        path: str,
        default: Optional[float] = None,
        positive: bool = False,
        nonnegative: bool = False,
    ) -> Optional[float]:
        raw = data.get(key, default)
        if raw is None:
            self.fail(path, "missing value")
            return None
        if isinstance(raw, bool):
            self.fail(path, f"expected a number, got {raw!r}")
            return None
        try:
            value = float(raw)
        except (TypeError, ValueError):
            self.fail(path, f"expected a number, got {raw!r}")
            return None
        if not math.isfinite(value):
            self.fail(path, f"must be finite, got {raw!r}")
            return None
        if positive and value <= 0:
            self.fail(path, f"must be positive, got {raw!r}")
            return None
        if nonnegative and value < 0:
            self.fail(path, f"must be nonnegative, got {raw!r}")
            return None
        return value

    def integer(
        self, data: dict, key: str, path: str, default: Optional[int] = None, minimum: int = 1
    ) -> Optional[int]:
        raw = data.get(key, default)
        if raw is None:
            self.fail(path, "missing value")
            return None
        if isinstance(raw, bool) or not isinstance(raw, (int, float)) or int(raw) != raw:
            self.fail(path, f"expected an integer, got {raw!r}")
            return None
        if raw < minimum:
            self.fail(path, f"must be at least {minimum}, got {raw!r}")
            return None
        return int(raw)

    def choice(
        self, data: dict, key: str, path: str, choices: tuple[str, ...], default: Optional[str] = None
    ) -> Optional[str]:
        raw = data.get(key, default)
        if raw is None:
            self.fail(path, "missing value")
            return None
        value = str(raw).strip().lower().replace("_", "-")
        if value not in choices:
            self.fail(path, f"unknown value {raw!r} (expected one of {', '.join(choices)})")
            return None
        return value

    def vector(self, raw: Any, path: str, size: Optional[int]) -> Optional[list[float]]:
        if raw is None:
            self.fail(path, "missing value")
            return None
        if isinstance(raw, (int, float)) and not isinstance(raw, bool):
            raw = [raw]
        try:
            values = [float(item) for item in raw]
        except (TypeError, ValueError):
            self.fail(path, f"expected a list of numbers, got {raw!r}")
            return None
        if size is not None and len(values) != size:
            self.fail(path, f"expected {size} components, got {len(values)}")
            return None
        if not all(math.isfinite(value) for value in values):
            self.fail(path, "components must be finite")
            return None
        return values

    def table(self, raw: Any, path: str, rows: Optional[int], columns: Optional[int]) -> Optional[np.ndarray]:
        try:
            array = np.array(raw, dtype=float)
        except (TypeError, ValueError):
            self.fail(path, "expected a table of numbers")
            return None
        if array.ndim == 1 and columns == 1:
            array = array[:, None]
        if array.ndim != 2:
            self.fail(path, "expected a table of numbers")
            return None
        if rows is not None and array.shape[0] != rows:
            self.fail(path, f"expected {rows} rows, got {array.shape[0]}")
            return None
        if columns is not None and array.shape[1] != columns:
            self.fail(path, f"expected {columns} columns, got {array.shape[1]}")
            return None
        return array

    def signal(self, raw: Any, path: str, d: int) -> Optional[InputSignal]:
        if raw is None:
            return ZeroSignal(d)
        if isinstance(raw, (list, tuple, int, float)) and not isinstance(raw, bool):
            value = self.vector(raw, path, d)
            return ConstantSignal(np.array(value)) if value is not None else None
        if not isinstance(raw, dict):
            self.fail(path, "expected a vector or a signal mapping")
            return None
        kind = self.choice(raw, "type", f"{path}.type", SIGNAL_TYPES)
        try:
            if kind == "zero":
                return ZeroSignal(d)
            if kind == "constant":
                value = self.vector(raw.get("value"), f"{path}.value", d)
                return ConstantSignal(np.array(value)) if value is not None else None
            if kind == "half-sine":
                amplitude = self.vector(raw.get("amplitude"), f"{path}.amplitude", d)
                duration = self.number(raw, "duration", f"{path}.duration", positive=True)
                if amplitude is None or duration is None:
                    return None
                return HalfSinePulse(np.array(amplitude), duration)
            if kind == "table":
                samples = self.table(raw.get("samples"), f"{path}.samples", None, d + 1)
                if samples is None:
                    return None
                return PiecewiseTable(samples[:, 0], samples[:, 1:])
        except ConfigurationError as e:
            self.errors.extend(f"{path}: {message}" for message in e.errors)
        return None


@dataclass(frozen=True)
class GeometryConfig:
    L: float
    n_el: int
    d: int
    nodes: Optional[tuple[float, ...]] = None

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {"L": self.L, "n_el": self.n_el, "d": self.d}
        if self.nodes is not None:
            data["nodes"] = list(self.nodes)
        return data


@dataclass(frozen=True)
class MaterialConfig:
    kind: str
    EA: float

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind, "EA": self.EA}


@dataclass(frozen=True)
class InitialConfig:
    """Normalized initial-data mappings."""

    r0: dict[str, Any]
    v0: dict[str, Any]
    C0: Any = "consistent"
    override_consistency: bool = False

    def to_dict(self) -> dict[str, Any]:
        C0: Any = self.C0
        if C0 != "consistent":
            C0 = {"values": list(C0), "override": self.override_consistency}
        return {"r0": dict(self.r0), "v0": dict(self.v0), "C0": C0}


@dataclass(frozen=True)
class TimeConfig:
    h: float
    T: float

    def to_dict(self) -> dict[str, Any]:
        return {"h": self.h, "T": self.T}


@dataclass(frozen=True)
class SolverConfig:
    newton_tol: float = 1e-11
    max_iter: int = 25
    scheme: str = Scheme.DISCRETE_GRADIENT.value
    jacobian: str = JacobianMode.ANALYTIC.value
    linear_solver: str = LinearSolver.DENSE.value
    switch_tol: float = DEFAULT_SWITCH_TOL

    def to_dict(self) -> dict[str, Any]:
        return {
            "newton_tol": self.newton_tol,
            "max_iter": self.max_iter,
            "scheme": self.scheme,
            "jacobian": self.jacobian,
            "linear_solver": self.linear_solver,
            "switch_tol": self.switch_tol,
        }


@dataclass(frozen=True)
class OutputConfig:
    """Where results go; no directory means the process default."""

    directory: Optional[str] = None
    snapshot_stride: int = 1

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {"snapshot_stride": self.snapshot_stride}
        if self.directory is not None:
            data["directory"] = self.directory
        return data


@dataclass(frozen=True, eq=False)
class Problem:
    """Everything needed to integrate one scenario."""

    name: str
    mesh: Mesh
    law: MaterialLaw
    operators: SystemOperators
    boundary: BoundarySpec
    initial_state: State
    settings: StepSettings
    T: float
    snapshot_stride: int


@dataclass(frozen=True, eq=False)
class ScenarioConfig:
    """A validated simulation scenario."""

    name: str
    geometry: GeometryConfig
    material: MaterialConfig
    rhoA: float
    body_force: InputSignal
    boundary: BoundarySpec
    initial: InitialConfig
    time: TimeConfig
    solver: SolverConfig = field(default_factory=SolverConfig)
    output: OutputConfig = field(default_factory=OutputConfig)

    @classmethod
    def from_dict(cls, data: Any, name: Optional[str] = None) -> "ScenarioConfig":
        """
        Validate a scenario mapping.

        Raises:
            ConfigurationError: Listing every invalid field
        """
        if not isinstance(data, dict):
            raise ConfigurationError(["scenario: expected a mapping at top level"])
        reader = _FieldReader()

        geometry_data = reader.section(data, "geometry", "geometry")
        L = reader.number(geometry_data, "L", "geometry.L", positive=True)
        n_el = reader.integer(geometry_data, "n_el", "geometry.n_el")
        d = reader.integer(geometry_data, "d", "geometry.d", default=2)
        if d is not None and d not in (1, 2, 3):
            reader.fail("geometry.d", f"must be 1, 2 or 3, got {d}")
            d = None
        nodes = None
        if geometry_data.get("nodes") is not None:
            node_values = reader.vector(geometry_data["nodes"], "geometry.nodes", None)
            if node_values is not None:
                nodes = tuple(node_values)
                if n_el is not None and len(nodes) != n_el + 1:
                    reader.fail("geometry.nodes", f"expected {n_el + 1} coordinates")
                if L is not None and nodes and nodes[-1] != L:
                    reader.fail("geometry.nodes", "last coordinate must equal geometry.L")

        material_data = reader.section(data, "material", "material")
        kind = reader.choice(
            material_data,
            "kind",
            "material.kind",
            ("hyperelastic", "linear-elastic", "st-venant-kirchhoff"),
        )
        EA = reader.number(material_data, "EA", "material.EA", positive=True)
        rhoA = reader.number(data, "rhoA", "rhoA", positive=True)

        dim = d or 0
        body_force = reader.signal(data.get("body_force"), "body_force", dim) if d else None

        boundary = None
        boundary_data = reader.section(data, "boundary", "boundary")
        if d:
            ends = {}
            for end in ("left", "right"):
                ends[end] = _read_end(reader, boundary_data.get(end), f"boundary.{end}", d)
            if all(ends.values()):
                boundary = BoundarySpec(ends["left"], ends["right"])

        initial = _read_initial(reader, reader.section(data, "initial", "initial"), d, n_el)

        time_data = reader.section(data, "time", "time")
        h = reader.number(time_data, "h", "time.h", positive=True)
        T = reader.number(time_data, "T", "time.T", nonnegative=True)

        solver_data = reader.section(data, "solver", "solver", required=False)
        solver = _read_solver(reader, solver_data)

        output_data = reader.section(data, "output", "output", required=False)
        stride = reader.integer(
            output_data, "snapshot_stride", "output.snapshot_stride", 1
        )
        directory = output_data.get("directory")
        output = OutputConfig(
            directory=str(directory) if directory is not None else None,
            snapshot_stride=stride or 1,
        )

        if reader.errors:
            raise ConfigurationError(reader.errors)

        assert L is not None and n_el is not None and d is not None
        assert kind is not None and EA is not None and rhoA is not None
        assert body_force is not None and boundary is not None and initial is not None
        assert h is not None and T is not None

        config = cls(
            name=str(name or data.get("name", "scenario")),
            geometry=GeometryConfig(L, n_el, d, nodes),
            material=MaterialConfig(kind, EA),
            rhoA=rhoA,
            body_force=body_force,
            boundary=boundary,
            initial=initial,
            time=TimeConfig(h, T),
            solver=solver,
            output=output,
        )
        # initial-data errors surface at load time
        try:
            config.build_problem()
        except MaterialDomainError as e:
            raise ConfigurationError([f"initial: {e}"], e) from e
        return config

    def to_dict(self) -> dict[str, Any]:
        """Mapping that ``from_dict`` accepts and that yields an equivalent config."""
        return {
            "name": self.name,
            "geometry": self.geometry.to_dict(),
            "material": self.material.to_dict(),
            "rhoA": self.rhoA,
            "body_force": self.body_force.to_dict(),
            "boundary": self.boundary.to_dict(),
            "initial": self.initial.to_dict(),
            "time": self.time.to_dict(),
            "solver": self.solver.to_dict(),
            "output": self.output.to_dict(),
        }

    def with_overrides(
        self,
        scheme: Optional[str] = None,
        newton_tol: Optional[float] = None,
        steps: Optional[int] = None,
        output_dir: Optional[str] = None,
    ) -> "ScenarioConfig":
        """Copy with command-line overrides applied."""
        errors = []
        solver = self.solver
        time = self.time
        output = self.output
        if scheme is not None:
            solver = replace(solver, scheme=scheme)
        if newton_tol is not None:
            if not newton_tol > 0:
                errors.append(f"solver.newton_tol: must be positive, got {newton_tol}")
            solver = replace(solver, newton_tol=newton_tol)
        if steps is not None:
            if steps < 0:
                errors.append(f"time.T: step count must be nonnegative, got {steps}")
            time = replace(time, T=steps * time.h)
        if output_dir is not None:
            output = replace(output, directory=str(output_dir))
        if errors:
            raise ConfigurationError(errors)
        return replace(self, solver=solver, time=time, output=output)

    def step_settings(self) -> StepSettings:
        return StepSettings(
            h=self.time.h,
            newton_tol=self.solver.newton_tol,
            max_iter=self.solver.max_iter,
            scheme=Scheme(self.solver.scheme),
            jacobian=JacobianMode(self.solver.jacobian),
            linear_solver=LinearSolver(self.solver.linear_solver),
            switch_tol=self.solver.switch_tol,
        )

    def build_mesh(self) -> Mesh:
        if self.geometry.nodes is not None:
            return mesh_from_nodes(self.geometry.nodes, self.geometry.d)
        return build_mesh(self.geometry.L, self.geometry.n_el, self.geometry.d)

    def build_problem(self) -> Problem:
        """
        Assemble operators and initial state.

        Raises:
            ConfigurationError: If the initial data are inconsistent
            MaterialDomainError: If initial positions collapse an element
        """
        mesh = self.build_mesh()
        law = material_from_name(self.material.kind, self.material.EA)
        self.boundary.validate(mesh.d)
        operators = assemble_operators(
            mesh, self.rhoA, self.body_force, input_map(mesh, self.boundary)
        )
        initial_state = initial_state_from_config(
            self.initial, mesh, law, self.body_force, self.boundary
        )
        return Problem(
            name=self.name,
            mesh=mesh,
            law=law,
            operators=operators,
            boundary=self.boundary,
            initial_state=initial_state,
            settings=self.step_settings(),
            T=self.time.T,
            snapshot_stride=self.output.snapshot_stride,
        )


def _read_solver(reader: _FieldReader, data: dict) -> SolverConfig:
    defaults = SolverConfig()
    newton_tol = reader.number(
        data, "newton_tol", "solver.newton_tol", defaults.newton_tol, positive=True
    )
    max_iter = reader.integer(data, "max_iter", "solver.max_iter", defaults.max_iter)
    scheme = reader.choice(
        data, "scheme", "solver.scheme", tuple(s.value for s in Scheme), defaults.scheme
    )
    jacobian = reader.choice(
        data,
        "jacobian",
        "solver.jacobian",
        tuple(mode.value for mode in JacobianMode),
        defaults.jacobian,
    )
    linear_solver = reader.choice(
        data,
        "linear_solver",
        "solver.linear_solver",
        tuple(s.value for s in LinearSolver),
        defaults.linear_solver,
    )
    switch_tol = reader.number(
        data, "switch_tol", "solver.switch_tol", defaults.switch_tol, positive=True
    )
    return SolverConfig(
        newton_tol=newton_tol or defaults.newton_tol,
        max_iter=max_iter or defaults.max_iter,
        scheme=scheme or defaults.scheme,
        jacobian=jacobian or defaults.jacobian,
        linear_solver=linear_solver or defaults.linear_solver,
        switch_tol=switch_tol or defaults.switch_tol,
    )


def _read_end(reader: _FieldReader, raw: Any, path: str, d: int) -> Any:
    if not isinstance(raw, dict):
        reader.fail(path, "expected a mapping with a 'type' key")
        return None
    kind = reader.choice(raw, "type", f"{path}.type", ("fixed", "force"))
    if kind == "fixed":
        position = reader.vector(raw.get("position", [0.0] * d), f"{path}.position", d)
        return FixedEnd(np.array(position)) if position is not None else None
    if kind == "force":
        signal = reader.signal(raw.get("signal"), f"{path}.signal", d)
        return ForceEnd(signal) if signal is not None else None
    return None


def _read_initial(
    reader: _FieldReader, data: dict, d: Optional[int], n_el: Optional[int]
) -> Optional[InitialConfig]:
    if not d or not n_el:
        return None
    n_nodes = n_el + 1
    errors_before = len(reader.errors)

    r0_raw = data.get("r0", {"type": "straight"})
    r0: dict[str, Any] = {}
    if not isinstance(r0_raw, dict):
        reader.fail("initial.r0", "expected a mapping")
    else:
        kind = reader.choice(r0_raw, "type", "initial.r0.type", R0_TYPES, "straight")
        r0["type"] = kind
        if kind == "straight":
            default_direction = [1.0] + [0.0] * (d - 1)
            r0["origin"] = reader.vector(r0_raw.get("origin", [0.0] * d), "initial.r0.origin", d)
            r0["direction"] = reader.vector(
                r0_raw.get("direction", default_direction), "initial.r0.direction", d
            )
            if r0["direction"] is not None and not any(r0["direction"]):
                reader.fail("initial.r0.direction", "must be nonzero")
        elif kind == "nodal":
            table = reader.table(r0_raw.get("positions"), "initial.r0.positions", n_nodes, d)
            r0["positions"] = table.tolist() if table is not None else None

    v0_raw = data.get("v0", {"type": "zero"})
    v0: dict[str, Any] = {}
    if not isinstance(v0_raw, dict):
        reader.fail("initial.v0", "expected a mapping")
    else:
        kind = reader.choice(v0_raw, "type", "initial.v0.type", V0_TYPES, "zero")
        v0["type"] = kind
        if kind == "uniform":
            v0["value"] = reader.vector(v0_raw.get("value"), "initial.v0.value", d)
        elif kind == "linear":
            v0["start"] = reader.vector(v0_raw.get("start"), "initial.v0.start", d)
            v0["end"] = reader.vector(v0_raw.get("end"), "initial.v0.end", d)
        elif kind == "nodal":
            table = reader.table(v0_raw.get("values"), "initial.v0.values", n_nodes, d)
            v0["values"] = table.tolist() if table is not None else None

    C0_raw = data.get("C0", "consistent")
    C0: Any = "consistent"
    override = False
    if C0_raw != "consistent":
        if isinstance(C0_raw, dict):
            override = bool(C0_raw.get("override", False))
            C0_raw = C0_raw.get("values")
        if isinstance(C0_raw, (int, float)) and not isinstance(C0_raw, bool):
            C0_raw = [C0_raw] * n_el
        values = reader.vector(C0_raw, "initial.C0", n_el)
        if values is not None:
            if any(value <= 0 for value in values):
                reader.fail("initial.C0", "strains must be positive")
            C0 = tuple(values)

    if len(reader.errors) > errors_before:
        return None
    return InitialConfig(r0=r0, v0=v0, C0=C0, override_consistency=override)


def hanging_positions(
    mesh: Mesh,
    law: MaterialLaw,
    body_force: InputSignal,
    boundary: BoundarySpec,
) -> np.ndarray:
    """
    Nodal positions of the discrete static equilibrium under a constant load.

    The left end must be fixed. Each element carries the sum of the nodal
    loads below it (including a constant right-end force); its direction
    follows that sum and its stretch solves N(nu) = |sum| by root finding.

    Raises:
        ConfigurationError: If the setup has no such equilibrium
    """
    errors = []
    if not isinstance(boundary.left, FixedEnd):
        errors.append("initial.r0: hanging positions need a fixed left end")
    if not body_force.is_constant:
        errors.append("initial.r0: hanging positions need a constant body force")
    end_force = np.zeros(mesh.d)
    if isinstance(boundary.right, ForceEnd):
        if not boundary.right.signal.is_constant:
            errors.append("initial.r0: hanging positions need a constant right-end force")
        end_force = boundary.right.signal.evaluate(0.0)
    else:
        errors.append("initial.r0: hanging positions need a force-controlled right end")
    if errors:
        raise ConfigurationError(errors)
    assert isinstance(boundary.left, FixedEnd)

    nodal = assemble_body_force(mesh, body_force.evaluate(0.0)).reshape(mesh.n_nodes, mesh.d)
    nodal[-1] += end_force
    # load carried by element e: everything attached to nodes e+1 ... N
    carried = np.cumsum(nodal[::-1], axis=0)[::-1][1:]
    positions = np.zeros((mesh.n_nodes, mesh.d))
    positions[0] = boundary.left.position
    for e, (length, load) in enumerate(zip(mesh.elem_lengths, carried)):
        magnitude = float(np.linalg.norm(load))
        if magnitude == 0.0:
            raise ConfigurationError(
                [f"initial.r0: element {e} carries no load; hanging shape undefined"]
            )
        upper = 2.0
        while tension(law, upper) < magnitude:
            upper *= 2.0
        stretch = brentq(lambda nu: tension(law, nu) - magnitude, 1.0, upper, xtol=1e-15)
        positions[e + 1] = positions[e] + stretch * length * load / magnitude
    return positions.ravel()


def _check_fixed_ends(r_hat: np.ndarray, mesh: Mesh, boundary: BoundarySpec) -> None:
    """Initial positions must already sit on every fixed end."""
    positions = r_hat.reshape(mesh.n_nodes, mesh.d)
    errors = []
    for end, condition in boundary.ends():
        if not isinstance(condition, FixedEnd):
            continue
        node = 0 if end == "left" else mesh.n_nodes - 1
        target = np.asarray(condition.position, dtype=float)
        deviation = float(np.max(np.abs(positions[node] - target)))
        if deviation > KINEMATIC_TOLERANCE * max(1.0, float(np.max(np.abs(target)))):
            errors.append(
                f"initial.r0: node {node} starts at {positions[node].tolist()} "
                f"but boundary.{end}.position is {target.tolist()}"
            )
    if errors:
        raise ConfigurationError(errors)


def initial_state_from_config(
    initial: InitialConfig,
    mesh: Mesh,
    law: MaterialLaw,
    body_force: InputSignal,
    boundary: BoundarySpec,
) -> State:
    """Initial State from normalized initial-data settings."""
    d = mesh.d
    kind = initial.r0.get("type", "straight")
    if kind == "straight":
        origin = np.array(initial.r0.get("origin", [0.0] * d))
        direction = np.array(initial.r0.get("direction", [1.0] + [0.0] * (d - 1)))
        r_hat = (origin[None, :] + mesh.node_coords[:, None] * direction[None, :]).ravel()
    elif kind == "nodal":
        r_hat = np.array(initial.r0["positions"], dtype=float).ravel()
    else:
        r_hat = hanging_positions(mesh, law, body_force, boundary)
    _check_fixed_ends(r_hat, mesh, boundary)

    v_kind = initial.v0.get("type", "zero")
    if v_kind == "zero":
        v_hat = np.zeros(mesh.n_dof)
    elif v_kind == "uniform":
        v_hat = np.tile(np.array(initial.v0["value"], dtype=float), mesh.n_nodes)
    elif v_kind == "linear":
        start = np.array(initial.v0["start"], dtype=float)
        end = np.array(initial.v0["end"], dtype=float)
        fraction = (mesh.node_coords / mesh.L)[:, None]
        v_hat = (start[None, :] + fraction * (end - start)[None, :]).ravel()
    else:
        v_hat = np.array(initial.v0["values"], dtype=float).ravel()

    if initial.C0 == "consistent":
        return State(r_hat, v_hat, project_initial_strain(mesh, r_hat))

    state = State(r_hat, v_hat, np.array(initial.C0, dtype=float))
    error = kinematic_consistency(state, mesh)
    if error > KINEMATIC_TOLERANCE:
        if not initial.override_consistency:
            raise ConfigurationError(
                [
                    f"initial.C0: inconsistent with initial positions "
                    f"(max deviation {error:.3e}); set override: true to accept"
                ]
            )
        logger.warning(f"Using inconsistent initial strains (max deviation {error:.3e})")
    return state


def builtin_scenarios() -> list[str]:
    """Names of the scenarios shipped with the package."""
    directory = resources.files(SCENARIO_PACKAGE).joinpath("scenarios")
    return sorted(
        entry.name[: -len(".yaml")]
        for entry in directory.iterdir()
        if entry.name.endswith(".yaml")
    )


def builtin_scenario(name: str) -> ScenarioConfig:
    """
    Load a built-in scenario by name.

    Raises:
        ConfigurationError: If no scenario has that name
    """
    if name not in builtin_scenarios():
        raise ConfigurationError(
            [f"scenario: unknown built-in {name!r} (available: {', '.join(builtin_scenarios())})"]
        )
    resource = resources.files(SCENARIO_PACKAGE).joinpath("scenarios").joinpath(f"{name}.yaml")
    text = resource.read_text(encoding="utf-8")
    return ScenarioConfig.from_dict(yaml.safe_load(text), name=name)


def config_errors(error: Exception) -> list[str]:
    """Messages of a configuration failure for display."""
    if isinstance(error, ConfigurationError):
        return error.errors
    if isinstance(error, StringSimError):
        return [str(error)]
    return [f"{type(error).__name__}: {error}"]
