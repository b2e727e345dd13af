"""
Boundary conditions and boundary ports of the string.

Each end is either fixed (Dirichlet: prescribed position, zero velocity) or
loaded by a prescribed contact force (Neumann). Inputs u and collocated
outputs y are stacked over the Neumann ends in the order (left, right), with
u = (-n(0, t), n(L, t)) and y the boundary velocities, so that u . y is the
power supplied through the boundary.
"""

import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any, Union

import numpy as np
import numpy.typing as npt

from ..utils.error_handling import ConfigurationError
from .discretization import Mesh, State, SystemOperators
from .material import DEFAULT_SWITCH_TOL, MaterialLaw

if TYPE_CHECKING:
    from .integrator import Scheme


logger = logging.getLogger(__name__)

ENDS = ("left", "right")


def _vector(values: npt.ArrayLike) -> np.ndarray:
    array = np.array(values, dtype=float).reshape(-1)
    array.setflags(write=False)
    return array


class InputSignal(ABC):
    """A vector-valued function of time."""

    @property
    @abstractmethod
    def dim(self) -> int:
        """Number of components."""

    @property
    def is_constant(self) -> bool:
        return False

    @abstractmethod
    def evaluate(self, t: float) -> np.ndarray:
        """Signal value at time t."""

    @abstractmethod
    def to_dict(self) -> dict[str, Any]:
        """Mapping in scenario-file form."""


@dataclass(frozen=True, eq=False)
class ZeroSignal(InputSignal):
    """Identically zero signal."""

    size: int

    @property
    def dim(self) -> int:
        return self.size

    @property
    def is_constant(self) -> bool:
        return True

    def evaluate(self, t: float) -> np.ndarray:
        return np.zeros(self.size)

    def to_dict(self) -> dict[str, Any]:
        return {"type": "zero"}


@dataclass(frozen=True, eq=False)
class ConstantSignal(InputSignal):
    """Signal holding one value for all time."""

    value: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", _vector(self.value))

    @property
    def dim(self) -> int:
        return self.value.size

    @property
    def is_constant(self) -> bool:
        return True

    def evaluate(self, t: float) -> np.ndarray:
        return np.array(self.value)

    def to_dict(self) -> dict[str, Any]:
        return {"type": "constant", "value": self.value.tolist()}


@dataclass(frozen=True, eq=False)
class HalfSinePulse(InputSignal):
    """amplitude * sin(pi t / duration) on [0, duration], zero afterwards."""

    amplitude: np.ndarray
    duration: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "amplitude", _vector(self.amplitude))
        if not self.duration > 0:
            raise ConfigurationError(
                [f"signal.duration: must be positive, got {self.duration}"]
            )

    @property
    def dim(self) -> int:
        return self.amplitude.size

    def evaluate(self, t: float) -> np.ndarray:
        if t < 0.0 or t > self.duration:
            return np.zeros(self.amplitude.size)
        return self.amplitude * math.sin(math.pi * t / self.duration)

    def to_dict(self) -> dict[str, Any]:
        return {
            "type": "half-sine",
            "amplitude": self.amplitude.tolist(),
            "duration": self.duration,
        }


@dataclass(frozen=True, eq=False)
class PiecewiseTable(InputSignal):
    """Linear interpolation between samples, end values held outside."""

    times: np.ndarray
    values: np.ndarray

    def __post_init__(self) -> None:
        times = np.array(self.times, dtype=float).reshape(-1)
        values = np.array(self.values, dtype=float)
        if values.ndim == 1:
            values = values[:, None]
        errors = []
        if times.size == 0:
            errors.append("signal.samples: at least one sample required")
        elif np.any(np.diff(times) <= 0):
            errors.append("signal.samples: times must be strictly increasing")
        if values.shape[0] != times.size:
            errors.append("signal.samples: one value per sample time required")
        if errors:
            raise ConfigurationError(errors)
        times.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)

    @property
    def dim(self) -> int:
        return self.values.shape[1]

    @property
    def is_constant(self) -> bool:
        return bool(np.all(self.values == self.values[0]))

    def evaluate(self, t: float) -> np.ndarray:
        return np.array(
            [np.interp(t, self.times, self.values[:, i]) for i in range(self.dim)]
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "type": "table",
            "samples": [
                [float(t), *row.tolist()] for t, row in zip(self.times, self.values)
            ],
        }


@dataclass(frozen=True, eq=False)
class FixedEnd:
    """Dirichlet end pinned at ``position``."""

    position: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "position", _vector(self.position))

    def to_dict(self) -> dict[str, Any]:
        return {"type": "fixed", "position": self.position.tolist()}


@dataclass(frozen=True, eq=False)
class ForceEnd:
    """Neumann end loaded by a prescribed contact force signal [N]."""

    signal: InputSignal

    def to_dict(self) -> dict[str, Any]:
        return {"type": "force", "signal": self.signal.to_dict()}


EndCondition = Union[FixedEnd, ForceEnd]


@dataclass(frozen=True, eq=False)
class BoundarySpec:
    """Conditions at s = 0 (left) and s = L (right)."""

    left: EndCondition
    right: EndCondition

    def ends(self) -> list[tuple[str, EndCondition]]:
        return [("left", self.left), ("right", self.right)]

    def validate(self, d: int) -> None:
        errors = []
        for name, end in self.ends():
            size = end.position.size if isinstance(end, FixedEnd) else end.signal.dim
            if size != d:
                errors.append(
                    f"boundary.{name}: expected {d} components, got {size}"
                )
        if errors:
            raise ConfigurationError(errors)

    def to_dict(self) -> dict[str, Any]:
        return {name: end.to_dict() for name, end in self.ends()}


def _end_node(mesh: Mesh, name: str) -> int:
    return 0 if name == "left" else mesh.n_nodes - 1


def is_free_floating(spec: BoundarySpec) -> bool:
    """True when neither end is fixed (pure Neumann problem)."""
    return not any(isinstance(end, FixedEnd) for _, end in spec.ends())


def neumann_ends(spec: BoundarySpec) -> list[str]:
    return [name for name, end in spec.ends() if isinstance(end, ForceEnd)]


def dirichlet_ends(spec: BoundarySpec) -> list[str]:
    return [name for name, end in spec.ends() if isinstance(end, FixedEnd)]


def input_map(mesh: Mesh, spec: BoundarySpec) -> np.ndarray:
    """
    Input map B_v of shape (n_dof, d * n_neumann).

    Each Neumann slot adds its force to the DOFs of its end node.
    """
    names = neumann_ends(spec)
    B = np.zeros((mesh.n_dof, mesh.d * len(names)))
    for slot, name in enumerate(names):
        dofs = mesh.node_dofs(_end_node(mesh, name))
        B[dofs, slot * mesh.d + np.arange(mesh.d)] = 1.0
    return B


def evaluate_input(spec: BoundarySpec, t: float) -> np.ndarray:
    """
    Stacked boundary forces u(t) of the Neumann ends, ordered (left, right).

    Fixed ends have no input slot; a pure Dirichlet string yields an empty
    vector.
    """
    values = [end.signal.evaluate(t) for _, end in spec.ends() if isinstance(end, ForceEnd)]
    if not values:
        return np.zeros(0)
    return np.concatenate(values)


def constrained_dofs(mesh: Mesh, spec: BoundarySpec) -> tuple[np.ndarray, np.ndarray]:
    """
    Position DOF indices of fixed ends and their prescribed values.

    The matching velocity DOFs carry the same indices within the velocity
    block and are prescribed to zero.
    """
    indices: list[np.ndarray] = []
    values: list[np.ndarray] = []
    for name, end in spec.ends():
        if isinstance(end, FixedEnd):
            indices.append(mesh.node_dofs(_end_node(mesh, name)))
            values.append(end.position)
    if not indices:
        return np.zeros(0, dtype=int), np.zeros(0)
    return np.concatenate(indices), np.concatenate(values)


def constrained_state_indices(mesh: Mesh, spec: BoundarySpec) -> np.ndarray:
    """Indices of pinned entries in the stacked state x = [r, v, C]."""
    dofs, _ = constrained_dofs(mesh, spec)
    return np.concatenate([dofs, dofs + mesh.n_dof])


def apply_dirichlet(state: State, mesh: Mesh, spec: BoundarySpec) -> State:
    """
    State with fixed-end positions set to the prescribed values and fixed-end
    velocities set to zero. Identity when no end is fixed.
    """
    dofs, values = constrained_dofs(mesh, spec)
    if dofs.size == 0:
        return state
    r_hat = np.array(state.r_hat)
    v_hat = np.array(state.v_hat)
    r_hat[dofs] = values
    v_hat[dofs] = 0.0
    return State(r_hat, v_hat, state.C_hat)


def constrain_residual(
    residual: np.ndarray, x_next: np.ndarray, mesh: Mesh, spec: BoundarySpec
) -> np.ndarray:
    """
    Residual with the rows of pinned DOFs replaced by their constraint
    ``x - prescribed``.
    """
    dofs, values = constrained_dofs(mesh, spec)
    if dofs.size == 0:
        return residual
    constrained = np.array(residual)
    constrained[dofs] = x_next[dofs] - values
    constrained[dofs + mesh.n_dof] = x_next[dofs + mesh.n_dof]
    return constrained


def extract_output(state: State, mesh: Mesh, spec: BoundarySpec) -> np.ndarray:
    """
    Collocated output y: nodal velocities of the Neumann ends, ordered
    (left, right).
    """
    values = [
        state.v_hat[mesh.node_dofs(_end_node(mesh, name))] for name in neumann_ends(spec)
    ]
    if not values:
        return np.zeros(0)
    return np.concatenate(values)


def reaction_force(
    state_n: State,
    state_next: State,
    ops: SystemOperators,
    law: MaterialLaw,
    spec: BoundarySpec,
    h: float,
    t_n: float,
    scheme: Union["Scheme", str] = "dg",
    switch_tol: float = DEFAULT_SWITCH_TOL,
) -> np.ndarray:
    """
    Force exerted by the supports of the fixed ends over one step [N].

    Recovered from the unconstrained momentum rows at the fixed nodes: the
    support force lambda closes M_rho (v1 - v0) = h (F_b - 2 K g + B u + lambda).
    Stacked over fixed ends in the order (left, right); empty without
    Dirichlet ends.
    """
    # Deferred import: the integrator depends on this module.
    from .integrator import momentum_residual

    mesh = ops.mesh
    dofs, _ = constrained_dofs(mesh, spec)
    if dofs.size == 0:
        return np.zeros(0)
    if h <= 0:
        raise ConfigurationError([f"time.h: must be positive, got {h}"])
    residual = momentum_residual(
        state_n, state_next, ops, law, spec, h, t_n, scheme, switch_tol
    )
    return residual[dofs] / h
