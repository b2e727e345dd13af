"""
Small builders for meshes, operators and states used across tests.
"""

import numpy as np

from ph_string.core.boundary import BoundarySpec, ConstantSignal, input_map
from ph_string.core.discretization import (
    Mesh,
    State,
    SystemOperators,
    assemble_operators,
    project_initial_strain,
)


def make_operators(
    mesh: Mesh,
    spec: BoundarySpec,
    b: tuple[float, ...] = (0.0, 0.0),
    rhoA: float = 1.0,
) -> SystemOperators:
    """Operators for a mesh and boundary with a constant body force."""
    return assemble_operators(
        mesh, rhoA, ConstantSignal(np.array(b)), input_map(mesh, spec)
    )


def straight_state(mesh: Mesh, direction: tuple[float, ...] = (1.0, 0.0)) -> State:
    """Resting straight string from the origin."""
    positions = (mesh.node_coords[:, None] * np.array(direction)[None, :]).ravel()
    return State(
        positions, np.zeros(mesh.n_dof), project_initial_strain(mesh, positions)
    )


def random_state(
    mesh: Mesh,
    rng: np.random.Generator,
    C_range: tuple[float, float] = (0.5, 3.0),
) -> State:
    """Random positions, velocities and strains (not kinematically consistent)."""
    positions = (
        np.column_stack([mesh.node_coords, np.zeros(mesh.n_nodes)])
        + 0.2 * rng.standard_normal((mesh.n_nodes, 2))
    ).ravel()
    return State(
        positions,
        rng.standard_normal(mesh.n_dof),
        rng.uniform(*C_range, size=mesh.n_el),
    )
