"""
Mixed finite element discretization of the string.

Positions and velocities use continuous, piecewise linear Lagrange shape
functions; strain and stress are constant per element. Degrees of freedom
are ordered node-major, component-minor: ``[r_1x, r_1y, r_2x, r_2y, ...]``.

All element integrals are evaluated with the 2-point Gauss-Legendre rule,
which is exact for every integrand assembled here.
"""

import logging
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Optional

import numpy as np
import numpy.typing as npt
from scipy import sparse

from ..utils.error_handling import ConfigurationError, MaterialDomainError
from ..utils.logging_config import log_function_call
from .material import MaterialLaw, stored_energy_density


if TYPE_CHECKING:
    from .boundary import InputSignal


logger = logging.getLogger(__name__)

GAUSS_POINTS, GAUSS_WEIGHTS = np.polynomial.legendre.leggauss(2)


def _readonly(values: npt.ArrayLike) -> np.ndarray:
    array = np.array(values, dtype=float)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class Mesh:
    """Partition of the material domain [0, L] into line elements."""

    node_coords: np.ndarray
    d: int

    def __post_init__(self) -> None:
        coords = np.asarray(self.node_coords, dtype=float)
        errors = []
        if coords.ndim != 1 or coords.size < 2:
            errors.append("geometry.nodes: need at least two node coordinates")
        elif coords[0] != 0.0:
            errors.append("geometry.nodes: first node must be at s = 0")
        elif np.any(np.diff(coords) <= 0):
            errors.append("geometry.nodes: coordinates must be strictly increasing")
        if self.d not in (1, 2, 3):
            errors.append(f"geometry.d: must be 1, 2 or 3, got {self.d}")
        if errors:
            raise ConfigurationError(errors)
        object.__setattr__(self, "node_coords", _readonly(coords))

    @property
    def L(self) -> float:
        return float(self.node_coords[-1])

    @property
    def n_el(self) -> int:
        return self.node_coords.size - 1

    @property
    def n_nodes(self) -> int:
        return self.node_coords.size

    @property
    def n_dof(self) -> int:
        """Number of position (or velocity) degrees of freedom."""
        return self.n_nodes * self.d

    @property
    def elem_lengths(self) -> np.ndarray:
        return np.diff(self.node_coords)

    def node_dofs(self, node: int) -> np.ndarray:
        """DOF indices of one node."""
        if node < 0:
            node += self.n_nodes
        return np.arange(node * self.d, (node + 1) * self.d)


def build_mesh(L: float, n_el: int, d: int) -> Mesh:
    """
    Uniform mesh of ``n_el`` elements on [0, L] in ``d`` spatial dimensions.

    Raises:
        ConfigurationError: If L <= 0, n_el < 1 or d not in {1, 2, 3}
    """
    errors = []
    if not L > 0:
        errors.append(f"geometry.L: must be positive, got {L}")
    if int(n_el) != n_el or n_el < 1:
        errors.append(f"geometry.n_el: must be a positive integer, got {n_el}")
    if d not in (1, 2, 3):
        errors.append(f"geometry.d: must be 1, 2 or 3, got {d}")
    if errors:
        raise ConfigurationError(errors)
    coords = np.linspace(0.0, float(L), int(n_el) + 1)
    coords[-1] = float(L)
    return Mesh(coords, int(d))


def mesh_from_nodes(node_coords: npt.ArrayLike, d: int) -> Mesh:
    """Mesh with user-supplied, possibly nonuniform node coordinates."""
    return Mesh(np.asarray(node_coords, dtype=float), int(d))


@dataclass(frozen=True, eq=False)
class State:
    """Discrete state: nodal positions, nodal velocities, element strains."""

    r_hat: np.ndarray
    v_hat: np.ndarray
    C_hat: np.ndarray

    def __post_init__(self) -> None:
        r_hat = _readonly(self.r_hat)
        v_hat = _readonly(self.v_hat)
        C_hat = _readonly(self.C_hat)
        if r_hat.shape != v_hat.shape:
            raise ConfigurationError(
                ["state: position and velocity arrays differ in length"]
            )
        if np.any(~(C_hat > 0)):
            raise MaterialDomainError("state: element strains must be positive")
        object.__setattr__(self, "r_hat", r_hat)
        object.__setattr__(self, "v_hat", v_hat)
        object.__setattr__(self, "C_hat", C_hat)

    def check(self, mesh: Mesh) -> None:
        """Raise if array lengths do not match the mesh."""
        errors = []
        if self.r_hat.size != mesh.n_dof:
            errors.append(f"state.r_hat: expected {mesh.n_dof} entries")
        if self.v_hat.size != mesh.n_dof:
            errors.append(f"state.v_hat: expected {mesh.n_dof} entries")
        if self.C_hat.size != mesh.n_el:
            errors.append(f"state.C_hat: expected {mesh.n_el} entries")
        if errors:
            raise ConfigurationError(errors)

    def stacked(self) -> np.ndarray:
        """The state vector x = [r, v, C]."""
        return np.concatenate([self.r_hat, self.v_hat, self.C_hat])

    @classmethod
    def from_stacked(cls, x: np.ndarray, n_dof: int) -> "State":
        return cls(x[:n_dof], x[n_dof : 2 * n_dof], x[2 * n_dof :])

    def positions(self, d: int) -> np.ndarray:
        """Nodal positions as an (n_nodes, d) array."""
        return self.r_hat.reshape(-1, d)


@dataclass(frozen=True, eq=False)
class SystemOperators:
    """Assembled semi-discrete operators of one string model."""

    mesh: Mesh
    rhoA: float
    M_rho: np.ndarray
    M_S: np.ndarray
    load_map: np.ndarray
    body_force: "InputSignal"
    B: np.ndarray
    F_b: np.ndarray = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "F_b", self.force_at(0.0))

    @property
    def strain_weights(self) -> np.ndarray:
        """Diagonal of M_S."""
        return np.diag(self.M_S).copy()

    @property
    def body_force_is_constant(self) -> bool:
        return self.body_force.is_constant

    def force_at(self, t: float) -> np.ndarray:
        """Consistent body-force load F_b at time t."""
        return self.load_map @ np.asarray(self.body_force.evaluate(t), dtype=float)


def _shape_values() -> np.ndarray:
    """Linear shape function values at the Gauss points, shape (n_gp, 2)."""
    return np.column_stack([(1.0 - GAUSS_POINTS) / 2.0, (1.0 + GAUSS_POINTS) / 2.0])


def _node_pairs(mesh: Mesh) -> np.ndarray:
    return np.column_stack([np.arange(mesh.n_el), np.arange(1, mesh.n_el + 1)])


def _assemble_scalar(mesh: Mesh, element_blocks: np.ndarray) -> np.ndarray:
    """Sum (n_el, 2, 2) element blocks into an (n_nodes, n_nodes) matrix."""
    pairs = _node_pairs(mesh)
    rows = np.repeat(pairs, 2, axis=1).ravel()
    cols = np.tile(pairs, (1, 2)).ravel()
    matrix = sparse.coo_matrix(
        (element_blocks.ravel(), (rows, cols)), shape=(mesh.n_nodes, mesh.n_nodes)
    )
    return matrix.toarray()


def assemble_mass(mesh: Mesh, rhoA: float) -> np.ndarray:
    """
    Consistent mass matrix M_rho = int Phi^T rhoA Phi ds.

    Per element of length l and spatial component the block is
    (rhoA l / 6) [[2, 1], [1, 2]].

    Raises:
        ConfigurationError: If rhoA <= 0
    """
    if not rhoA > 0:
        raise ConfigurationError([f"rhoA: must be positive, got {rhoA}"])
    N = _shape_values()
    reference = np.einsum("q,qa,qb->ab", GAUSS_WEIGHTS, N, N) / 2.0
    blocks = rhoA * mesh.elem_lengths[:, None, None] * reference[None, :, :]
    return np.kron(_assemble_scalar(mesh, blocks), np.eye(mesh.d))


def assemble_strain_mass(mesh: Mesh) -> np.ndarray:
    """M_S = int Psi^T Psi ds, diagonal with the element lengths."""
    weights = GAUSS_WEIGHTS.sum() / 2.0 * mesh.elem_lengths
    return np.diag(weights)


def assemble_load_map(mesh: Mesh) -> np.ndarray:
    """Matrix P with F_b = P b for a spatially constant body force b."""
    N = _shape_values()
    nodal = np.zeros(mesh.n_nodes)
    element = np.einsum("q,qa->a", GAUSS_WEIGHTS, N) / 2.0
    np.add.at(nodal, _node_pairs(mesh), mesh.elem_lengths[:, None] * element)
    return np.kron(nodal[:, None], np.eye(mesh.d))


def assemble_body_force(mesh: Mesh, b: npt.ArrayLike) -> np.ndarray:
    """
    Consistent nodal load F_b = int Phi^T b ds of a constant body force.

    Each element passes b * l / 2 to both of its nodes.
    """
    vector = np.asarray(b, dtype=float).reshape(-1)
    if vector.size != mesh.d:
        raise ConfigurationError(
            [f"body_force: expected {mesh.d} components, got {vector.size}"]
        )
    return assemble_load_map(mesh) @ vector


def _element_tangents(mesh: Mesh, r_hat: np.ndarray) -> np.ndarray:
    """dr/ds per element, shape (n_el, d)."""
    nodes = np.asarray(r_hat, dtype=float).reshape(mesh.n_nodes, mesh.d)
    return np.diff(nodes, axis=0) / mesh.elem_lengths[:, None]


def assemble_tangent_coupling(mesh: Mesh, r_hat: npt.ArrayLike) -> np.ndarray:
    """
    Coupling matrix K(r) = int Phi_s^T Phi_s r Psi ds, shape (n_dof, n_el).

    Element e contributes the column block [-dr_e/l_e ; +dr_e/l_e] on its two
    nodes. K is linear in r.
    """
    tangents = _element_tangents(mesh, np.asarray(r_hat, dtype=float))
    # Phi_s integrated against a constant: sum_q w_q (l/2) * (1/l)
    scale = GAUSS_WEIGHTS.sum() / 2.0
    K = np.zeros((mesh.n_dof, mesh.n_el))
    elements = np.arange(mesh.n_el)
    for component in range(mesh.d):
        K[elements * mesh.d + component, elements] = -scale * tangents[:, component]
        K[(elements + 1) * mesh.d + component, elements] = (
            scale * tangents[:, component]
        )
    return K


def tension_stiffness(mesh: Mesh, g: npt.ArrayLike) -> np.ndarray:
    """
    Matrix A(g) with K(r) @ g == A(g) @ r for every r.

    Element block: (g_e / l_e) [[1, -1], [-1, 1]] per spatial component.
    """
    factors = np.asarray(g, dtype=float) / mesh.elem_lengths
    blocks = factors[:, None, None] * np.array([[1.0, -1.0], [-1.0, 1.0]])
    return np.kron(_assemble_scalar(mesh, blocks), np.eye(mesh.d))


def element_strains(mesh: Mesh, r_hat: npt.ArrayLike) -> np.ndarray:
    """|dr/ds|^2 per element for the given nodal positions."""
    tangents = _element_tangents(mesh, np.asarray(r_hat, dtype=float))
    return np.einsum("ei,ei->e", tangents, tangents)


def project_initial_strain(mesh: Mesh, r_hat0: npt.ArrayLike) -> np.ndarray:
    """
    Consistent element strains C_e = |dr_e / l_e|^2 for given positions.

    Raises:
        MaterialDomainError: If an element is collapsed to a point
    """
    strains = element_strains(mesh, r_hat0)
    degenerate = np.flatnonzero(strains <= 0)
    if degenerate.size:
        logger.warning(f"Degenerate elements in initial positions: {degenerate}")
        raise MaterialDomainError(
            f"initial positions collapse elements {degenerate.tolist()} to a point"
        )
    return strains


def stored_energy_integral(
    mesh: Mesh, law: MaterialLaw, C_hat: npt.ArrayLike
) -> float:
    """Internal energy int W(C^h) ds with elementwise constant strains [J]."""
    density = np.asarray(stored_energy_density(law, C_hat), dtype=float)
    per_element = density * mesh.elem_lengths
    return float(np.sum(GAUSS_WEIGHTS.sum() / 2.0 * per_element))


@log_function_call
def assemble_operators(
    mesh: Mesh,
    rhoA: float,
    body_force: "InputSignal",
    input_map: np.ndarray,
) -> SystemOperators:
    """
    Assemble every operator of the semi-discrete model.

    Args:
        mesh: Finite element mesh
        rhoA: Mass per unit length [kg/m]
        body_force: Body force per unit length as a signal of time [N/m]
        input_map: Boundary input map B of shape (n_dof, n_inputs)
    """
    load_map = assemble_load_map(mesh)
    return SystemOperators(
        mesh=mesh,
        rhoA=float(rhoA),
        M_rho=assemble_mass(mesh, rhoA),
        M_S=assemble_strain_mass(mesh),
        load_map=load_map,
        body_force=body_force,
        B=np.asarray(input_map, dtype=float),
    )


def zero_state(mesh: Mesh, positions: Optional[np.ndarray] = None) -> State:
    """Resting state on the given positions (straight reference by default)."""
    if positions is None:
        nodes = np.zeros((mesh.n_nodes, mesh.d))
        nodes[:, 0] = mesh.node_coords
        positions = nodes.ravel()
    return State(positions, np.zeros(mesh.n_dof), project_initial_strain(mesh, positions))
