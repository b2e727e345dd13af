"""
Energy bookkeeping and structure-preservation checks.

The discrete Hamiltonian is

    H = 1/2 v^T M_rho v + int W(C) ds - r^T F_b

with the strain energy integrated by the same 2-point Gauss rule used for
assembly.
"""

import logging
from collections.abc import Callable
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from .discretization import (
    Mesh,
    State,
    SystemOperators,
    element_strains,
    stored_energy_integral,
)
from .integrator import Scheme, Trajectory, strain_effort, structure_matrix
from .material import DEFAULT_SWITCH_TOL, MaterialLaw


logger = logging.getLogger(__name__)

SKEW_SAMPLES = 100


@dataclass(frozen=True)
class EnergyRecord:
    """Energy quantities at one grid time [J]."""

    t: float
    H_hat: float
    T_hat: float
    V_int: float
    V_ext: float
    increment: float
    power_residual: float
    kinematic_error: float

    def to_dict(self) -> dict[str, float]:
        return asdict(self)


def hamiltonian(
    state: State,
    ops: SystemOperators,
    law: MaterialLaw,
    mesh: Optional[Mesh] = None,
    F_b: Optional[np.ndarray] = None,
) -> tuple[float, float, float, float]:
    """
    Discrete Hamiltonian and its parts (H, T, V_int, V_ext).

    ``F_b`` defaults to the operators' load at t = 0.

    Raises:
        MaterialDomainError: If a strain is nonpositive
    """
    mesh = mesh or ops.mesh
    load = ops.F_b if F_b is None else F_b
    kinetic = 0.5 * float(state.v_hat @ ops.M_rho @ state.v_hat)
    internal = stored_energy_integral(mesh, law, state.C_hat)
    external = -float(state.r_hat @ load)
    return kinetic + internal + external, kinetic, internal, external


def power_balance_residual(
    H_n: float, H_next: float, u_mid: np.ndarray, y_mid: np.ndarray, h: float
) -> float:
    """|H_{n+1} - H_n - h u . y| [J]."""
    supplied = h * float(np.dot(u_mid, y_mid)) if h else 0.0
    return abs(H_next - H_n - supplied)


def discrete_gradient(
    state_n: State,
    state_next: State,
    ops: SystemOperators,
    law: MaterialLaw,
    switch_tol: float = DEFAULT_SWITCH_TOL,
) -> np.ndarray:
    """Discrete gradient of H: [-F_b, M_rho v_mid, M_S g] with g the Greenspan slope."""
    v_mid = 0.5 * (state_n.v_hat + state_next.v_hat)
    g = strain_effort(
        law, state_n.C_hat, state_next.C_hat, Scheme.DISCRETE_GRADIENT, switch_tol
    )
    return np.concatenate([-ops.F_b, ops.M_rho @ v_mid, ops.M_S @ g])


def directionality_check(
    state_n: State,
    state_next: State,
    ops: SystemOperators,
    law: MaterialLaw,
    mesh: Optional[Mesh] = None,
) -> float:
    """
    |DH(x_n, x_{n+1}) . (x_{n+1} - x_n) - (H_{n+1} - H_n)| [J].

    Vanishes up to rounding for a constant body force.
    """
    H_n = hamiltonian(state_n, ops, law, mesh)[0]
    H_next = hamiltonian(state_next, ops, law, mesh)[0]
    gradient = discrete_gradient(state_n, state_next, ops, law)
    change = state_next.stacked() - state_n.stacked()
    return abs(float(gradient @ change) - (H_next - H_n))


def kinematic_consistency(state: State, mesh: Mesh) -> float:
    """max_e |C_e - |dr_e / l_e|^2|."""
    return float(np.max(np.abs(state.C_hat - element_strains(mesh, state.r_hat))))


def skew_symmetry_check(
    state: State,
    ops: SystemOperators,
    seed: int = 0,
    samples: int = SKEW_SAMPLES,
    structure: Optional[Callable[[SystemOperators, np.ndarray], np.ndarray]] = None,
) -> float:
    """
    max |z^T J z| / (1 + |z|^2) over random z.

    ``structure`` replaces the assembly of J(r), e.g. with a perturbed matrix.
    """
    J = (structure or structure_matrix)(ops, np.asarray(state.r_hat))
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        z = rng.standard_normal(J.shape[0])
        worst = max(worst, abs(float(z @ J @ z)) / (1.0 + float(z @ z)))
    return worst


def linear_momentum(state: State, ops: SystemOperators) -> np.ndarray:
    """Total linear momentum 1^T M_rho v per spatial component [kg m/s]."""
    d = ops.mesh.d
    nodal = (ops.M_rho @ state.v_hat).reshape(-1, d)
    return nodal.sum(axis=0)


def energy_certificate_applicable(ops: SystemOperators) -> bool:
    """Whether exact energy balance is expected (constant body force)."""
    return ops.body_force_is_constant


def energy_records(trajectory: Trajectory) -> list[EnergyRecord]:
    """
    One EnergyRecord per grid time; the first record has zero increment and
    zero power residual.
    """
    ops = trajectory.operators
    law = trajectory.law
    mesh = ops.mesh
    records: list[EnergyRecord] = []
    previous: Optional[float] = None
    for index, (t, state) in enumerate(zip(trajectory.times, trajectory.states)):
        H, T_hat, V_int, V_ext = hamiltonian(state, ops, law, F_b=ops.force_at(t))
        if previous is None:
            increment = 0.0
            power_residual = 0.0
        else:
            port = trajectory.ports[index - 1]
            increment = abs(H - previous)
            power_residual = power_balance_residual(previous, H, port.u, port.y, port.h)
        records.append(
            EnergyRecord(
                t=float(t),
                H_hat=H,
                T_hat=T_hat,
                V_int=V_int,
                V_ext=V_ext,
                increment=increment,
                power_residual=power_residual,
                kinematic_error=kinematic_consistency(state, mesh),
            )
        )
        previous = H
    if not energy_certificate_applicable(ops):
        logger.warning(
            "Body force varies in time; increments are reported but not certified"
        )
    return records
