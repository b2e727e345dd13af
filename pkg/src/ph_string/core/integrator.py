"""
Time integration of the semi-discrete port-Hamiltonian string model.

The semi-discrete system reads E dx/dt = J(x) z + B u with

    E = diag(I, M_rho, M_S)
    J = [[0, I, 0], [-I, 0, -2K(r)], [0, 2K(r)^T, 0]]
    z = (-F_b, v, dW/dC)

One step solves E (x1 - x0) = h J(x_mid) z_mid + h B u(t_n + h/2) for x1 with
Newton's method. The discrete-gradient scheme uses the Greenspan secant slope
for dW/dC, the midpoint scheme evaluates dW/dC at the midpoint strain.
"""

import logging
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import TYPE_CHECKING, Optional, Union

import numpy as np
from scipy import linalg, sparse
from scipy.sparse.linalg import spsolve

from ..utils.error_handling import (
    ConfigurationError,
    ConvergenceError,
    SimulationFailure,
)
from ..utils.logging_config import get_logger, log_function_call
from .boundary import (
    BoundarySpec,
    apply_dirichlet,
    constrain_residual,
    constrained_state_indices,
    evaluate_input,
    extract_output,
    is_free_floating,
    reaction_force,
)
from .discretization import (
    State,
    SystemOperators,
    assemble_tangent_coupling,
    tension_stiffness,
)
from .material import (
    DEFAULT_SWITCH_TOL,
    MaterialLaw,
    energy_derivative,
    greenspan_derivative,
    greenspan_derivative_dC_next,
    second_derivative,
)


if TYPE_CHECKING:
    from .scenario import ScenarioConfig


logger = logging.getLogger(__name__)

MAX_BACKTRACKS = 30
FD_STEP = 1e-7


class Scheme(Enum):
    """Time discretization of the effort dW/dC."""

    DISCRETE_GRADIENT = "dg"
    MIDPOINT = "midpoint"


class JacobianMode(Enum):
    ANALYTIC = "analytic"
    FINITE_DIFFERENCE = "fd"


class LinearSolver(Enum):
    DENSE = "dense"
    SPARSE = "sparse"


def _enum_value(enum_type: type[Enum], value: Union[str, Enum], field_name: str) -> Enum:
    if isinstance(value, enum_type):
        return value
    try:
        return enum_type(str(value).strip().lower())
    except ValueError as e:
        choices = ", ".join(member.value for member in enum_type)  # type: ignore[attr-defined]
        raise ConfigurationError(
            [f"{field_name}: unknown value {value!r} (expected one of {choices})"], e
        ) from e


@dataclass(frozen=True)
class StepSettings:
    """Step size and Newton solver settings."""

    h: float
    newton_tol: float = 1e-11
    max_iter: int = 25
    scheme: Scheme = Scheme.DISCRETE_GRADIENT
    jacobian: JacobianMode = JacobianMode.ANALYTIC
    linear_solver: LinearSolver = LinearSolver.DENSE
    switch_tol: float = DEFAULT_SWITCH_TOL

    def __post_init__(self) -> None:
        errors = []
        if not (math.isfinite(self.h) and self.h > 0):
            errors.append(f"time.h: must be positive, got {self.h}")
        if not (math.isfinite(self.newton_tol) and self.newton_tol > 0):
            errors.append(f"solver.newton_tol: must be positive, got {self.newton_tol}")
        if int(self.max_iter) != self.max_iter or self.max_iter < 1:
            errors.append(f"solver.max_iter: must be at least 1, got {self.max_iter}")
        if not self.switch_tol > 0:
            errors.append(f"solver.switch_tol: must be positive, got {self.switch_tol}")
        for name, enum_type in (
            ("scheme", Scheme),
            ("jacobian", JacobianMode),
            ("linear_solver", LinearSolver),
        ):
            try:
                object.__setattr__(
                    self,
                    name,
                    _enum_value(enum_type, getattr(self, name), f"solver.{name}"),
                )
            except ConfigurationError as e:
                errors.extend(e.errors)
        if errors:
            raise ConfigurationError(errors)


@dataclass
class StepReport:
    """Outcome of one Newton solve."""

    iterations: int
    final_residual_norm: float
    converged: bool
    residual_history: list[float] = field(default_factory=list)
    message: str = ""


@dataclass(frozen=True, eq=False)
class PortSample:
    """Boundary port values over one step, evaluated at its midpoint time."""

    t_mid: float
    h: float
    u: np.ndarray
    y: np.ndarray
    reaction: np.ndarray

    @property
    def supplied_energy(self) -> float:
        """h * u . y [J]."""
        return float(self.h * np.dot(self.u, self.y))


@dataclass
class Trajectory:
    """
    States of a simulation run at the grid times.

    ``reports[k]``, ``ports[k]`` and ``step_sizes[k]`` describe the step from
    ``times[k]`` to ``times[k + 1]``.
    """

    operators: SystemOperators
    law: MaterialLaw
    boundary: BoundarySpec
    settings: StepSettings
    times: list[float] = field(default_factory=list)
    states: list[State] = field(default_factory=list)
    reports: list[StepReport] = field(default_factory=list)
    ports: list[PortSample] = field(default_factory=list)
    step_sizes: list[float] = field(default_factory=list)
    failure: Optional[StepReport] = None
    failed_step: Optional[int] = None

    @property
    def succeeded(self) -> bool:
        return self.failure is None

    @property
    def n_steps(self) -> int:
        return len(self.reports)

    def newton_statistics(self) -> dict[str, float]:
        iterations = [report.iterations for report in self.reports]
        residuals = [report.final_residual_norm for report in self.reports]
        return {
            "steps": len(iterations),
            "total_iterations": int(sum(iterations)),
            "max_iterations": int(max(iterations, default=0)),
            "mean_iterations": float(np.mean(iterations)) if iterations else 0.0,
            "max_final_residual": float(max(residuals, default=0.0)),
        }


def strain_effort(
    law: MaterialLaw,
    C_n: np.ndarray,
    C_next: np.ndarray,
    scheme: Union[Scheme, str] = Scheme.DISCRETE_GRADIENT,
    switch_tol: float = DEFAULT_SWITCH_TOL,
) -> np.ndarray:
    """Element efforts dW/dC used over one step by the given scheme."""
    scheme = _enum_value(Scheme, scheme, "scheme")
    if scheme is Scheme.DISCRETE_GRADIENT:
        effort = greenspan_derivative(law, C_n, C_next, switch_tol)
    else:
        effort = energy_derivative(law, 0.5 * (np.asarray(C_n) + np.asarray(C_next)))
    return np.atleast_1d(np.asarray(effort, dtype=float))


def strain_effort_dC_next(
    law: MaterialLaw,
    C_n: np.ndarray,
    C_next: np.ndarray,
    scheme: Union[Scheme, str] = Scheme.DISCRETE_GRADIENT,
    switch_tol: float = DEFAULT_SWITCH_TOL,
) -> np.ndarray:
    scheme = _enum_value(Scheme, scheme, "scheme")
    if scheme is Scheme.DISCRETE_GRADIENT:
        slope = greenspan_derivative_dC_next(law, C_n, C_next, switch_tol)
    else:
        slope = 0.5 * np.asarray(
            second_derivative(law, 0.5 * (np.asarray(C_n) + np.asarray(C_next)))
        )
    return np.atleast_1d(np.asarray(slope, dtype=float))


def descriptor_matrix(ops: SystemOperators) -> np.ndarray:
    """E = diag(I, M_rho, M_S)."""
    n = ops.mesh.n_dof
    return linalg.block_diag(np.eye(n), ops.M_rho, ops.M_S)


def structure_matrix(ops: SystemOperators, r_hat: np.ndarray) -> np.ndarray:
    """Skew-symmetric structure matrix J(r) of the semi-discrete system."""
    n = ops.mesh.n_dof
    m = ops.mesh.n_el
    K = assemble_tangent_coupling(ops.mesh, r_hat)
    J = np.zeros((2 * n + m, 2 * n + m))
    J[:n, n : 2 * n] = np.eye(n)
    J[n : 2 * n, :n] = -np.eye(n)
    J[n : 2 * n, 2 * n :] = -2.0 * K
    J[2 * n :, n : 2 * n] = 2.0 * K.T
    return J


def port_matrix(ops: SystemOperators) -> np.ndarray:
    """Input map of the stacked system, [0; B; 0]."""
    n = ops.mesh.n_dof
    full = np.zeros((2 * n + ops.mesh.n_el, ops.B.shape[1]))
    full[n : 2 * n] = ops.B
    return full


def _check_states(state_n: State, state_next: State, ops: SystemOperators) -> None:
    state_n.check(ops.mesh)
    state_next.check(ops.mesh)


def _residual(
    state_n: State,
    state_next: State,
    ops: SystemOperators,
    law: MaterialLaw,
    spec: BoundarySpec,
    h: float,
    t_n: float,
    scheme: Union[Scheme, str],
    switch_tol: float,
) -> np.ndarray:
    _check_states(state_n, state_next, ops)
    t_mid = t_n + 0.5 * h
    r_mid = 0.5 * (state_n.r_hat + state_next.r_hat)
    v_mid = 0.5 * (state_n.v_hat + state_next.v_hat)
    g = strain_effort(law, state_n.C_hat, state_next.C_hat, scheme, switch_tol)
    K = assemble_tangent_coupling(ops.mesh, r_mid)

    residual_r = state_next.r_hat - state_n.r_hat - h * v_mid
    residual_v = (
        ops.M_rho @ (state_next.v_hat - state_n.v_hat)
        - h * (ops.force_at(t_mid) - 2.0 * K @ g)
        - h * ops.B @ evaluate_input(spec, t_mid)
    )
    residual_C = ops.M_S @ (state_next.C_hat - state_n.C_hat) - 2.0 * h * K.T @ v_mid
    return np.concatenate([residual_r, residual_v, residual_C])


def residual_dg(
    state_n: State,
    state_next: State,
    ops: SystemOperators,
    law: MaterialLaw,
    spec: BoundarySpec,
    h: float,
    t_n: float,
    switch_tol: float = DEFAULT_SWITCH_TOL,
) -> np.ndarray:
    """
    Discrete-gradient residual E (x1 - x0) - h J(x_mid) z - h B u(t_n + h/2).

    The strain effort is the Greenspan discrete derivative of W between the
    two states. Rows of fixed ends are not constrained here.

    Raises:
        MaterialDomainError: If a strain is nonpositive
    """
    return _residual(
        state_n, state_next, ops, law, spec, h, t_n, Scheme.DISCRETE_GRADIENT, switch_tol
    )


def residual_midpoint(
    state_n: State,
    state_next: State,
    ops: SystemOperators,
    law: MaterialLaw,
    spec: BoundarySpec,
    h: float,
    t_n: float,
) -> np.ndarray:
    """Implicit midpoint residual: dW/dC taken at the midpoint strain."""
    return _residual(
        state_n, state_next, ops, law, spec, h, t_n, Scheme.MIDPOINT, DEFAULT_SWITCH_TOL
    )


def momentum_residual(
    state_n: State,
    state_next: State,
    ops: SystemOperators,
    law: MaterialLaw,
    spec: BoundarySpec,
    h: float,
    t_n: float,
    scheme: Union[Scheme, str] = Scheme.DISCRETE_GRADIENT,
    switch_tol: float = DEFAULT_SWITCH_TOL,
) -> np.ndarray:
    """Unconstrained velocity rows of the step residual."""
    n = ops.mesh.n_dof
    residual = _residual(
        state_n, state_next, ops, law, spec, h, t_n, scheme, switch_tol
    )
    return residual[n : 2 * n]


def newton_jacobian(
    state_n: State,
    state_next: State,
    ops: SystemOperators,
    law: MaterialLaw,
    spec: BoundarySpec,
    h: float,
    t_n: float,
    mode: Union[JacobianMode, str] = JacobianMode.ANALYTIC,
    scheme: Union[Scheme, str] = Scheme.DISCRETE_GRADIENT,
    switch_tol: float = DEFAULT_SWITCH_TOL,
) -> np.ndarray:
    """
    Derivative of the step residual with respect to x1 = [r1, v1, C1].

    Analytic mode assembles the blocks directly; finite-difference mode uses
    central differences with step 1e-7 * (1 + |x_j|).
    """
    mode = _enum_value(JacobianMode, mode, "solver.jacobian")
    if mode is JacobianMode.FINITE_DIFFERENCE:
        return _finite_difference_jacobian(
            state_n, state_next, ops, law, spec, h, t_n, scheme, switch_tol
        )

    _check_states(state_n, state_next, ops)
    mesh = ops.mesh
    n = mesh.n_dof
    m = mesh.n_el
    r_mid = 0.5 * (state_n.r_hat + state_next.r_hat)
    v_mid = 0.5 * (state_n.v_hat + state_next.v_hat)
    g = strain_effort(law, state_n.C_hat, state_next.C_hat, scheme, switch_tol)
    dg = strain_effort_dC_next(law, state_n.C_hat, state_next.C_hat, scheme, switch_tol)
    K_r = assemble_tangent_coupling(mesh, r_mid)
    K_v = assemble_tangent_coupling(mesh, v_mid)

    jacobian = np.zeros((2 * n + m, 2 * n + m))
    jacobian[:n, :n] = np.eye(n)
    jacobian[:n, n : 2 * n] = -0.5 * h * np.eye(n)
    jacobian[n : 2 * n, :n] = h * tension_stiffness(mesh, g)
    jacobian[n : 2 * n, n : 2 * n] = ops.M_rho
    jacobian[n : 2 * n, 2 * n :] = 2.0 * h * K_r * dg[None, :]
    jacobian[2 * n :, :n] = -h * K_v.T
    jacobian[2 * n :, n : 2 * n] = -h * K_r.T
    jacobian[2 * n :, 2 * n :] = ops.M_S
    return jacobian


def _finite_difference_jacobian(
    state_n: State,
    state_next: State,
    ops: SystemOperators,
    law: MaterialLaw,
    spec: BoundarySpec,
    h: float,
    t_n: float,
    scheme: Union[Scheme, str],
    switch_tol: float,
) -> np.ndarray:
    n = ops.mesh.n_dof
    x = state_next.stacked()
    jacobian = np.zeros((x.size, x.size))
    for j in range(x.size):
        delta = FD_STEP * (1.0 + abs(x[j]))
        forward = x.copy()
        backward = x.copy()
        forward[j] += delta
        backward[j] -= delta
        jacobian[:, j] = (
            _residual(
                state_n, State.from_stacked(forward, n), ops, law, spec, h, t_n,
                scheme, switch_tol,
            )
            - _residual(
                state_n, State.from_stacked(backward, n), ops, law, spec, h, t_n,
                scheme, switch_tol,
            )
        ) / (2.0 * delta)
    return jacobian


def _solve_linear(
    matrix: np.ndarray, rhs: np.ndarray, solver: LinearSolver
) -> np.ndarray:
    if solver is LinearSolver.SPARSE:
        return np.asarray(spsolve(sparse.csc_matrix(matrix), rhs), dtype=float)
    return linalg.lu_solve(linalg.lu_factor(matrix), rhs)


def step(
    state_n: State,
    ops: SystemOperators,
    law: MaterialLaw,
    spec: BoundarySpec,
    settings: StepSettings,
    t_n: float,
) -> tuple[State, StepReport]:
    """
    Advance one step of size ``settings.h`` from time ``t_n``.

    Newton's method starts from the previous state with fixed ends pinned and
    only updates free degrees of freedom, so pinned values are returned
    exactly. An update that would make a strain nonpositive is halved up to
    30 times.

    Raises:
        ConvergenceError: If the residual norm does not drop below
            ``settings.newton_tol`` within ``settings.max_iter`` iterations or
            the linear solve fails; carries the StepReport
    """
    mesh = ops.mesh
    n = mesh.n_dof
    h = settings.h
    size = 2 * n + mesh.n_el
    free = np.setdiff1d(np.arange(size), constrained_state_indices(mesh, spec))
    step_logger = get_logger(__name__, {"t": t_n, "scheme": settings.scheme.value})

    x = apply_dirichlet(state_n, mesh, spec).stacked()
    history: list[float] = []

    def failed(message: str) -> ConvergenceError:
        report = StepReport(
            iterations=len(history),
            final_residual_norm=history[-1] if history else math.inf,
            converged=False,
            residual_history=history,
            message=message,
        )
        step_logger.error("Newton solve failed", {"reason": message})
        return ConvergenceError(message, report)

    for iteration in range(1, settings.max_iter + 1):
        trial = State.from_stacked(x, n)
        residual = constrain_residual(
            _residual(
                state_n, trial, ops, law, spec, h, t_n,
                settings.scheme, settings.switch_tol,
            ),
            x,
            mesh,
            spec,
        )
        norm = float(np.linalg.norm(residual))
        history.append(norm)
        step_logger.debug("Newton iteration", {"iteration": iteration, "residual": norm})

        if norm < settings.newton_tol:
            report = StepReport(iteration, norm, True, history)
            return trial, report
        if not math.isfinite(norm):
            raise failed("residual is not finite")
        if iteration == settings.max_iter:
            break

        jacobian = newton_jacobian(
            state_n, trial, ops, law, spec, h, t_n,
            settings.jacobian, settings.scheme, settings.switch_tol,
        )
        try:
            delta = _solve_linear(
                jacobian[np.ix_(free, free)], -residual[free], settings.linear_solver
            )
        except (linalg.LinAlgError, ValueError) as e:
            raise failed(f"linear solve failed: {e}") from e
        if not np.all(np.isfinite(delta)):
            raise failed("singular Newton Jacobian")

        scale = 1.0
        for _ in range(MAX_BACKTRACKS + 1):
            candidate = x.copy()
            candidate[free] += scale * delta
            if np.all(candidate[2 * n :] > 0):
                break
            scale *= 0.5
        else:
            raise failed("update keeps producing nonpositive strains")
        if scale < 1.0:
            step_logger.debug("Newton update damped", {"factor": scale})
        x = candidate

    raise failed(
        f"no convergence in {settings.max_iter} iterations "
        f"(residual {history[-1]:.3e}, tolerance {settings.newton_tol:.1e})"
    )


def time_grid(T: float, h: float) -> tuple[np.ndarray, np.ndarray]:
    """
    Grid times t_0 = 0, ..., T and the step sizes between them.

    Steps have size h except for a shortened last step when T is not a
    multiple of h.
    """
    errors = []
    if not (math.isfinite(T) and T >= 0):
        errors.append(f"time.T: must be nonnegative, got {T}")
    if not (math.isfinite(h) and h > 0):
        errors.append(f"time.h: must be positive, got {h}")
    if errors:
        raise ConfigurationError(errors)

    n_full = int(math.floor(T / h + 1e-9))
    step_sizes = [h] * n_full
    remainder = T - n_full * h
    if remainder > 1e-12 * max(1.0, T):
        step_sizes.append(remainder)
    times = np.concatenate([[0.0], np.arange(1, len(step_sizes) + 1) * h])
    if step_sizes:
        times[-1] = T
    return times, np.array(step_sizes)


def _port_sample(
    state_n: State,
    state_next: State,
    ops: SystemOperators,
    law: MaterialLaw,
    spec: BoundarySpec,
    settings: StepSettings,
    t_n: float,
) -> PortSample:
    mesh = ops.mesh
    h = settings.h
    t_mid = t_n + 0.5 * h
    y_mid = 0.5 * (extract_output(state_n, mesh, spec) + extract_output(state_next, mesh, spec))
    reaction = reaction_force(
        state_n, state_next, ops, law, spec, h, t_n, settings.scheme, settings.switch_tol
    )
    return PortSample(t_mid, h, evaluate_input(spec, t_mid), y_mid, reaction)


def integrate(
    initial_state: State,
    ops: SystemOperators,
    law: MaterialLaw,
    spec: BoundarySpec,
    settings: StepSettings,
    T: float,
) -> Trajectory:
    """
    Integrate from t = 0 to t = T with constant steps.

    Raises:
        SimulationFailure: If a step fails; carries the partial trajectory
    """
    mesh = ops.mesh
    initial_state.check(mesh)
    times, step_sizes = time_grid(T, settings.h)
    run_logger = get_logger(__name__, {"scheme": settings.scheme.value})

    if not ops.body_force_is_constant:
        run_logger.warning(
            "Body force varies in time; energy conservation certificate disabled"
        )
    if is_free_floating(spec):
        run_logger.warning(
            "Both ends are force-controlled; the string is free-floating"
        )

    state = apply_dirichlet(initial_state, mesh, spec)
    trajectory = Trajectory(
        operators=ops,
        law=law,
        boundary=spec,
        settings=settings,
        times=[0.0],
        states=[state],
    )
    run_logger.info(
        "Starting integration",
        {"steps": len(step_sizes), "h": settings.h, "T": T, "n_el": mesh.n_el},
    )

    for index, h in enumerate(step_sizes):
        t_n = float(times[index])
        step_settings = settings if h == settings.h else replace(settings, h=float(h))
        try:
            state_next, report = step(state, ops, law, spec, step_settings, t_n)
        except ConvergenceError as e:
            trajectory.failure = e.report
            trajectory.failed_step = index
            raise SimulationFailure(
                f"step {index} at t={t_n:.6g} failed: {e}",
                trajectory,
                index,
                e.report,
                e,
            ) from e

        trajectory.ports.append(
            _port_sample(state, state_next, ops, law, spec, step_settings, t_n)
        )
        trajectory.times.append(float(times[index + 1]))
        trajectory.states.append(state_next)
        trajectory.reports.append(report)
        trajectory.step_sizes.append(float(h))
        run_logger.debug(
            "Step accepted",
            {
                "step": index,
                "t": times[index + 1],
                "iterations": report.iterations,
                "residual": report.final_residual_norm,
            },
        )
        state = state_next

    run_logger.info("Integration finished", trajectory.newton_statistics())
    return trajectory


@log_function_call
def simulate(config: "ScenarioConfig") -> Trajectory:
    """
    Run a validated scenario from t = 0 to its final time.

    Raises:
        SimulationFailure: If a step fails; carries the partial trajectory
    """
    problem = config.build_problem()
    return integrate(
        problem.initial_state,
        problem.operators,
        problem.law,
        problem.boundary,
        problem.settings,
        problem.T,
    )
