"""
Constitutive laws for hyperelastic strings.

Each law is a stored energy density W(C) per unit length in terms of the
squared stretch C = |dr/ds|^2. The stress S = 2 dW/dC is conjugate to C and
the tension N(nu) = dU/dnu with U(nu) = W(nu^2) satisfies N = S(nu^2) * nu.

All operations accept scalars or numpy arrays (evaluated elementwise) and
return a float for scalar input.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Union

import numpy as np
import numpy.typing as npt

from ..utils.error_handling import ConfigurationError, MaterialDomainError


Value = Union[float, np.ndarray]

DEFAULT_SWITCH_TOL = 1e-8


class MaterialKind(Enum):
    """Available stored energy densities."""

    HYPERELASTIC = "hyperelastic"
    LINEAR_ELASTIC = "linear-elastic"
    ST_VENANT_KIRCHHOFF = "st-venant-kirchhoff"


@dataclass(frozen=True)
class MaterialLaw:
    """A stored energy density with axial stiffness ``EA`` [N]."""

    kind: MaterialKind
    EA: float

    def __post_init__(self) -> None:
        if not isinstance(self.kind, MaterialKind):
            raise ConfigurationError([f"material.kind: unknown law {self.kind!r}"])
        if not math.isfinite(self.EA) or self.EA <= 0:
            raise ConfigurationError([f"material.EA: must be positive, got {self.EA}"])

    @property
    def name(self) -> str:
        return self.kind.value


def material_from_name(name: str, EA: float) -> MaterialLaw:
    """
    Build a law from its configuration name.

    Args:
        name: "hyperelastic", "linear-elastic" or "st-venant-kirchhoff";
            case and underscores are ignored
        EA: Axial stiffness [N]

    Raises:
        ConfigurationError: If the name is unknown or EA is not positive
    """
    normalized = name.strip().lower().replace("_", "-")
    try:
        kind = MaterialKind(normalized)
    except ValueError as e:
        choices = ", ".join(k.value for k in MaterialKind)
        raise ConfigurationError(
            [f"material.kind: unknown law {name!r} (expected one of {choices})"], e
        ) from e
    return MaterialLaw(kind, float(EA))


def axial_stiffness(youngs_modulus: float, radius: float) -> float:
    """EA of a circular cross section [N]."""
    return youngs_modulus * math.pi * radius**2


def line_density(density: float, radius: float) -> float:
    """rhoA of a circular cross section [kg/m]."""
    return density * math.pi * radius**2


def _positive(values: npt.ArrayLike, name: str) -> np.ndarray:
    array = np.asarray(values, dtype=float)
    if np.any(~(array > 0)):
        raise MaterialDomainError(f"{name} must be positive, got {values!r}")
    return array


def _out(array: np.ndarray) -> Value:
    return float(array) if array.ndim == 0 else array


def _energy(law: MaterialLaw, C: np.ndarray) -> np.ndarray:
    EA = law.EA
    if law.kind is MaterialKind.HYPERELASTIC:
        return EA / 4.0 * (C - np.log(C) - 1.0)
    if law.kind is MaterialKind.LINEAR_ELASTIC:
        return 0.5 * EA * (np.sqrt(C) - 1.0) ** 2
    return EA / 8.0 * (C - 1.0) ** 2


def _first_derivative(law: MaterialLaw, C: np.ndarray) -> np.ndarray:
    EA = law.EA
    if law.kind is MaterialKind.HYPERELASTIC:
        return EA / 4.0 * (1.0 - 1.0 / C)
    if law.kind is MaterialKind.LINEAR_ELASTIC:
        return 0.5 * EA * (1.0 - 1.0 / np.sqrt(C))
    return EA / 4.0 * (C - 1.0)


def _second_derivative(law: MaterialLaw, C: np.ndarray) -> np.ndarray:
    EA = law.EA
    if law.kind is MaterialKind.HYPERELASTIC:
        return EA / 4.0 / C**2
    if law.kind is MaterialKind.LINEAR_ELASTIC:
        return EA / 4.0 * C**-1.5
    return np.full_like(C, EA / 4.0)


def stored_energy_density(law: MaterialLaw, C: npt.ArrayLike) -> Value:
    """
    Stored energy per unit length W(C) [N].

    Raises:
        MaterialDomainError: If C <= 0
    """
    return _out(_energy(law, _positive(C, "C")))


def energy_derivative(law: MaterialLaw, C: npt.ArrayLike) -> Value:
    """dW/dC, i.e. half the stress [N]."""
    return _out(_first_derivative(law, _positive(C, "C")))


def second_derivative(law: MaterialLaw, C: npt.ArrayLike) -> Value:
    """d2W/dC2 [N]."""
    return _out(_second_derivative(law, _positive(C, "C")))


def stress(law: MaterialLaw, C: npt.ArrayLike) -> Value:
    """
    Stress S = 2 dW/dC [N].

    Raises:
        MaterialDomainError: If C <= 0
    """
    return _out(2.0 * _first_derivative(law, _positive(C, "C")))


def tension(law: MaterialLaw, nu: npt.ArrayLike) -> Value:
    """
    Tension N(nu) = dU/dnu for the stretch nu = sqrt(C) [N].

    Raises:
        MaterialDomainError: If nu <= 0
    """
    stretch = _positive(nu, "nu")
    EA = law.EA
    if law.kind is MaterialKind.HYPERELASTIC:
        result = EA / 2.0 * (stretch - 1.0 / stretch)
    elif law.kind is MaterialKind.LINEAR_ELASTIC:
        result = EA * (stretch - 1.0)
    else:
        result = EA / 2.0 * (stretch**3 - stretch)
    return _out(result)


def _secant_mask(
    C_n: np.ndarray, C_next: np.ndarray, switch_tol: float
) -> np.ndarray:
    return np.abs(C_next - C_n) > switch_tol * np.maximum(C_n, C_next)


def _check_switch_tol(switch_tol: float) -> None:
    if not switch_tol > 0:
        raise ConfigurationError([f"switch_tol: must be positive, got {switch_tol}"])


def _log_remainder(u: np.ndarray) -> np.ndarray:
    """-log(1 - u) - u, accurate for small |u|."""
    series = u**2 * (
        1 / 2 + u * (1 / 3 + u * (1 / 4 + u * (1 / 5 + u * (1 / 6 + u / 7))))
    )
    small = np.abs(u) < 1e-3
    direct = -np.log1p(-np.where(small, 0.0, u)) - u
    return np.where(small, series, direct)


def _secant_slope(
    law: MaterialLaw, c0: np.ndarray, c1: np.ndarray, gap: np.ndarray
) -> np.ndarray:
    """(W(c1) - W(c0)) / (c1 - c0) without subtracting nearly equal energies.

    ``gap`` is c1 - c0 wherever the secant is used and 1 elsewhere.
    """
    EA = law.EA
    if law.kind is MaterialKind.HYPERELASTIC:
        return EA / 4.0 * (1.0 - np.log1p((c1 - c0) / c0) / gap)
    if law.kind is MaterialKind.LINEAR_ELASTIC:
        roots = np.sqrt(c1) + np.sqrt(c0)
        return EA / 2.0 * (roots - 2.0) / roots
    return EA / 8.0 * (c1 + c0 - 2.0)


def _secant_slope_dC_next(
    law: MaterialLaw, c0: np.ndarray, c1: np.ndarray, gap: np.ndarray
) -> np.ndarray:
    EA = law.EA
    if law.kind is MaterialKind.HYPERELASTIC:
        return EA / 4.0 * _log_remainder((c1 - c0) / c1) / gap**2
    if law.kind is MaterialKind.LINEAR_ELASTIC:
        root = np.sqrt(c1)
        return EA / (2.0 * root * (root + np.sqrt(c0)) ** 2)
    return np.full_like(c1, EA / 8.0)


def greenspan_derivative(
    law: MaterialLaw,
    C_n: npt.ArrayLike,
    C_next: npt.ArrayLike,
    switch_tol: float = DEFAULT_SWITCH_TOL,
) -> Value:
    """
    Discrete derivative of W between two strains [N].

    Returns the secant slope (W(C_next) - W(C_n)) / (C_next - C_n) when the
    gap exceeds ``switch_tol`` relative to max(C_n, C_next), and dW/dC at the
    midpoint strain otherwise. The slope is evaluated in a closed form per
    law, so it keeps full relative accuracy for gaps down to the switch.

    Raises:
        MaterialDomainError: If either strain is nonpositive
    """
    _check_switch_tol(switch_tol)
    c0 = _positive(C_n, "C_n")
    c1 = _positive(C_next, "C_next")
    c0, c1 = np.broadcast_arrays(c0, c1)

    secant = _secant_mask(c0, c1, switch_tol)
    midpoint = _first_derivative(law, 0.5 * (c0 + c1))
    gap = np.where(secant, c1 - c0, 1.0)
    return _out(np.where(secant, _secant_slope(law, c0, c1, gap), midpoint))


def greenspan_derivative_dC_next(
    law: MaterialLaw,
    C_n: npt.ArrayLike,
    C_next: npt.ArrayLike,
    switch_tol: float = DEFAULT_SWITCH_TOL,
) -> Value:
    """
    Partial derivative of ``greenspan_derivative`` with respect to C_next.

    The secant branch equals (W'(C_next) - g) / (C_next - C_n), evaluated
    in closed form; the midpoint branch gives W''((C_n + C_next) / 2) / 2.
    """
    _check_switch_tol(switch_tol)
    c0 = _positive(C_n, "C_n")
    c1 = _positive(C_next, "C_next")
    c0, c1 = np.broadcast_arrays(c0, c1)

    secant = _secant_mask(c0, c1, switch_tol)
    gap = np.where(secant, c1 - c0, 1.0)
    midpoint_derivative = 0.5 * _second_derivative(law, 0.5 * (c0 + c1))
    return _out(
        np.where(secant, _secant_slope_dC_next(law, c0, c1, gap), midpoint_derivative)
    )


def greenspan_derivative_dC_next_fd(
    law: MaterialLaw,
    C_n: float,
    C_next: float,
    switch_tol: float = DEFAULT_SWITCH_TOL,
    step: float = 1e-6,
) -> float:
    """Central finite-difference counterpart of ``greenspan_derivative_dC_next``."""
    delta = step * (1.0 + abs(C_next))
    forward = greenspan_derivative(law, C_n, C_next + delta, switch_tol)
    backward = greenspan_derivative(law, C_n, C_next - delta, switch_tol)
    return float((forward - backward) / (2.0 * delta))
