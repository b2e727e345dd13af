"""
Core modules: material laws, spatial discretization, boundary ports, time
integration and energy diagnostics.
"""

from .boundary import BoundarySpec, FixedEnd, ForceEnd, HalfSinePulse, ZeroSignal
from .diagnostics import EnergyRecord, energy_records, hamiltonian
from .discretization import Mesh, State, SystemOperators, assemble_operators, build_mesh
from .integrator import Scheme, StepReport, StepSettings, Trajectory, simulate, step
from .material import MaterialLaw, material_from_name


__all__ = [
    "BoundarySpec",
    "EnergyRecord",
    "FixedEnd",
    "ForceEnd",
    "HalfSinePulse",
    "MaterialLaw",
    "Mesh",
    "Scheme",
    "State",
    "StepReport",
    "StepSettings",
    "SystemOperators",
    "Trajectory",
    "ZeroSignal",
    "assemble_operators",
    "build_mesh",
    "energy_records",
    "hamiltonian",
    "material_from_name",
    "simulate",
    "step",
]
