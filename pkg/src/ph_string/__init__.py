"""
Port-Hamiltonian String Simulator

Simulates geometrically exact hyperelastic strings with mixed finite elements
in space and an energy consistent discrete-gradient scheme in time, and
reports energy and power balance certificates.
"""

__version__ = "0.1.0"
__author__ = "String Dynamics Team"

from .core.integrator import StepSettings, Trajectory, simulate
from .core.scenario import ScenarioConfig, builtin_scenario
from .io.config_reader import load_config
from .utils.config import Config


__all__ = [
    "Config",
    "ScenarioConfig",
    "StepSettings",
    "Trajectory",
    "builtin_scenario",
    "load_config",
    "simulate",
]
