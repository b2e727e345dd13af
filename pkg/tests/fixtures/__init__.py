"""
Test fixtures, sample scenarios and reference oracles.
"""

from .sample_data import (
    INCONSISTENT_C0_YAML,
    MALFORMED_YAML,
    MINIMAL_SCENARIO_YAML,
    MISSING_EA_YAML,
    MULTIPLE_ERRORS_YAML,
    NEGATIVE_T_YAML,
    ONE_ITERATION_PENDULUM_YAML,
    OVERRIDDEN_C0_YAML,
    TEST_ENV_VARS,
)


__all__ = [
    "INCONSISTENT_C0_YAML",
    "MALFORMED_YAML",
    "MINIMAL_SCENARIO_YAML",
    "MISSING_EA_YAML",
    "MULTIPLE_ERRORS_YAML",
    "NEGATIVE_T_YAML",
    "ONE_ITERATION_PENDULUM_YAML",
    "OVERRIDDEN_C0_YAML",
    "TEST_ENV_VARS",
]
