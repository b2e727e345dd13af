"""
Unit tests for scenario files, validation and problem construction.
"""

import logging

import numpy as np
import pytest
import yaml

from ph_string.core.boundary import FixedEnd, ForceEnd, HalfSinePulse, PiecewiseTable
from ph_string.core.integrator import Scheme
from ph_string.core.scenario import (
    ScenarioConfig,
    builtin_scenario,
    builtin_scenarios,
    config_errors,
)
from ph_string.io.config_reader import ConfigReader, load_config
from ph_string.utils.error_handling import ConfigParseError, ConfigurationError
from tests.fixtures import (
    INCONSISTENT_C0_YAML,
    MALFORMED_YAML,
    MINIMAL_SCENARIO_YAML,
    MISSING_EA_YAML,
    MULTIPLE_ERRORS_YAML,
    NEGATIVE_T_YAML,
    OVERRIDDEN_C0_YAML,
)


pytestmark = pytest.mark.unit


def _minimal(**changes) -> dict:
    data = yaml.safe_load(MINIMAL_SCENARIO_YAML)
    for dotted, value in changes.items():
        target = data
        *parents, key = dotted.split("__")
        for parent in parents:
            target = target[parent]
        target[key] = value
    return data


class TestLoadConfig:
    """Reading scenario files."""

    def test_load_minimal_scenario(self, scenario_file):
        scenario = load_config(scenario_file(MINIMAL_SCENARIO_YAML))
        assert scenario.name == "minimal"
        assert scenario.geometry.n_el == 2
        assert scenario.material.EA == 20.0
        assert scenario.time.h == 1e-2
        assert scenario.solver.newton_tol == 1e-11
        assert scenario.output.directory is None

    def test_missing_stiffness(self, scenario_file):
        with pytest.raises(ConfigurationError) as exc_info:
            load_config(scenario_file(MISSING_EA_YAML))
        assert exc_info.value.errors == ["material.EA: missing value"]

    def test_negative_final_time(self, scenario_file):
        with pytest.raises(ConfigurationError, match="time.T"):
            load_config(scenario_file(NEGATIVE_T_YAML))

    def test_all_errors_reported(self, scenario_file):
        with pytest.raises(ConfigurationError) as exc_info:
            load_config(scenario_file(MULTIPLE_ERRORS_YAML))
        fields = {message.split(":")[0] for message in exc_info.value.errors}
        assert fields == {"geometry.n_el", "material.EA"}

    def test_parse_error_has_location(self, scenario_file):
        with pytest.raises(ConfigParseError) as exc_info:
            load_config(scenario_file(MALFORMED_YAML))
        assert exc_info.value.line is not None
        assert exc_info.value.line >= 3
        assert "line" in exc_info.value.errors[0]

    def test_inconsistent_initial_strain(self, scenario_file):
        with pytest.raises(ConfigurationError, match="initial.C0"):
            load_config(scenario_file(INCONSISTENT_C0_YAML))

    def test_overridden_initial_strain(self, scenario_file, caplog):
        with caplog.at_level(logging.WARNING):
            scenario = load_config(scenario_file(OVERRIDDEN_C0_YAML))
        np.testing.assert_array_equal(scenario.build_problem().initial_state.C_hat, [2.0, 2.0])
        assert "inconsistent initial strains" in caplog.text

    def test_missing_file(self, temp_dir):
        with pytest.raises(FileNotFoundError):
            load_config(temp_dir / "absent.yaml")

    def test_wrong_extension(self, scenario_file):
        with pytest.raises(ConfigurationError, match="config"):
            load_config(scenario_file(MINIMAL_SCENARIO_YAML, name="scenario.txt"))

    def test_size_limit(self, scenario_file, env_vars):
        env_vars({"MAX_CONFIG_SIZE": "64"})
        with pytest.raises(ConfigurationError, match="too large"):
            ConfigReader().read(scenario_file(MINIMAL_SCENARIO_YAML))

    def test_top_level_must_be_mapping(self, scenario_file):
        with pytest.raises(ConfigurationError, match="mapping"):
            load_config(scenario_file("- 1\n- 2\n"))

    def test_manifest_reload(self, scenario_file):
        """The scenario entry of a run manifest reloads unchanged."""
        original = builtin_scenario("pendulum")
        manifest = {"scenario": original.to_dict(), "status": "converged"}
        reloaded = load_config(scenario_file(yaml.safe_dump(manifest, sort_keys=False)))
        assert reloaded.to_dict() == original.to_dict()

    def test_name_defaults_to_file_stem(self, scenario_file):
        text = MINIMAL_SCENARIO_YAML.replace("name: minimal\n", "")
        assert load_config(scenario_file(text, name="taut.yaml")).name == "taut"


class TestScenarioValidation:
    """Field-level validation in ScenarioConfig.from_dict."""

    def test_unknown_material(self):
        with pytest.raises(ConfigurationError, match="material.kind"):
            ScenarioConfig.from_dict(_minimal(material__kind="rubber"))

    def test_invalid_dimension(self):
        with pytest.raises(ConfigurationError, match="geometry.d"):
            ScenarioConfig.from_dict(_minimal(geometry__d=4))

    def test_boundary_component_count(self):
        data = _minimal()
        data["boundary"]["right"]["position"] = [1.0, 0.0, 0.0]
        with pytest.raises(ConfigurationError, match="boundary.right.position"):
            ScenarioConfig.from_dict(data)

    def test_unknown_scheme(self):
        with pytest.raises(ConfigurationError, match="solver.scheme"):
            ScenarioConfig.from_dict(_minimal(solver={"scheme": "rk4"}))

    def test_node_count_must_match(self):
        with pytest.raises(ConfigurationError, match="geometry.nodes"):
            ScenarioConfig.from_dict(_minimal(geometry__nodes=[0.0, 1.0]))

    def test_nonuniform_nodes(self):
        scenario = ScenarioConfig.from_dict(_minimal(geometry__nodes=[0.0, 0.3, 1.0]))
        np.testing.assert_allclose(scenario.build_mesh().elem_lengths, [0.3, 0.7])

    def test_collapsed_initial_positions(self):
        data = _minimal()
        data["initial"]["r0"] = {"type": "nodal", "positions": [[0, 0], [0, 0], [1, 0]]}
        with pytest.raises(ConfigurationError, match="initial"):
            ScenarioConfig.from_dict(data)

    def test_initial_positions_must_meet_fixed_end(self):
        data = builtin_scenario("pendulum").to_dict()
        data["boundary"]["left"]["position"] = [0.1, 0.3]
        with pytest.raises(
            ConfigurationError, match=r"initial\.r0: node 0 .* boundary\.left\.position"
        ):
            ScenarioConfig.from_dict(data)

    def test_right_fixed_end_mismatch(self):
        data = _minimal()
        data["boundary"]["right"]["position"] = [1.5, 0.0]
        with pytest.raises(ConfigurationError, match=r"boundary\.right\.position"):
            ScenarioConfig.from_dict(data)

    def test_signal_types(self):
        data = _minimal()
        data["boundary"]["right"] = {
            "type": "force",
            "signal": {"type": "table", "samples": [[0.0, 0.0, 0.0], [1.0, 2.0, 0.0]]},
        }
        data["body_force"] = {"type": "half-sine", "amplitude": [0.0, -1.0], "duration": 0.5}
        scenario = ScenarioConfig.from_dict(data)
        assert isinstance(scenario.boundary.right.signal, PiecewiseTable)
        assert isinstance(scenario.body_force, HalfSinePulse)

    def test_linear_initial_velocity(self):
        data = _minimal()
        data["initial"]["v0"] = {"type": "linear", "start": [0.0, 1.0], "end": [0.0, -1.0]}
        state = ScenarioConfig.from_dict(data).build_problem().initial_state
        np.testing.assert_allclose(state.v_hat, [0.0, 1.0, 0.0, 0.0, 0.0, -1.0])

    def test_config_errors(self):
        assert config_errors(ConfigurationError(["a: b", "c: d"])) == ["a: b", "c: d"]
        assert config_errors(ValueError("bad")) == ["ValueError: bad"]


class TestOverrides:
    """Command-line overrides."""

    def test_scheme_and_steps(self):
        scenario = builtin_scenario("pendulum").with_overrides(scheme="midpoint", steps=3)
        assert scenario.step_settings().scheme is Scheme.MIDPOINT
        assert scenario.time.T == pytest.approx(0.03)

    def test_output_directory(self):
        scenario = builtin_scenario("pendulum").with_overrides(output_dir="elsewhere")
        assert scenario.output.directory == "elsewhere"

    def test_invalid_tolerance(self):
        with pytest.raises(ConfigurationError, match="solver.newton_tol"):
            builtin_scenario("pendulum").with_overrides(newton_tol=-1.0)


class TestBuiltinScenarios:
    """Scenarios shipped with the package."""

    def test_available(self):
        assert builtin_scenarios() == ["free-fall", "pendulum", "static-hang"]

    def test_unknown(self):
        with pytest.raises(ConfigurationError, match="unknown built-in"):
            builtin_scenario("trampoline")

    def test_pendulum(self):
        scenario = builtin_scenario("pendulum")
        assert scenario.geometry.n_el == 30
        assert scenario.rhoA == 1.0
        assert isinstance(scenario.boundary.left, FixedEnd)
        assert isinstance(scenario.boundary.right, ForceEnd)
        assert isinstance(scenario.boundary.right.signal, HalfSinePulse)
        problem = scenario.build_problem()
        assert problem.settings.h == 1e-2
        assert problem.T == 1.0
        np.testing.assert_allclose(problem.initial_state.C_hat, 1.0, rtol=1e-13)

    def test_hanging_shape(self):
        """The hanging string points straight down and stretches most at the top."""
        state = builtin_scenario("static-hang").build_problem().initial_state
        positions = state.positions(2)
        np.testing.assert_array_equal(positions[:, 0], 0.0)
        assert np.all(np.diff(positions[:, 1]) < 0)
        assert np.all(np.diff(state.C_hat) < 0)
        assert state.C_hat[-1] > 1.0

    def test_hanging_needs_fixed_top(self):
        data = yaml.safe_load(MINIMAL_SCENARIO_YAML)
        data["boundary"]["left"] = {"type": "force", "signal": {"type": "zero"}}
        data["initial"]["r0"] = {"type": "hanging"}
        with pytest.raises(ConfigurationError, match="fixed left end"):
            ScenarioConfig.from_dict(data)
