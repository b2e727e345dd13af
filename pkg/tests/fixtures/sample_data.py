"""
Sample scenario files and settings for testing.
"""

# Smallest complete scenario: two elements, both ends fixed, at rest.
MINIMAL_SCENARIO_YAML = """\
name: minimal
geometry:
  L: 1.0
  n_el: 2
  d: 2
material:
  kind: hyperelastic
  EA: 20.0
rhoA: 1.0
body_force: [0.0, 0.0]
boundary:
  left:
    type: fixed
    position: [0.0, 0.0]
  right:
    type: fixed
    position: [1.0, 0.0]
initial:
  r0:
    type: straight
  v0:
    type: zero
  C0: consistent
time:
  h: 1.0e-2
  T: 5.0e-2
"""

MISSING_EA_YAML = MINIMAL_SCENARIO_YAML.replace("  EA: 20.0\n", "")

NEGATIVE_T_YAML = MINIMAL_SCENARIO_YAML.replace("T: 5.0e-2", "T: -1.0")

# Two independent problems in one file
MULTIPLE_ERRORS_YAML = MINIMAL_SCENARIO_YAML.replace("  EA: 20.0\n", "").replace(
    "n_el: 2", "n_el: 0"
)

# Unclosed flow sequence on line 3
MALFORMED_YAML = """\
name: broken
geometry:
  L: [1.0, 2.0
material:
  kind: hyperelastic
"""

INCONSISTENT_C0_YAML = MINIMAL_SCENARIO_YAML.replace(
    "  C0: consistent", "  C0:\n    values: [2.0, 2.0]"
)

OVERRIDDEN_C0_YAML = MINIMAL_SCENARIO_YAML.replace(
    "  C0: consistent", "  C0:\n    values: [2.0, 2.0]\n    override: true"
)

# Newton cannot finish a step from rest under gravity in one iteration
ONE_ITERATION_PENDULUM_YAML = """\
name: one-iteration
geometry:
  L: 1.0
  n_el: 4
  d: 2
material:
  kind: hyperelastic
  EA: 20.0
rhoA: 1.0
body_force: [0.0, -9.81]
boundary:
  left:
    type: fixed
    position: [0.0, 0.0]
  right:
    type: force
    signal:
      type: zero
initial:
  r0:
    type: straight
time:
  h: 1.0e-2
  T: 5.0e-2
solver:
  max_iter: 1
"""

TEST_ENV_VARS = {
    "LOG_LEVEL": "DEBUG",
    "DEBUG": "true",
    "OUTPUT_DIR": "sim-results",
    "MAX_CONFIG_SIZE": "1048576",  # 1MB
    "ENABLE_RESOURCE_MONITORING": "false",
}
