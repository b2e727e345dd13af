"""
Command-line interface for the port-Hamiltonian string simulator.

This module provides commands to run scenarios, list the built-in scenarios
and show process settings.

Exit codes: 0 success, 1 invalid configuration or input, 2 solver failure.
"""

import sys
from pathlib import Path
from typing import Optional

import click

from .core.boundary import is_free_floating
from .core.integrator import Scheme, simulate
from .core.scenario import ScenarioConfig, builtin_scenario, builtin_scenarios, config_errors
from .io.config_reader import load_config
from .io.output_writer import OutputWriter
from .utils.config import Config
from .utils.error_handling import ConfigurationError, SimulationFailure, StringSimError
from .utils.logging_config import get_logger, setup_logging
from .utils.resource_monitor import ResourceMonitor


EXIT_OK = 0
EXIT_INVALID = 1
EXIT_SOLVER = 2


@click.group()
@click.option("--debug/--no-debug", default=False, help="Enable debug logging")
@click.option(
    "--env-file", type=click.Path(exists=True), help="Path to a .env settings file"
)
@click.pass_context
def cli(ctx: click.Context, debug: bool, env_file: Optional[str]) -> None:
    """
    Port-Hamiltonian string simulator CLI.

    Simulate geometrically exact hyperelastic strings with an energy
    consistent time integrator and write energy, port and snapshot files.
    """
    ctx.ensure_object(dict)

    config = Config.from_env_file(env_file) if env_file else Config.get_default()
    log_level = "DEBUG" if debug or config.debug else config.log_level
    setup_logging(log_level, config.log_file)

    ctx.obj["config"] = config
    ctx.obj["logger"] = get_logger(__name__)

    if debug:
        ctx.obj["logger"].debug("Debug mode enabled")


def _resolve_scenario(
    config: Config, config_path: Optional[Path], scenario_name: Optional[str]
) -> ScenarioConfig:
    if config_path is not None and scenario_name is not None:
        raise ConfigurationError(["run: give either --config or --scenario, not both"])
    if config_path is not None:
        return load_config(config_path, config)
    return builtin_scenario(scenario_name or "pendulum")


@cli.command()
@click.option(
    "--config",
    "config_path",
    type=click.Path(path_type=Path),
    help="Scenario file (YAML)",
)
@click.option(
    "--scenario",
    "scenario_name",
    help="Built-in scenario name (default: pendulum)",
)
@click.option(
    "--output-dir",
    "-o",
    type=click.Path(path_type=Path),
    help="Output directory (overrides the scenario)",
)
@click.option(
    "--scheme",
    type=click.Choice([scheme.value for scheme in Scheme]),
    help="Time integration scheme",
)
@click.option("--newton-tol", type=float, help="Newton residual tolerance")
@click.option(
    "--steps-override",
    type=click.IntRange(min=0),
    help="Number of steps; sets T = N * h",
)
@click.option("--dry-run", is_flag=True, help="Only validate the scenario")
@click.pass_context
def run(
    ctx: click.Context,
    config_path: Optional[Path],
    scenario_name: Optional[str],
    output_dir: Optional[Path],
    scheme: Optional[str],
    newton_tol: Optional[float],
    steps_override: Optional[int],
    dry_run: bool,
) -> None:
    """
    Run a scenario and write its result files.

    Examples:

        # Built-in pendulum with the discrete-gradient scheme
        ph-string run --scenario pendulum

        # Same scenario with the implicit midpoint rule
        ph-string run --scenario pendulum --scheme midpoint -o results/mp

        # Validate a scenario file only
        ph-string run --config my-string.yaml --dry-run
    """
    config: Config = ctx.obj["config"]
    logger = ctx.obj["logger"]

    try:
        scenario = _resolve_scenario(config, config_path, scenario_name)
        scenario = scenario.with_overrides(
            scheme=scheme,
            newton_tol=newton_tol,
            steps=steps_override,
            output_dir=str(output_dir) if output_dir is not None else None,
        )
        problem = scenario.build_problem()
    except FileNotFoundError as e:
        logger.error(f"Scenario file not found: {e}")
        click.echo(f"❌ Error: {e}", err=True)
        sys.exit(EXIT_INVALID)
    except (StringSimError, ValueError) as e:
        logger.error(f"Invalid scenario: {e}")
        click.echo("❌ Invalid scenario:", err=True)
        for message in config_errors(e):
            click.echo(f"   {message}", err=True)
        sys.exit(EXIT_INVALID)

    logger = logger.with_context(scenario=scenario.name)
    if dry_run:
        click.echo(f"✅ Scenario is valid: {scenario.name}")
        click.echo(f"   Elements: {problem.mesh.n_el} (d = {problem.mesh.d})")
        click.echo(f"   Material: {problem.law.name}, EA = {problem.law.EA:g} N")
        click.echo(f"   Steps: h = {problem.settings.h:g} s, T = {problem.T:g} s")
        click.echo(f"   Scheme: {problem.settings.scheme.value}")
        if is_free_floating(problem.boundary):
            click.echo("   Note: both ends force-controlled (free-floating)")
        return

    target = Path(scenario.output.directory or config.output_dir / scenario.name)
    monitor = ResourceMonitor(enabled=config.enable_resource_monitoring)
    writer = OutputWriter(config)
    failure: Optional[SimulationFailure] = None

    with monitor.track("simulate"):
        try:
            trajectory = simulate(scenario)
        except SimulationFailure as e:
            failure = e
            trajectory = e.trajectory

    try:
        with monitor.track("write"):
            writer.write_run(
                trajectory,
                scenario,
                target,
                resources=monitor.summary(),
                failure_message=str(failure) if failure else None,
            )
    except OSError as e:
        logger.error(f"Cannot write results: {type(e).__name__}: {e}")
        click.echo(f"❌ Cannot write results: {e}", err=True)
        sys.exit(EXIT_INVALID)

    if failure is not None:
        logger.error("Run failed", {"step": failure.step_index, "output": str(target)})
        click.echo(f"❌ Solver failure: {failure}", err=True)
        click.echo(f"   Partial results: {target}", err=True)
        sys.exit(EXIT_SOLVER)

    stats = trajectory.newton_statistics()
    logger.info("Run finished", {"steps": stats["steps"], "output": str(target)})
    click.echo("✅ Simulation completed successfully!")
    click.echo(f"   Scenario: {scenario.name} ({trajectory.settings.scheme.value})")
    click.echo(f"   Steps: {stats['steps']}, max Newton iterations: {stats['max_iterations']}")
    click.echo(f"   Output: {target}")


@cli.command()
def scenarios() -> None:
    """
    List the built-in scenarios.
    """
    click.echo("📚 Built-in scenarios:")
    for name in builtin_scenarios():
        scenario = builtin_scenario(name)
        click.echo(
            f"   {name}: {scenario.geometry.n_el} elements, "
            f"{scenario.material.kind}, T = {scenario.time.T:g} s"
        )


@cli.command()
@click.pass_context
def config_info(ctx: click.Context) -> None:
    """
    Display the process settings in effect.
    """
    config: Config = ctx.obj["config"]

    try:
        config.validate()
        config_dict = config.to_dict()

        click.echo("⚙️  Configuration Information:")
        click.echo(f"   Log level: {config_dict['log_level']}")
        click.echo(f"   Log file: {config_dict['log_file'] or '-'}")
        click.echo(f"   Output directory: {config_dict['output_dir']}")
        click.echo(
            f"   Max scenario file size: {config_dict['max_config_size'] // (1024 * 1024)}MB"
        )
        click.echo(f"   Resource monitoring: {config_dict['enable_resource_monitoring']}")
        click.echo(f"   Debug mode: {config_dict['debug']}")

    except ValueError as e:
        click.echo(f"❌ Configuration error: {e}", err=True)
        sys.exit(EXIT_INVALID)


def main() -> None:
    """
    Main entry point for the CLI application.

    Called when the 'ph-string' command is executed.
    """
    try:
        cli()
    except KeyboardInterrupt:
        click.echo("\n⏹️  Operation cancelled by user.", err=True)
        sys.exit(EXIT_INVALID)


if __name__ == "__main__":
    main()
