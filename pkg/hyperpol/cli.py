"""
Command-line interface for the SHG hyperpolarizability toolkit.
Subcommands: beta, terms, check, amplitude, envshift, selftest.
"""

import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

import click
import yaml
from pydantic import ValidationError

from .errors import HyperpolError, InputValidationError, ResonanceError
from .models import DampingConvention, OutputFormat, RunConfig, RunReport, SignConvention
from .molecule import load_model_file, to_atomic
from .output import ReportWriter
from .radiation import POLARIZATIONS
from .utils import get_logger, init_logger

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_VALIDATION = 2
EXIT_RESONANCE = 3
EXIT_USAGE = 64

DAMPING_CHOICES = [convention.value for convention in DampingConvention]
FORMAT_CHOICES = [fmt.value for fmt in OutputFormat]
OMEGA_UNITS = ['hartree', 'eV']


# ============================================================
# SHARED OPTIONS
# ============================================================

molecule_option = click.option(
    '-m', '--molecule', 'molecule_path',
    required=True,
    type=click.Path(dir_okay=False),
    help='Path to a molecule JSON document'
)
omega_unit_option = click.option(
    '--omega-unit',
    type=click.Choice(OMEGA_UNITS),
    default='hartree',
    help='Unit of --omega (default: hartree)'
)
damping_option = click.option(
    '--damping',
    type=click.Choice(DAMPING_CHOICES),
    help='Damping convention (default from config: none)'
)
format_option = click.option(
    '--format', 'output_format',
    type=click.Choice(FORMAT_CHOICES),
    help='Report format (default from config: table)'
)


@click.group()
@click.option(
    '--config', 'config_path',
    default='config.yaml',
    help='Path to configuration file (default: config.yaml)'
)
@click.option(
    '--debug',
    is_flag=True,
    help='Enable debug mode (detailed stderr logs and a debug log file)'
)
@click.option(
    '--output-file',
    help='Write the report to this file instead of stdout'
)
@click.version_option(version='1.0.0', prog_name='hyperpol')
@click.pass_context
def cli(ctx: click.Context, config_path: str, debug: bool, output_file: Optional[str]):
    """
    SHG Hyperpolarizability Toolkit

    Sum-over-states beta(-2w; w, w) in the standard and fluctuation-dipole
    representations, their equivalence audit, the single-centre SHG
    amplitude and static environment shifts.

    Examples:

      # Tensor in both representations with their difference
      python main.py beta -m data/twolevel.json --omega 0.1 --rep both --symmetrize --format json

      # Term list
      python main.py terms -m data/twolevel.json --rep standard

      # Equivalence over a frequency grid
      python main.py check -m data/random4.json --omega-min 0.05 --omega-max 0.12 --steps 8
    """
    config_data = load_config(config_path)
    debug_section = config_data.get('debug', {}) or {}

    init_logger(
        debug_mode=debug,
        debug_log_file=debug_section.get('log_file', './debug/hyperpol.log') if debug else None
    )

    ctx.ensure_object(dict)
    ctx.obj['config_data'] = config_data
    ctx.obj['debug'] = debug
    ctx.obj['output_file'] = output_file


# ============================================================
# SUBCOMMANDS
# ============================================================

@cli.command()
@molecule_option
@click.option('--omega', type=float, required=True, help='Fundamental frequency')
@omega_unit_option
@click.option(
    '--rep',
    type=click.Choice(['standard', 'fluctuation', 'both']),
    help='Representation (default from config: standard)'
)
@damping_option
@click.option('--symmetrize', is_flag=True, help='Report beta_i(jk) instead of the raw tensor')
@format_option
@click.pass_context
def beta(ctx, molecule_path, omega, omega_unit, rep, damping, symmetrize, output_format):
    """Evaluate the SHG hyperpolarizability tensor."""
    from .orchestrator import run_beta

    config = _run_config(ctx, representation=rep, damping=damping, output_format=output_format)
    model = load_model_file(molecule_path)
    report = run_beta(
        config, model, _omega(omega, omega_unit), config.representation, symmetrized=symmetrize
    )
    return _finish(config, report)


@cli.command()
@molecule_option
@click.option(
    '--rep',
    type=click.Choice(['standard', 'fluctuation']),
    default='standard',
    help='Representation (default: standard)'
)
@format_option
@click.pass_context
def terms(ctx, molecule_path, rep, output_format):
    """List the enumerated sum-over-states terms."""
    from .orchestrator import run_terms

    config = _run_config(ctx, output_format=output_format)
    report = run_terms(config, load_model_file(molecule_path), rep)
    return _finish(config, report)


@cli.command()
@molecule_option
@click.option('--omega-min', type=float, required=True, help='Lowest grid frequency')
@click.option('--omega-max', type=float, required=True, help='Highest grid frequency')
@click.option('--steps', type=int, default=8, help='Number of grid points (default: 8)')
@omega_unit_option
@click.option('--tol', type=float, help='Tolerance on the symmetrized difference (default from config: 1e-10)')
@click.option('--workers', type=int, help='Worker threads for the grid (default from config: 1)')
@damping_option
@format_option
@click.pass_context
def check(ctx, molecule_path, omega_min, omega_max, steps, omega_unit, tol, workers, damping, output_format):
    """Audit standard vs fluctuation equivalence over a frequency grid."""
    from .orchestrator import run_check

    config = _run_config(
        ctx, check_tolerance=tol, check_workers=workers, damping=damping, output_format=output_format
    )
    report = run_check(
        config,
        load_model_file(molecule_path),
        _omega(omega_min, omega_unit),
        _omega(omega_max, omega_unit),
        steps,
    )
    return _finish(config, report)


@cli.command()
@molecule_option
@click.option('--omega', type=float, required=True, help='Fundamental frequency')
@omega_unit_option
@click.option('--n', 'occupation', type=int, help='Initial fundamental occupation (default from config: 2)')
@click.option('--volume', type=float, help='Quantization volume in bohr^3 (default from config)')
@click.option('--pol-in', type=click.Choice(list(POLARIZATIONS)), help='Fundamental polarization')
@click.option('--pol-out', type=click.Choice(list(POLARIZATIONS)), help='Harmonic polarization')
@click.option(
    '--rep',
    type=click.Choice(['standard', 'fluctuation']),
    help='Representation of the contracted tensor (default from config: fluctuation)'
)
@damping_option
@format_option
@click.pass_context
def amplitude(ctx, molecule_path, omega, omega_unit, occupation, volume, pol_in, pol_out, rep, damping,
              output_format):
    """Single-centre SHG transition amplitude."""
    from .orchestrator import run_amplitude

    config = _run_config(
        ctx,
        occupation=occupation,
        volume=volume,
        pol_in=pol_in,
        pol_out=pol_out,
        amplitude_representation=rep,
        damping=damping,
        output_format=output_format,
    )
    report = run_amplitude(config, load_model_file(molecule_path), _omega(omega, omega_unit))
    return _finish(config, report)


@cli.command()
@click.option(
    '-a', '--assembly', 'assembly_path',
    required=True,
    type=click.Path(dir_okay=False),
    help='Path to an assembly JSON document'
)
@click.option(
    '--sign-convention',
    type=click.Choice([convention.value for convention in SignConvention]),
    help='Sign of the correction (default from config: as-printed)'
)
@click.option('--cutoff', type=float, help='Minimum allowed separation in bohr (default from config: 0.5)')
@click.option('--max-range', type=float, help='Skip pairs farther apart than this (bohr)')
@click.option('--apply-shifts', is_flag=True, help='Also evaluate beta on the shifted levels')
@click.option('--omega', type=float, help='Fundamental frequency for --apply-shifts')
@omega_unit_option
@click.option(
    '--rep',
    type=click.Choice(['standard', 'fluctuation']),
    default='fluctuation',
    help='Representation for --apply-shifts (default: fluctuation)'
)
@damping_option
@format_option
@click.pass_context
def envshift(ctx, assembly_path, sign_convention, cutoff, max_range, apply_shifts, omega, omega_unit, rep,
             damping, output_format):
    """Static corrections from the surrounding ground-state dipoles."""
    from .environment import load_assembly_file
    from .orchestrator import run_envshift

    config = _run_config(
        ctx,
        sign_convention=sign_convention,
        cutoff=cutoff,
        max_range=max_range,
        damping=damping,
        output_format=output_format,
    )
    assembly = load_assembly_file(assembly_path, config.cutoff, config.max_range)
    report = run_envshift(
        config,
        assembly,
        apply=apply_shifts,
        omega=_omega(omega, omega_unit) if omega is not None else None,
        representation=rep,
    )
    return _finish(config, report)


@cli.command()
@click.option('--seed', type=int, help='Random seed (default from config: 0)')
@click.option('--models', type=int, help='Number of random models (default from config: 100)')
@click.option('--frequencies', type=int, help='Frequencies per model (default from config: 8)')
@click.option('--tol', type=float, help='Tolerance on the symmetrized difference (default from config: 1e-10)')
@format_option
@click.pass_context
def selftest(ctx, seed, models, frequencies, tol, output_format):
    """Representation equivalence over seeded random models."""
    from .orchestrator import run_selftest

    config = _run_config(
        ctx,
        selftest_seed=seed,
        selftest_models=models,
        selftest_frequencies=frequencies,
        check_tolerance=tol,
        output_format=output_format,
    )
    return _finish(config, run_selftest(config))


# ============================================================
# CONFIGURATION
# ============================================================

def load_config(config_path: str) -> dict:
    """Load configuration from YAML file."""
    path = Path(config_path)

    if not path.exists():
        click.echo(f"Warning: Config file not found: {config_path}", err=True)
        click.echo("Using default configuration", err=True)
        return {}

    try:
        with open(path, 'r', encoding='utf-8') as f:
            data = yaml.safe_load(f) or {}
    except yaml.YAMLError as e:
        raise InputValidationError(f"could not parse config file {config_path}: {e}") from e

    if not isinstance(data, dict):
        raise InputValidationError(f"config file {config_path} must hold a mapping")
    return data


def build_run_config(config_data: dict, **overrides: Any) -> RunConfig:
    """Build RunConfig from config file and CLI overrides (None means not given)."""

    numerics_section = config_data.get('numerics', {}) or {}
    beta_section = config_data.get('beta', {}) or {}
    check_section = config_data.get('check', {}) or {}
    radiation_section = config_data.get('radiation', {}) or {}
    environment_section = config_data.get('environment', {}) or {}
    selftest_section = config_data.get('selftest', {}) or {}
    output_section = config_data.get('output', {}) or {}
    debug_section = config_data.get('debug', {}) or {}

    values: Dict[str, Any] = dict(
        resonance_tolerance=numerics_section.get('resonance_tolerance', 1e-12),
        near_resonance_warning=numerics_section.get('near_resonance_warning', 1e-3),
        damping=beta_section.get('damping', 'none'),
        representation=beta_section.get('representation', 'standard'),
        check_tolerance=check_section.get('tolerance', 1e-10),
        check_workers=check_section.get('workers', 1),
        volume=radiation_section.get('volume', 1e6),
        occupation=radiation_section.get('occupation', 2),
        pol_in=radiation_section.get('pol_in', 'x'),
        pol_out=radiation_section.get('pol_out', 'x'),
        amplitude_representation=radiation_section.get('representation', 'fluctuation'),
        cutoff=environment_section.get('cutoff', 0.5),
        max_range=environment_section.get('max_range'),
        sign_convention=environment_section.get('sign_convention', 'as-printed'),
        selftest_seed=selftest_section.get('seed', 0),
        selftest_models=selftest_section.get('models', 100),
        selftest_frequencies=selftest_section.get('frequencies', 8),
        output_format=output_section.get('format', 'table'),
        json_indent=output_section.get('json_indent', 2),
        debug_log_file=debug_section.get('log_file', './debug/hyperpol.log'),
    )
    values.update({key: value for key, value in overrides.items() if value is not None})

    try:
        return RunConfig(**values)
    except ValueError as e:
        raise InputValidationError(f"invalid configuration: {e}") from e


def _run_config(ctx: click.Context, **overrides: Any) -> RunConfig:
    return build_run_config(
        ctx.obj['config_data'],
        output_file=ctx.obj['output_file'],
        debug_mode=ctx.obj['debug'],
        **overrides,
    )


def _omega(value: float, unit: str) -> float:
    return float(to_atomic(value, unit))


def _finish(config: RunConfig, report: RunReport) -> int:
    writer = ReportWriter(output_file=config.output_file, json_indent=config.json_indent)
    writer.write(report, config.output_format)
    return report.exit_code


# ============================================================
# ENTRY POINT
# ============================================================

def run(argv: Optional[List[str]] = None) -> int:
    """
    Run the CLI on argv and return the process exit code.

    0 success, 2 invalid input, 3 resonance singularity, 4 tolerance
    failure in check/selftest, 64 usage error.
    """
    try:
        result = cli.main(
            args=list(argv) if argv is not None else None,
            prog_name='hyperpol',
            standalone_mode=False,
        )
    except click.UsageError as e:
        e.show()
        return EXIT_USAGE
    except click.Abort:
        click.echo("Aborted.", err=True)
        return EXIT_FAILURE
    except ResonanceError as e:
        click.echo(f"Error: {e}", err=True)
        return EXIT_RESONANCE
    except InputValidationError as e:
        click.echo(f"Error: {e}", err=True)
        return EXIT_VALIDATION
    except ValidationError as e:
        click.echo(f"Error: {e.errors()[0]['msg']}", err=True)
        return EXIT_VALIDATION
    except (HyperpolError, click.ClickException, OSError) as e:
        click.echo(f"Error: {e}", err=True)
        get_logger().debug(f"{type(e).__name__} raised from CLI")
        return EXIT_FAILURE

    return result if isinstance(result, int) else EXIT_OK


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == '__main__':
    main()
