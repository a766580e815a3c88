"""
Subcommand runners.
Each runner evaluates one CLI subcommand on already loaded inputs and
returns a RunReport; rendering and exit handling live in the CLI.
"""

import hashlib
import json
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Dict, List, Optional

import numpy as np

from .diagrams import enumerate_terms
from .errors import InputValidationError
from .models import (
    Assembly,
    BetaTensor,
    DampingConvention,
    MolecularModel,
    Representation,
    RunConfig,
    RunReport,
)
from .molecule import model_to_document, random_model, to_fluctuation
from .radiation import (
    build_shg_config,
    contract_amplitude,
    elastic_energy_mismatch,
    mode_frequency,
    polarization_contraction,
    shg_prefactor,
)
from .response import (
    ALLOWED_MULTIPLES,
    equivalence_report,
    evaluate_beta,
    off_resonant_grid,
)
from .environment import apply_shifts, environment_shift
from .utils import get_logger

SCHEMA_VERSION = 1

# Exit code for a run that finished but failed its tolerance
EXIT_CHECK_FAILED = 4

ATOMIC_UNITS = {
    'energy': 'hartree',
    'omega': 'hartree',
    'beta': 'au',
    'dipole': 'au',
}

# Level counts cycled through by the self test
SELFTEST_LEVELS = (2, 3, 4, 5)


# ============================================================
# HELPERS
# ============================================================

def input_digest(payload: Dict[str, Any]) -> str:
    """SHA-256 of the canonical JSON form of the inputs."""
    canonical = json.dumps(payload, sort_keys=True, separators=(',', ':'))
    return hashlib.sha256(canonical.encode('utf-8')).hexdigest()


def complex_pair(value: complex) -> List[float]:
    value = complex(value)
    return [value.real, value.imag]


def tensor_payload(beta: BetaTensor) -> Dict[str, Any]:
    """JSON-ready tensor; complex components become [re, im] pairs."""
    return {
        'representation': beta.representation.value,
        'omega': beta.omega,
        'damping_convention': DampingConvention(beta.damping_convention).value,
        'symmetrized': beta.symmetrized,
        'components': [
            [[complex_pair(beta.components[i, j, k]) for k in range(3)] for j in range(3)]
            for i in range(3)
        ],
    }


def near_resonance_warnings(
    model: MolecularModel,
    omega: float,
    convention: DampingConvention,
    threshold: float,
) -> List[str]:
    """Warnings for undamped denominators smaller than threshold."""
    warnings = []
    for level in range(1, model.n_levels):
        damped = DampingConvention(convention) != DampingConvention.NONE and model.widths[level] > 0.0
        if damped:
            continue
        for multiple in ALLOWED_MULTIPLES:
            value = -float(model.energies[level]) + multiple * omega
            if abs(value) < threshold:
                warnings.append(
                    f"near resonance: level {level}, multiple {multiple:+d} at omega={omega:.6g} "
                    f"gives denominator {value:.3e} hartree"
                )
    return warnings


def _in_representation(model: MolecularModel, representation: str) -> MolecularModel:
    if Representation(representation) == Representation.FLUCTUATION:
        return to_fluctuation(model)
    return model


def _report(
    subcommand: str,
    inputs: Dict[str, Any],
    parameters: Dict[str, Any],
    results: Dict[str, Any],
    warnings: Optional[List[str]] = None,
    units: Optional[Dict[str, str]] = None,
    exit_code: int = 0,
) -> RunReport:
    digest = input_digest({'subcommand': subcommand, 'inputs': inputs, 'parameters': parameters})
    for warning in warnings or []:
        get_logger().warning(warning)
    return RunReport(
        schema_version=SCHEMA_VERSION,
        subcommand=subcommand,
        input_digest=digest,
        parameters=parameters,
        results=results,
        units=dict(ATOMIC_UNITS) if units is None else units,
        warnings=warnings or [],
        exit_code=exit_code,
    )


# ============================================================
# SUBCOMMANDS
# ============================================================

def run_beta(
    config: RunConfig,
    model: MolecularModel,
    omega: float,
    representation: str = 'standard',
    symmetrized: bool = False,
) -> RunReport:
    """Evaluate beta in one representation or in both with their difference."""
    logger = get_logger()
    names = ['standard', 'fluctuation'] if representation == 'both' else [representation]

    tensors: Dict[str, Dict[str, Any]] = {}
    for name in names:
        beta = evaluate_beta(
            _in_representation(model, name), omega, config.damping,
            config.resonance_tolerance, symmetrized=symmetrized,
        )
        tensors[name] = tensor_payload(beta)
        logger.info(f"Evaluated beta ({name}) at omega={omega:.6g}")

    results: Dict[str, Any] = {'tensors': tensors}
    if representation == 'both':
        report = equivalence_report(model, omega, config.damping, config.resonance_tolerance)
        results['max_rel_diff_symmetrized'] = report.max_rel_diff_symmetrized
        results['max_rel_diff_raw'] = report.max_rel_diff_raw

    parameters = {
        'omega': omega,
        'representation': representation,
        'damping': DampingConvention(config.damping).value,
        'symmetrize': symmetrized,
    }
    return _report(
        'beta',
        {'molecule': model_to_document(model)},
        parameters,
        results,
        warnings=near_resonance_warnings(model, omega, config.damping, config.near_resonance_warning),
    )


def run_terms(config: RunConfig, model: MolecularModel, representation: str = 'standard') -> RunReport:
    """List the enumerated terms of a model in one representation."""
    terms = enumerate_terms(_in_representation(model, representation))
    results = {
        'representation': representation,
        'count': len(terms),
        'terms': [
            {
                'ordering': term.ordering,
                'r': term.intermediates[0],
                's': term.intermediates[1],
                'pattern': term.index_pattern,
                'multiples': [term.denominator_spec[0][1], term.denominator_spec[1][1]],
            }
            for term in terms
        ],
    }
    return _report(
        'terms',
        {'molecule': model_to_document(model)},
        {'representation': representation},
        results,
        units={'multiples': 'hbar*omega'},
    )


def run_check(
    config: RunConfig,
    model: MolecularModel,
    omega_min: float,
    omega_max: float,
    steps: int,
) -> RunReport:
    """
    Run the equivalence audit over an evenly spaced frequency grid.

    Grid points fan out over config.check_workers threads; results keep
    grid order.
    """
    logger = get_logger()
    if steps < 1:
        raise InputValidationError("--steps must be at least 1")
    if not 0.0 < omega_min <= omega_max:
        raise InputValidationError("frequency grid needs 0 < omega-min <= omega-max")

    grid = np.linspace(omega_min, omega_max, steps)

    def audit(omega: float):
        return equivalence_report(model, float(omega), config.damping, config.resonance_tolerance)

    if config.check_workers > 1:
        with ThreadPoolExecutor(max_workers=config.check_workers) as executor:
            reports = list(executor.map(audit, grid))
    else:
        reports = [audit(omega) for omega in grid]

    points = []
    warnings: List[str] = []
    for index, report in enumerate(reports):
        passed = report.max_rel_diff_symmetrized <= config.check_tolerance
        points.append({
            'index': index,
            'omega': report.omega,
            'max_rel_diff_symmetrized': report.max_rel_diff_symmetrized,
            'max_rel_diff_raw': report.max_rel_diff_raw,
            'passed': passed,
        })
        warnings.extend(
            near_resonance_warnings(model, report.omega, config.damping, config.near_resonance_warning)
        )

    passed = all(point['passed'] for point in points)
    logger.info(f"Equivalence check over {steps} point(s): {'passed' if passed else 'FAILED'}")

    parameters = {
        'omega_min': omega_min,
        'omega_max': omega_max,
        'steps': steps,
        'tolerance': config.check_tolerance,
        'damping': DampingConvention(config.damping).value,
    }
    return _report(
        'check',
        {'molecule': model_to_document(model)},
        parameters,
        {'grid': points, 'tolerance': config.check_tolerance, 'passed': passed},
        warnings=warnings,
        units={'omega': 'hartree', 'max_rel_diff': 'dimensionless'},
        exit_code=0 if passed else EXIT_CHECK_FAILED,
    )


def run_amplitude(config: RunConfig, model: MolecularModel, omega: float) -> RunReport:
    """Single-centre SHG amplitude for a collinear pair of modes along z."""
    shg = build_shg_config(omega, config.occupation, config.volume, config.pol_in, config.pol_out)
    mode_omega = mode_frequency(shg.fundamental)
    beta = evaluate_beta(
        _in_representation(model, config.amplitude_representation),
        mode_omega, config.damping, config.resonance_tolerance,
    )
    amplitude = contract_amplitude(shg, beta)

    results = {
        'omega': mode_omega,
        'n': shg.n,
        'volume': shg.fundamental.volume,
        'pol_in': config.pol_in,
        'pol_out': config.pol_out,
        'prefactor': complex_pair(shg_prefactor(shg)),
        'contraction': complex_pair(polarization_contraction(shg, beta)),
        'amplitude': complex_pair(amplitude),
        'amplitude_abs2': abs(amplitude) ** 2,
        'elastic_energy_mismatch': elastic_energy_mismatch(shg),
    }
    parameters = {
        'omega': omega,
        'n': config.occupation,
        'volume': config.volume,
        'pol_in': config.pol_in,
        'pol_out': config.pol_out,
        'representation': config.amplitude_representation,
        'damping': DampingConvention(config.damping).value,
    }
    return _report(
        'amplitude',
        {'molecule': model_to_document(model)},
        parameters,
        results,
        warnings=near_resonance_warnings(model, mode_omega, config.damping, config.near_resonance_warning),
        units={**ATOMIC_UNITS, 'volume': 'bohr^3', 'amplitude': 'hartree'},
    )


def run_envshift(
    config: RunConfig,
    assembly: Assembly,
    apply: bool = False,
    omega: Optional[float] = None,
    representation: str = 'fluctuation',
) -> RunReport:
    """
    Static environment correction of every site; with apply, also the
    first-order shifted levels and beta of each site at omega.
    """
    if apply and omega is None:
        raise InputValidationError("--apply-shifts needs --omega")

    shift = environment_shift(assembly, config.sign_convention)
    warnings: List[str] = []
    sites = []
    for index, site in enumerate(assembly.sites):
        matrix = shift.per_molecule_matrix[index]
        entry: Dict[str, Any] = {
            'index': index,
            'position': [float(x) for x in site.position],
            'scalar_shift': shift.per_molecule_scalar[index],
            'matrix': [[float(x) for x in row] for row in matrix],
        }
        if apply:
            shifted = apply_shifts(site.model, matrix)
            beta = evaluate_beta(
                _in_representation(shifted, representation), omega,
                config.damping, config.resonance_tolerance,
            )
            entry['shifted_energies'] = [float(e) for e in shifted.energies]
            entry['beta'] = tensor_payload(beta)
            warnings.extend(
                near_resonance_warnings(shifted, omega, config.damping, config.near_resonance_warning)
            )
        sites.append(entry)

    parameters = {
        'sign_convention': shift.sign_convention.value,
        'cutoff': assembly.cutoff,
        'max_range': assembly.max_range,
        'apply_shifts': apply,
        'omega': omega,
        'representation': representation if apply else None,
        'damping': DampingConvention(config.damping).value,
    }
    inputs = {
        'sites': [
            {'position': [float(x) for x in site.position], 'molecule': model_to_document(site.model)}
            for site in assembly.sites
        ],
    }
    return _report(
        'envshift',
        inputs,
        parameters,
        {
            'sites': sites,
            'total_scalar': shift.total_scalar,
            'sign_convention': shift.sign_convention.value,
        },
        warnings=warnings,
        units={**ATOMIC_UNITS, 'length': 'bohr', 'shift': 'hartree'},
    )


def run_selftest(config: RunConfig) -> RunReport:
    """
    Representation-equivalence audit over seeded random models.

    Model i has SELFTEST_LEVELS[i % 4] levels and is audited at
    config.selftest_frequencies off-resonant frequencies.
    """
    logger = get_logger()
    rng = np.random.default_rng(config.selftest_seed)

    models = []
    worst = 0.0
    for index in range(config.selftest_models):
        n_levels = SELFTEST_LEVELS[index % len(SELFTEST_LEVELS)]
        model = random_model(n_levels, rng, label=f"selftest-{index}")
        frequencies = off_resonant_grid(model, config.selftest_frequencies)

        model_worst = 0.0
        for omega in frequencies:
            report = equivalence_report(model, float(omega), DampingConvention.NONE, config.resonance_tolerance)
            model_worst = max(model_worst, report.max_rel_diff_symmetrized)

        worst = max(worst, model_worst)
        models.append({
            'index': index,
            'levels': n_levels,
            'frequencies': [float(omega) for omega in frequencies],
            'worst': model_worst,
        })
        logger.debug(f"selftest model {index} ({n_levels} levels): worst {model_worst:.3e}")

    passed = worst <= config.check_tolerance
    logger.info(f"Self test over {len(models)} model(s): worst {worst:.3e}, {'passed' if passed else 'FAILED'}")

    parameters = {
        'seed': config.selftest_seed,
        'models': config.selftest_models,
        'frequencies': config.selftest_frequencies,
        'tolerance': config.check_tolerance,
    }
    return _report(
        'selftest',
        {},
        parameters,
        {
            'seed': config.selftest_seed,
            'models': models,
            'worst': worst,
            'tolerance': config.check_tolerance,
            'passed': passed,
        },
        units={'omega': 'hartree', 'max_rel_diff': 'dimensionless'},
        exit_code=0 if passed else EXIT_CHECK_FAILED,
    )
