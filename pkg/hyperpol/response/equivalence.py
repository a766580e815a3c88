"""
Representation-equivalence audit.
"""

from typing import Tuple

import numpy as np

from ..errors import InputValidationError
from ..models import BetaTensor, DampingConvention, EquivalenceReport, MolecularModel, Representation
from ..molecule import to_fluctuation
from ..utils import get_logger
from .beta import accumulate_terms, max_relative_difference
from .denominators import RESONANCE_TOLERANCE


def _raw_and_symmetrized(
    model: MolecularModel,
    omega: float,
    convention: DampingConvention,
    tolerance: float,
) -> Tuple[BetaTensor, np.ndarray]:
    components = accumulate_terms(model, omega, convention, tolerance)
    symmetrized = 0.5 * (components + components.transpose(0, 2, 1))
    raw = BetaTensor(
        components=components.astype(complex),
        omega=omega,
        representation=model.representation,
        damping_convention=convention,
    )
    return raw, symmetrized.astype(complex)


def equivalence_report(
    model: MolecularModel,
    omega: float,
    convention: DampingConvention = DampingConvention.NONE,
    tolerance: float = RESONANCE_TOLERANCE,
) -> EquivalenceReport:
    """
    Evaluate beta from the standard moments and from their fluctuation
    transform and compare both raw and jk-symmetrized tensors.
    """
    if model.representation != Representation.STANDARD:
        raise InputValidationError("equivalence audit needs a standard-representation model")

    beta_standard, sym_standard = _raw_and_symmetrized(model, omega, convention, tolerance)
    beta_fluctuation, sym_fluctuation = _raw_and_symmetrized(
        to_fluctuation(model), omega, convention, tolerance
    )

    report = EquivalenceReport(
        omega=omega,
        beta_standard=beta_standard,
        beta_fluctuation=beta_fluctuation,
        max_rel_diff_symmetrized=max_relative_difference(sym_standard, sym_fluctuation),
        max_rel_diff_raw=max_relative_difference(beta_standard.components, beta_fluctuation.components),
    )
    get_logger().debug(
        f"equivalence at omega={omega:.6g}: symmetrized {report.max_rel_diff_symmetrized:.3e}, "
        f"raw {report.max_rel_diff_raw:.3e}"
    )
    return report


def off_resonant_grid(
    model: MolecularModel,
    count: int,
    window: Tuple[float, float] = (0.04, 0.09),
    margin: float = 0.01,
) -> np.ndarray:
    """
    Evenly spaced frequencies in window, dropping any within margin of a
    one-photon (omega = E_r) or two-photon (2 omega = E_r) resonance.
    """
    if count < 1:
        raise InputValidationError("frequency count must be at least 1")

    excitations = model.energies[1:]
    grid = np.linspace(window[0], window[1], count)
    keep = [
        omega for omega in grid
        if np.all(np.abs(excitations - omega) >= margin)
        and np.all(np.abs(excitations - 2.0 * omega) >= margin)
    ]
    return np.array(keep, dtype=float)
