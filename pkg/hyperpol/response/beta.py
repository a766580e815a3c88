"""
SHG hyperpolarizability by sum over states.

beta_ijk(-2w; w, w) is accumulated term by term over the diagram list of
the model's representation. Each term contributes the outer product of its
three dipole factors, arranged by the term's index pattern, divided by its
two energy denominators.

Terms are formed and accumulated in extended precision (np.longdouble) with
compensated summation, and jk-symmetrization happens before the final
rounding, so the stored double tensor carries only its own rounding even
when large standard-representation terms cancel.
"""

import itertools
from typing import Any, Dict, Tuple

import numpy as np

from ..diagrams import enumerate_terms
from ..errors import InputValidationError
from ..models import BetaTensor, DampingConvention, MolecularModel
from ..utils import get_logger
from .denominators import RESONANCE_TOLERANCE, denominator
from .summation import CompensatedSum

# Floor of the relative-difference denominator
RELATIVE_FLOOR = 1e-300


def accumulate_terms(
    model: MolecularModel,
    omega: float,
    convention: DampingConvention = DampingConvention.NONE,
    tolerance: float = RESONANCE_TOLERANCE,
) -> np.ndarray:
    """Raw (3, 3, 3) term sum in extended precision (np.clongdouble)."""
    if not omega > 0.0:
        raise InputValidationError(f"omega must be positive, got {omega}")

    cache: Dict[Tuple[int, int], np.clongdouble] = {}

    def factor(level: int, multiple: int) -> np.clongdouble:
        if (level, multiple) not in cache:
            cache[(level, multiple)] = denominator(model, level, multiple, omega, convention, tolerance)
        return cache[(level, multiple)]

    mu = model.dipoles.astype(np.longdouble)
    total = CompensatedSum((3, 3, 3), dtype=np.clongdouble)
    for term in enumerate_terms(model):
        r, s = term.intermediates
        p = term.index_pattern
        numerator = np.einsum(f'{p[0]},{p[1]},{p[2]}->ijk', mu[0, r], mu[r, s], mu[s, 0])
        (level_r, multiple_r), (level_s, multiple_s) = term.denominator_spec
        weight = 1.0 / (factor(level_r, multiple_r) * factor(level_s, multiple_s))
        total.add(numerator * weight)

    get_logger().debug(
        f"beta for '{model.label}' at omega={omega:.6g}: {total.count} term(s), "
        f"{len(cache)} distinct denominator(s)"
    )
    return total.total()


def evaluate_beta(
    model: MolecularModel,
    omega: float,
    convention: DampingConvention = DampingConvention.NONE,
    tolerance: float = RESONANCE_TOLERANCE,
    symmetrized: bool = False,
) -> BetaTensor:
    """
    Evaluate the SHG tensor of a model at frequency omega.

    Args:
        model: molecule in either representation
        omega: fundamental photon frequency (hartree)
        convention: damping convention for the denominators
        tolerance: resonance guard on undamped denominators
        symmetrized: return beta_i(jk) instead of the raw tensor

    Returns:
        BetaTensor tagged with the model's representation

    Raises:
        ResonanceError: if an undamped denominator vanishes
    """
    components = accumulate_terms(model, omega, convention, tolerance)
    if symmetrized:
        components = 0.5 * (components + components.transpose(0, 2, 1))

    return BetaTensor(
        components=components.astype(complex),
        omega=omega,
        representation=model.representation,
        damping_convention=convention,
        symmetrized=symmetrized,
    )


def symmetrize(beta: BetaTensor) -> BetaTensor:
    """Return beta_i(jk) = (beta_ijk + beta_ikj) / 2."""
    if beta.symmetrized:
        return beta
    components = 0.5 * (beta.components + beta.components.transpose(0, 2, 1))
    return beta.model_copy(update={'components': _readonly(components), 'symmetrized': True})


def rotate_tensor(beta: BetaTensor, rotation: Any) -> BetaTensor:
    """Apply a rotation to all three Cartesian indices."""
    rotation = np.asarray(rotation, dtype=float)
    components = np.einsum('ai,bj,ck,ijk->abc', rotation, rotation, rotation, beta.components)
    return beta.model_copy(update={'components': _readonly(components)})


def max_relative_difference(a: np.ndarray, b: np.ndarray) -> float:
    """Largest |a - b| / max(|a|, |b|, floor) over all components."""
    a, b = np.asarray(a), np.asarray(b)
    scale = np.maximum(np.maximum(np.abs(a), np.abs(b)), RELATIVE_FLOOR)
    return float(np.max(np.abs(a - b) / scale))


def kleinman_asymmetry(beta: BetaTensor) -> float:
    """Largest deviation under the six index permutations, relative to max |beta_ijk|."""
    components = beta.components
    scale = max(float(np.max(np.abs(components))), RELATIVE_FLOOR)
    deviation = max(
        float(np.max(np.abs(components - components.transpose(perm))))
        for perm in itertools.permutations(range(3))
    )
    return deviation / scale


def _readonly(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=complex)
    array.setflags(write=False)
    return array
