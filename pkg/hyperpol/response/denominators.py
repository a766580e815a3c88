"""
Energy denominators of the SHG sum over states.
"""

import numpy as np

from ..errors import InputValidationError, ResonanceError
from ..models import DampingConvention, MolecularModel
from ..molecule import ATOMIC_CONSTANTS

ALLOWED_MULTIPLES = (-2, -1, 1, 2)

# Undamped denominators below this magnitude are treated as singular (hartree)
RESONANCE_TOLERANCE = 1e-12


def denominator(
    model: MolecularModel,
    level: int,
    multiple: int,
    omega: float,
    convention: DampingConvention = DampingConvention.NONE,
    tolerance: float = RESONANCE_TOLERANCE,
) -> np.clongdouble:
    """
    Evaluate E~_0r + multiple * hbar * omega, with E~_0r = -E_r.

    Damping adds +i*hbar*Gamma_r in every factor under the constant-sign
    convention, and +i*hbar*Gamma_r (resonant, multiple > 0) or
    -i*hbar*Gamma_r (anti-resonant, multiple < 0) under the sign-alternating
    one.

    The value is formed in extended precision, where -E_r + m*omega is exact
    for double inputs of comparable magnitude.

    Raises:
        ResonanceError: if the factor carries no damping and |value| < tolerance
    """
    if multiple not in ALLOWED_MULTIPLES:
        raise InputValidationError(f"denominator multiple {multiple} not in {ALLOWED_MULTIPLES}")
    if not 0 <= level < model.n_levels:
        raise InputValidationError(f"level {level} outside 0..{model.n_levels - 1}")

    hbar = np.longdouble(ATOMIC_CONSTANTS.hbar)
    value = -np.longdouble(model.energies[level]) + multiple * hbar * np.longdouble(omega)
    gamma = hbar * np.longdouble(model.widths[level])

    convention = DampingConvention(convention)
    if convention == DampingConvention.CONSTANT_SIGN:
        damping = gamma
    elif convention == DampingConvention.SIGN_ALTERNATING:
        damping = gamma if multiple > 0 else -gamma
    else:
        damping = np.longdouble(0.0)

    if damping == 0.0 and abs(value) < tolerance:
        raise ResonanceError(level, multiple, float(value), omega)

    return value + np.clongdouble(1j) * damping
