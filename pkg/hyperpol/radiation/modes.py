"""
Free-field photon mode bookkeeping.
"""

import math
from typing import Dict, Iterable, Tuple

import numpy as np

from ..errors import InputValidationError
from ..models import Constants, PhotonMode
from ..molecule import ATOMIC_CONSTANTS

_SQRT_HALF = 1.0 / math.sqrt(2.0)

# Polarizations for propagation along +z
POLARIZATIONS: Dict[str, Tuple[complex, complex, complex]] = {
    'x': (1.0, 0.0, 0.0),
    'y': (0.0, 1.0, 0.0),
    'circ+': (_SQRT_HALF, 1j * _SQRT_HALF, 0.0),
    'circ-': (_SQRT_HALF, -1j * _SQRT_HALF, 0.0),
}


def polarization_vector(name: str) -> np.ndarray:
    """Unit polarization vector for a mode travelling along z."""
    try:
        return np.array(POLARIZATIONS[name], dtype=complex)
    except KeyError:
        raise InputValidationError(
            f"unknown polarization {name!r}; expected one of {', '.join(POLARIZATIONS)}"
        ) from None


def mode_frequency(mode: PhotonMode, constants: Constants = ATOMIC_CONSTANTS) -> float:
    """Vacuum dispersion, omega = c |k|."""
    return constants.c * mode.wavenumber


def mode_normalization(mode: PhotonMode, constants: Constants = ATOMIC_CONSTANTS) -> float:
    """Per-mode field scale (hbar c |k| / (2 eps0 V))^(1/2)."""
    return math.sqrt(constants.hbar * constants.c * mode.wavenumber / (2.0 * constants.eps0 * mode.volume))


def mode_energy(
    occupations: Iterable[Tuple[PhotonMode, int]],
    constants: Constants = ATOMIC_CONSTANTS,
) -> float:
    """Free-field energy sum of (n + 1/2) hbar c |k| over the listed modes."""
    energy = 0.0
    for mode, n in occupations:
        if n < 0:
            raise InputValidationError(f"photon occupation must be non-negative, got {n}")
        energy += (n + 0.5) * constants.hbar * constants.c * mode.wavenumber
    return energy
