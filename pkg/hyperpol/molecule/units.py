"""
Unit systems and conversion factors.
Everything downstream works in atomic units (hbar = 1, 4 pi eps0 = 1);
file inputs are converted here at load time.
"""

import math
from typing import Dict, Union

import numpy as np
from scipy import constants

from ..errors import InputValidationError
from ..models import Constants

# ============================================================
# PHYSICAL CONSTANTS
# ============================================================

ATOMIC_CONSTANTS = Constants(
    name="atomic",
    hbar=1.0,
    c=1.0 / constants.fine_structure,
    eps0=1.0 / (4.0 * math.pi),
)

SI_CONSTANTS = Constants(
    name="si",
    hbar=constants.hbar,
    c=constants.c,
    eps0=constants.epsilon_0,
)

# ============================================================
# CONVERSION FACTORS (value in unit * factor = value in a.u.)
# ============================================================

BOHR_RADIUS_M = constants.physical_constants['Bohr radius'][0]

HARTREE_PER_EV = constants.physical_constants['electron volt-hartree relationship'][0]

# 1 D = 1e-21 / c  C m; the atomic unit of dipole is e * a0
AU_PER_DEBYE = (1e-21 / constants.c) / (constants.e * BOHR_RADIUS_M)

ENERGY_UNITS: Dict[str, float] = {
    'hartree': 1.0,
    'eV': HARTREE_PER_EV,
}

DIPOLE_UNITS: Dict[str, float] = {
    'au': 1.0,
    'debye': AU_PER_DEBYE,
}

LENGTH_UNITS: Dict[str, float] = {
    'bohr': 1.0,
    'angstrom': constants.angstrom / BOHR_RADIUS_M,
    'nm': constants.nano / BOHR_RADIUS_M,
}

ALL_UNITS: Dict[str, float] = {**ENERGY_UNITS, **DIPOLE_UNITS, **LENGTH_UNITS}

Quantity = Union[float, np.ndarray]


def _factor(unit: str) -> float:
    try:
        return ALL_UNITS[unit]
    except KeyError:
        raise InputValidationError(
            f"unknown unit {unit!r}; expected one of {', '.join(sorted(ALL_UNITS))}"
        ) from None


def to_atomic(value: Quantity, unit: str) -> Quantity:
    """Convert a value expressed in `unit` to atomic units."""
    return value * _factor(unit)


def from_atomic(value: Quantity, unit: str) -> Quantity:
    """Convert a value in atomic units to `unit`."""
    return value / _factor(unit)
