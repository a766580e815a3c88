"""
Single-centre SHG transition amplitude.
"""

import math

import numpy as np
from pydantic import ValidationError

from ..errors import FrequencyMismatchError, InputValidationError
from ..models import BetaTensor, Constants, PhotonMode, SHGConfig
from ..molecule import ATOMIC_CONSTANTS
from ..utils import get_logger
from .modes import mode_energy, mode_frequency, polarization_vector

# Relative tolerance between the tensor frequency and c|k|
FREQUENCY_TOLERANCE = 1e-12


def build_shg_config(
    omega: float,
    n: int,
    volume: float,
    pol_in: str = 'x',
    pol_out: str = 'x',
    constants: Constants = ATOMIC_CONSTANTS,
) -> SHGConfig:
    """Collinear configuration along z: |k| = omega / c and k' = 2k."""
    if not omega > 0.0:
        raise InputValidationError(f"omega must be positive, got {omega}")

    k = np.array([0.0, 0.0, omega / constants.c])
    try:
        return SHGConfig(
            fundamental=PhotonMode(k=k, polarization=polarization_vector(pol_in), volume=volume),
            harmonic=PhotonMode(k=2.0 * k, polarization=polarization_vector(pol_out), volume=volume),
            n=n,
        )
    except ValidationError as e:
        raise InputValidationError(e.errors()[0]['msg']) from e


def shg_prefactor(config: SHGConfig, constants: Constants = ATOMIC_CONSTANTS) -> complex:
    """-i (hbar c / 2 eps0 V)^(3/2) (k^2 k')^(1/2) (n (n - 1))^(1/2)."""
    volume = config.fundamental.volume
    k = config.fundamental.wavenumber
    k_prime = config.harmonic.wavenumber
    scale = (constants.hbar * constants.c / (2.0 * constants.eps0 * volume)) ** 1.5
    occupation = math.sqrt(config.n * (config.n - 1)) if config.n >= 1 else 0.0
    return -1j * scale * math.sqrt(k * k * k_prime) * occupation


def polarization_contraction(config: SHGConfig, beta: BetaTensor) -> complex:
    """sum_ijk conj(e'_i) e_j e_k beta_ijk."""
    e_in = config.fundamental.polarization
    e_out = config.harmonic.polarization
    return complex(np.einsum('i,j,k,ijk->', np.conj(e_out), e_in, e_in, beta.components))


def contract_amplitude(
    config: SHGConfig,
    beta: BetaTensor,
    constants: Constants = ATOMIC_CONSTANTS,
    tolerance: float = FREQUENCY_TOLERANCE,
) -> complex:
    """
    Contract beta with conj(e') e e and apply the SHG prefactor.

    Raises:
        FrequencyMismatchError: if beta was evaluated at another frequency than c|k|
    """
    omega = mode_frequency(config.fundamental, constants)
    if abs(beta.omega - omega) > tolerance * max(abs(omega), abs(beta.omega)):
        raise FrequencyMismatchError(
            f"tensor evaluated at omega={beta.omega:.12g} but the fundamental mode has c|k|={omega:.12g}"
        )

    contraction = polarization_contraction(config, beta)
    amplitude = shg_prefactor(config, constants) * contraction

    get_logger().debug(f"S_X = {amplitude:.6e} (contraction {contraction:.6e})")
    return amplitude


def elastic_energy_mismatch(config: SHGConfig, constants: Constants = ATOMIC_CONSTANTS) -> float:
    """Radiation energy of |n(k); 0(k')> minus that of |n-2(k); 1(k')>."""
    initial = [(config.fundamental, config.n), (config.harmonic, 0)]
    final = [(config.fundamental, max(config.n - 2, 0)), (config.harmonic, 1)]
    return mode_energy(initial, constants) - mode_energy(final, constants)
