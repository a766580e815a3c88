"""
Photon modes, SHG prefactor and amplitude contraction.
"""

from .modes import POLARIZATIONS, mode_energy, mode_frequency, mode_normalization, polarization_vector
from .amplitude import (
    build_shg_config,
    contract_amplitude,
    elastic_energy_mismatch,
    polarization_contraction,
    shg_prefactor,
)

__all__ = [
    'POLARIZATIONS',
    'mode_energy',
    'mode_frequency',
    'mode_normalization',
    'polarization_vector',
    'build_shg_config',
    'contract_amplitude',
    'elastic_energy_mismatch',
    'polarization_contraction',
    'shg_prefactor',
]
