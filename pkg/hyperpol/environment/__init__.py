"""
Static environment corrections for assemblies of polar molecules.
"""

from .assembly import load_assembly, load_assembly_file
from .shifts import (
    apply_shifts,
    environment_shift,
    ground_state_shift,
    pair_orientation_factor,
    perturbation_matrix,
)

__all__ = [
    'load_assembly',
    'load_assembly_file',
    'apply_shifts',
    'environment_shift',
    'ground_state_shift',
    'pair_orientation_factor',
    'perturbation_matrix',
]
