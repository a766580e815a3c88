"""
Molecular level data: loading, units and representation transforms.
"""

from .units import (
    ATOMIC_CONSTANTS,
    SI_CONSTANTS,
    AU_PER_DEBYE,
    HARTREE_PER_EV,
    from_atomic,
    to_atomic,
)
from .loader import load_model, load_model_file, parse_document
from .transforms import model_to_document, random_model, rotate_model, to_fluctuation

__all__ = [
    'ATOMIC_CONSTANTS',
    'SI_CONSTANTS',
    'AU_PER_DEBYE',
    'HARTREE_PER_EV',
    'from_atomic',
    'to_atomic',
    'load_model',
    'load_model_file',
    'parse_document',
    'model_to_document',
    'random_model',
    'rotate_model',
    'to_fluctuation',
]
