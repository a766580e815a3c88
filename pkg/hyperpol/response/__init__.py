"""
Hyperpolarizability evaluation and the representation-equivalence audit.
"""

from .summation import CompensatedSum, two_sum
from .denominators import ALLOWED_MULTIPLES, RESONANCE_TOLERANCE, denominator
from .beta import (
    accumulate_terms,
    evaluate_beta,
    kleinman_asymmetry,
    max_relative_difference,
    rotate_tensor,
    symmetrize,
)
from .equivalence import equivalence_report, off_resonant_grid

__all__ = [
    'CompensatedSum',
    'two_sum',
    'ALLOWED_MULTIPLES',
    'RESONANCE_TOLERANCE',
    'denominator',
    'accumulate_terms',
    'evaluate_beta',
    'kleinman_asymmetry',
    'max_relative_difference',
    'rotate_tensor',
    'symmetrize',
    'equivalence_report',
    'off_resonant_grid',
]
