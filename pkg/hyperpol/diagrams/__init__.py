"""
Time-ordered diagram and term enumeration for SHG.
"""

from .enumerate import (
    ORDERING_TABLE,
    enumerate_orderings,
    enumerate_terms,
    numerator_pairs,
    structural_zero_pairs,
    term_count,
)

__all__ = [
    'ORDERING_TABLE',
    'enumerate_orderings',
    'enumerate_terms',
    'numerator_pairs',
    'structural_zero_pairs',
    'term_count',
]
