"""
Time-ordered diagrams and state sequences for second harmonic generation.

Two photons of frequency w are absorbed and one photon of frequency 2w is
emitted. Each chronological ordering of the three events fixes which
Cartesian slot each dipole factor carries and which multiple of hbar*w
enters each energy denominator; each pair of intermediate levels (r, s)
then contributes one term.
"""

import itertools
from typing import Dict, FrozenSet, List, Tuple

from ..errors import InputValidationError
from ..models import MolecularModel, Representation, Term, TimeOrdering, VertexKind
from ..utils import get_logger

# Numerators read mu^{0r} mu^{rs} mu^{s0}; the pattern gives the Cartesian
# slot of each factor and the multiples are those of the (r, s) denominators.
ORDERING_TABLE: Dict[Tuple[VertexKind, ...], Tuple[str, Tuple[int, int]]] = {
    (VertexKind.ABSORB, VertexKind.ABSORB, VertexKind.EMIT): ('ijk', (2, 1)),
    (VertexKind.ABSORB, VertexKind.EMIT, VertexKind.ABSORB): ('jik', (-1, 1)),
    (VertexKind.EMIT, VertexKind.ABSORB, VertexKind.ABSORB): ('jki', (-1, -2)),
}


def enumerate_orderings() -> List[TimeOrdering]:
    """
    Return the three SHG time orderings.

    Events are listed chronologically; id 0 has the emission last and the
    emission moves one step earlier with each id.
    """
    distinct = set(itertools.permutations(
        (VertexKind.ABSORB, VertexKind.ABSORB, VertexKind.EMIT)
    ))
    ordered = sorted(distinct, key=lambda events: -events.index(VertexKind.EMIT))
    return [TimeOrdering(id=index, events=events) for index, events in enumerate(ordered)]


def structural_zero_pairs(representation: Representation) -> FrozenSet[Tuple[int, int]]:
    """Level pairs whose moment vanishes identically in a representation."""
    if representation == Representation.FLUCTUATION:
        return frozenset({(0, 0)})
    return frozenset()


def numerator_pairs(term: Term) -> Tuple[Tuple[int, int], ...]:
    """The (bra, ket) level pairs of the three numerator factors, left to right."""
    r, s = term.intermediates
    return (0, r), (r, s), (s, 0)


def _enumerate(n_levels: int, representation: Representation) -> List[Term]:
    if n_levels < 1:
        raise InputValidationError("level count must be at least 1")

    zeros = structural_zero_pairs(representation)
    terms = []
    for ordering in enumerate_orderings():
        pattern, (multiple_r, multiple_s) = ORDERING_TABLE[ordering.events]
        for r in range(n_levels):
            for s in range(n_levels):
                term = Term(
                    ordering=ordering.id,
                    intermediates=(r, s),
                    index_pattern=pattern,
                    denominator_spec=((r, multiple_r), (s, multiple_s)),
                )
                if not zeros.intersection(numerator_pairs(term)):
                    terms.append(term)
    return terms


def enumerate_terms(model: MolecularModel) -> List[Term]:
    """
    Build the term list of a model, sorted by (ordering, r, s).

    The standard representation keeps all 3 L^2 state sequences, including
    ground-state intermediates. The fluctuation representation drops every
    sequence whose numerator contains the identically vanishing ground
    moment.
    """
    terms = _enumerate(model.n_levels, model.representation)
    get_logger().debug(
        f"{len(terms)} term(s) for {model.n_levels} level(s) in the "
        f"{model.representation.value} representation"
    )
    return terms


def term_count(n_levels: int, representation: Representation) -> int:
    """Number of terms, obtained by pruning the enumeration rather than by formula."""
    return len(_enumerate(n_levels, Representation(representation)))
