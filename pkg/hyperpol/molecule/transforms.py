"""
Pure transformations of molecular models.
"""

from typing import Any, Dict, Optional, Tuple

import numpy as np

from ..errors import InputValidationError
from ..models import MolecularModel, Representation
from ..utils import RotationValidator, get_logger


def to_fluctuation(model: MolecularModel) -> MolecularModel:
    """
    Subtract the ground-state permanent moment from every diagonal moment.

    Off-diagonal (transition) moments, energies and widths are untouched, so
    the result carries excited-minus-ground dipole shifts on its diagonal and
    an identically zero ground moment. Applying it to a model that is already
    in the fluctuation representation returns an equal model.
    """
    ground = model.ground_dipole.copy()
    dipoles = np.array(model.dipoles)
    for r in range(model.n_levels):
        dipoles[r, r] = dipoles[r, r] - ground
    dipoles[0, 0] = 0.0

    return MolecularModel(
        label=model.label,
        energies=model.energies,
        widths=model.widths,
        dipoles=dipoles,
        representation=Representation.FLUCTUATION,
    )


def rotate_model(model: MolecularModel, rotation: Any, tolerance: float = 1e-12) -> MolecularModel:
    """Apply a proper rotation R to every dipole vector (mu_rs -> R mu_rs)."""
    rotation = np.asarray(rotation, dtype=float)
    is_valid, error = RotationValidator.validate_rotation(rotation, tolerance)
    if not is_valid:
        raise InputValidationError(error)

    return MolecularModel(
        label=model.label,
        energies=model.energies,
        widths=model.widths,
        dipoles=np.einsum('ab,rsb->rsa', rotation, model.dipoles),
        representation=model.representation,
    )


def random_model(
    n_levels: int,
    rng: np.random.Generator,
    energy_range: Tuple[float, float] = (0.2, 0.6),
    moment_range: Tuple[float, float] = (-2.0, 2.0),
    width: float = 0.0,
    label: Optional[str] = None,
    resolution: float = 2.0 ** -32,
) -> MolecularModel:
    """
    Draw a standard-representation model with uniform random moments.

    Excitation energies are uniform in energy_range and sorted; every moment
    component (permanent and transition) is uniform in moment_range and the
    matrix is mirrored to stay real symmetric.

    Moments are snapped to multiples of resolution (a power of two), so
    differences of two moments, and hence the fluctuation transform, are
    exact in double precision.
    """
    if n_levels < 1:
        raise InputValidationError("a model needs at least one level")

    energies = np.concatenate([[0.0], np.sort(rng.uniform(*energy_range, size=n_levels - 1))])
    widths = np.concatenate([[0.0], np.full(n_levels - 1, width)])

    dipoles = np.zeros((n_levels, n_levels, 3))
    for r in range(n_levels):
        for s in range(r, n_levels):
            dipoles[r, s] = np.round(rng.uniform(*moment_range, size=3) / resolution) * resolution
            dipoles[s, r] = dipoles[r, s]

    return MolecularModel(
        label=label or f"random-{n_levels}",
        energies=energies,
        widths=widths,
        dipoles=dipoles,
    )


def model_to_document(model: MolecularModel) -> Dict[str, Any]:
    """Serialize a model back to the molecule schema (atomic units)."""
    dipoles = {}
    for r in range(model.n_levels):
        for s in range(r, model.n_levels):
            if np.any(model.dipoles[r, s] != 0.0):
                dipoles[f"{r},{s}"] = [float(x) for x in model.dipoles[r, s]]

    get_logger().debug(f"Serialized '{model.label}' with {len(dipoles)} nonzero moment(s)")
    return {
        'name': model.label,
        'units': {'energy': 'hartree', 'dipole': 'au'},
        'representation': model.representation.value,
        'levels': [
            {'energy': float(e), 'width': float(w)}
            for e, w in zip(model.energies, model.widths)
        ],
        'dipoles': dipoles,
    }
