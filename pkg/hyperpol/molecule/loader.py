"""
Molecule document loader.
Parses the JSON molecule schema, converts to atomic units and validates.
"""

import json
import re
from pathlib import Path
from typing import Any, Dict, Mapping, Tuple, Union

import numpy as np
from pydantic import ValidationError

from ..errors import InputValidationError
from ..models import MolecularModel, Representation, SYMMETRY_TOLERANCE
from ..utils import get_logger
from .units import DIPOLE_UNITS, ENERGY_UNITS, to_atomic

# Dipole keys look like "r,s"
PAIR_KEY_PATTERN = re.compile(r'^\s*(\d+)\s*,\s*(\d+)\s*$')

Document = Union[str, bytes, Mapping[str, Any]]


def parse_document(document: Document) -> Dict[str, Any]:
    """Return the decoded JSON object behind a molecule document."""
    if isinstance(document, Mapping):
        return dict(document)
    try:
        data = json.loads(document)
    except (json.JSONDecodeError, UnicodeDecodeError) as e:
        raise InputValidationError(f"could not parse molecule document: {e}") from e
    if not isinstance(data, dict):
        raise InputValidationError("molecule document must be a JSON object")
    return data


def _parse_pair_key(key: str, n_levels: int) -> Tuple[int, int]:
    match = PAIR_KEY_PATTERN.match(key)
    if not match:
        raise InputValidationError(f"dipole key {key!r} is not of the form \"r,s\"")
    r, s = int(match.group(1)), int(match.group(2))
    if r >= n_levels or s >= n_levels:
        raise InputValidationError(f"dipole key {key!r} refers to a level beyond {n_levels - 1}")
    return r, s


def _parse_vector(key: str, value: Any) -> np.ndarray:
    try:
        vector = np.array(value, dtype=float)
    except (TypeError, ValueError) as e:
        raise InputValidationError(f"dipole {key!r} is not numeric: {e}") from e
    if vector.shape != (3,):
        raise InputValidationError(f"dipole {key!r} must be a 3-vector [x, y, z]")
    return vector


def load_model(document: Document) -> MolecularModel:
    """
    Load a molecule document into a validated model in atomic units.

    Args:
        document: JSON text (or an already decoded mapping) following the
            molecule schema: name, units, levels, dipoles

    Returns:
        MolecularModel in the standard representation

    Raises:
        InputValidationError: on any schema or invariant violation
    """
    logger = get_logger()
    data = parse_document(document)

    units = data.get('units') or {}
    energy_unit = units.get('energy', 'hartree')
    dipole_unit = units.get('dipole', 'au')
    if energy_unit not in ENERGY_UNITS:
        raise InputValidationError(f"unknown energy unit {energy_unit!r}")
    if dipole_unit not in DIPOLE_UNITS:
        raise InputValidationError(f"unknown dipole unit {dipole_unit!r}")

    levels = data.get('levels')
    if not isinstance(levels, list) or not levels:
        raise InputValidationError("missing ground level: 'levels' must be a non-empty array")

    try:
        energies = np.array([float(level['energy']) for level in levels])
        widths = np.array([float(level.get('width', 0.0)) for level in levels])
    except (KeyError, TypeError, ValueError) as e:
        raise InputValidationError(f"malformed level entry: {e}") from e

    if energies[0] != 0.0:
        raise InputValidationError("missing ground level: first level must have energy 0")
    if np.any(energies[1:] < 0.0):
        raise InputValidationError("negative excitation energy")
    if np.any(np.diff(energies) < 0.0):
        raise InputValidationError("non-monotone excitation energies")
    if np.any(widths < 0.0):
        raise InputValidationError("negative width")

    n_levels = len(levels)
    dipoles = np.zeros((n_levels, n_levels, 3))
    given = np.zeros((n_levels, n_levels), dtype=bool)

    for key, value in (data.get('dipoles') or {}).items():
        r, s = _parse_pair_key(key, n_levels)
        vector = _parse_vector(key, value)
        if given[r, s]:
            raise InputValidationError(f"duplicate dipole entry for {r},{s}")
        for a, b in ((r, s), (s, r)):
            if given[a, b] and np.max(np.abs(dipoles[a, b] - vector)) > SYMMETRY_TOLERANCE:
                raise InputValidationError(
                    f"asymmetric dipole matrix: entries {r},{s} and {s},{r} disagree"
                )
        dipoles[r, s] = vector
        dipoles[s, r] = vector
        given[r, s] = True

    try:
        model = MolecularModel(
            label=str(data.get('name', 'molecule')),
            energies=to_atomic(energies, energy_unit),
            widths=to_atomic(widths, energy_unit),
            dipoles=to_atomic(dipoles, dipole_unit),
            representation=Representation.STANDARD,
        )
    except ValidationError as e:
        raise InputValidationError(e.errors()[0]['msg']) from e

    logger.debug(f"Loaded molecule '{model.label}' with {model.n_levels} level(s)")
    return model


def load_model_file(path: Union[str, Path]) -> MolecularModel:
    """Load a molecule document from a UTF-8 JSON file."""
    path = Path(path)
    if not path.is_file():
        raise InputValidationError(f"molecule file not found: {path}")
    return load_model(path.read_text(encoding='utf-8'))
