"""
Assembly document loader.

Accepted forms:
  [ {"position": [x, y, z], "molecule": <molecule object | "path.json">}, ... ]
  {"units": {"length": "bohr" | "angstrom" | "nm"}, "sites": [ ... ]}
Molecule paths are resolved relative to the assembly file.
"""

import json
from pathlib import Path
from typing import Any, Optional, Union

import numpy as np
from pydantic import ValidationError

from ..errors import InputValidationError
from ..models import Assembly, Site
from ..molecule import load_model, load_model_file, to_atomic
from ..molecule.units import LENGTH_UNITS
from ..utils import get_logger


def load_assembly(
    document: Union[str, list, dict],
    base_dir: Optional[Path] = None,
    cutoff: float = 0.5,
    max_range: Optional[float] = None,
) -> Assembly:
    """
    Build a validated Assembly from an assembly document.

    Args:
        document: JSON text or decoded document
        base_dir: directory used to resolve molecule file references
        cutoff: minimum allowed separation (bohr)
        max_range: optional interaction range (bohr)
    """
    logger = get_logger()

    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as e:
            raise InputValidationError(f"could not parse assembly document: {e}") from e

    length_unit = 'bohr'
    if isinstance(document, dict):
        length_unit = (document.get('units') or {}).get('length', 'bohr')
        entries = document.get('sites')
    else:
        entries = document
    if length_unit not in LENGTH_UNITS:
        raise InputValidationError(f"unknown length unit {length_unit!r}")
    if not isinstance(entries, list):
        raise InputValidationError("assembly document must be an array of sites")

    base_dir = Path(base_dir) if base_dir is not None else Path('.')
    sites = []
    for index, entry in enumerate(entries):
        if not isinstance(entry, dict) or 'position' not in entry or 'molecule' not in entry:
            raise InputValidationError(f"site {index} needs 'position' and 'molecule'")
        molecule: Any = entry['molecule']
        if isinstance(molecule, str):
            model = load_model_file(base_dir / molecule)
        else:
            model = load_model(molecule)
        try:
            position = to_atomic(np.array(entry['position'], dtype=float), length_unit)
            sites.append(Site(position=position, model=model))
        except (TypeError, ValueError) as e:
            raise InputValidationError(f"site {index}: invalid position: {e}") from e

    try:
        assembly = Assembly(sites=sites, cutoff=cutoff, max_range=max_range)
    except ValidationError as e:
        raise InputValidationError(e.errors()[0]['msg']) from e

    logger.debug(f"Loaded assembly with {len(sites)} site(s)")
    return assembly


def load_assembly_file(
    path: Union[str, Path],
    cutoff: float = 0.5,
    max_range: Optional[float] = None,
) -> Assembly:
    """Load an assembly document from a UTF-8 JSON file."""
    path = Path(path)
    if not path.is_file():
        raise InputValidationError(f"assembly file not found: {path}")
    return load_assembly(path.read_text(encoding='utf-8'), path.parent, cutoff, max_range)
