"""
Static intermolecular correction from surrounding ground-state dipoles.

The correction of molecule X has a scalar part, the ground-dipole pair
energy shared half-and-half between the two sites of each pair, and an
operator part, the ground dipoles of the neighbours acting on the
fluctuation moments of X. Both follow the sign of the printed expression
unless the classical convention is requested, which flips both.
"""

from typing import Iterator, List, Tuple

import numpy as np
from pydantic import ValidationError

from ..errors import InputValidationError, SeparationError
from ..models import (
    Assembly,
    Constants,
    EnvironmentShift,
    GroundStateShift,
    MolecularModel,
    Representation,
    SignConvention,
)
from ..molecule import ATOMIC_CONSTANTS, to_fluctuation
from ..response import CompensatedSum
from ..utils import get_logger


def _sign(convention: SignConvention) -> float:
    return -1.0 if SignConvention(convention) == SignConvention.CLASSICAL else 1.0


def _orientation_vector(
    mu1: np.ndarray,
    rvec: np.ndarray,
    cutoff: float,
    constants: Constants,
) -> np.ndarray:
    """g such that g . mu2 = [mu1.mu2 - 3 (mu1.R^)(R^.mu2)] / (4 pi eps0 R^3)."""
    distance = float(np.linalg.norm(rvec))
    if distance < cutoff:
        raise SeparationError(f"separation {distance:.6g} bohr is below cutoff {cutoff}")
    rhat = rvec / distance
    return (mu1 - 3.0 * np.dot(mu1, rhat) * rhat) / (4.0 * np.pi * constants.eps0 * distance ** 3)


def pair_orientation_factor(
    mu1,
    mu2,
    rvec,
    cutoff: float = 0.5,
    constants: Constants = ATOMIC_CONSTANTS,
) -> float:
    """[mu1.mu2 - 3 (mu1.R^)(R^.mu2)] / (4 pi eps0 |R|^3)."""
    g = _orientation_vector(
        np.asarray(mu1, dtype=float), np.asarray(rvec, dtype=float), cutoff, constants
    )
    return float(np.dot(g, np.asarray(mu2, dtype=float)))


def _require_standard(assembly: Assembly):
    for index, site in enumerate(assembly.sites):
        if site.model.representation != Representation.STANDARD:
            raise InputValidationError(
                f"site {index} must be in the standard representation to expose its ground dipole"
            )


def _neighbours(assembly: Assembly, index: int) -> Iterator[Tuple[np.ndarray, np.ndarray]]:
    """(ground dipole of X', R_X - R_X') for every X' != X within range."""
    here = assembly.sites[index].position
    for other, site in enumerate(assembly.sites):
        if other == index:
            continue
        rvec = here - site.position
        if assembly.max_range is not None and np.linalg.norm(rvec) > assembly.max_range:
            continue
        yield site.model.ground_dipole, rvec


def ground_state_shift(
    assembly: Assembly,
    sign_convention: SignConvention = SignConvention.AS_PRINTED,
    constants: Constants = ATOMIC_CONSTANTS,
) -> GroundStateShift:
    """
    Per-site scalar term -1/2 sum_{X' != X} f(mu_gg(X'), mu_gg(X), R_XX').

    Summing the per-site values counts every pair exactly once.
    """
    _require_standard(assembly)
    sign = _sign(sign_convention)

    per_molecule: List[float] = []
    total = CompensatedSum(dtype=float)
    for index, site in enumerate(assembly.sites):
        site_sum = CompensatedSum(dtype=float)
        for mu_other, rvec in _neighbours(assembly, index):
            g = _orientation_vector(mu_other, rvec, assembly.cutoff, constants)
            site_sum.add(np.dot(g, site.model.ground_dipole))
        value = sign * -0.5 * float(site_sum.total())
        per_molecule.append(value)
        total.add(value)

    return GroundStateShift(per_molecule_scalar=per_molecule, total_scalar=float(total.total()))


def perturbation_matrix(
    assembly: Assembly,
    index: int,
    sign_convention: SignConvention = SignConvention.AS_PRINTED,
    constants: Constants = ATOMIC_CONSTANTS,
) -> np.ndarray:
    """
    Level-basis matrix of -sum_{X' != X} f(mu_gg(X'), mu~(X), R_XX') for site X.

    The fluctuation moments vanish on the ground diagonal, so element (0, 0)
    is zero; the matrix is real symmetric because mu~ is.
    """
    _require_standard(assembly)
    if not 0 <= index < len(assembly.sites):
        raise InputValidationError(f"site index {index} outside 0..{len(assembly.sites) - 1}")

    mu_tilde = to_fluctuation(assembly.sites[index].model).dipoles
    n_levels = mu_tilde.shape[0]

    matrix = CompensatedSum((n_levels, n_levels), dtype=float)
    for mu_other, rvec in _neighbours(assembly, index):
        g = _orientation_vector(mu_other, rvec, assembly.cutoff, constants)
        matrix.add(mu_tilde @ g)

    return _sign(sign_convention) * -matrix.total()


def environment_shift(
    assembly: Assembly,
    sign_convention: SignConvention = SignConvention.AS_PRINTED,
    constants: Constants = ATOMIC_CONSTANTS,
) -> EnvironmentShift:
    """Scalar shifts plus the perturbation matrix of every site."""
    scalar = ground_state_shift(assembly, sign_convention, constants)
    matrices = [
        perturbation_matrix(assembly, index, sign_convention, constants)
        for index in range(len(assembly.sites))
    ]
    get_logger().debug(
        f"environment shift over {len(assembly.sites)} site(s): total {scalar.total_scalar:.6e} hartree"
    )
    return EnvironmentShift(
        per_molecule_scalar=scalar.per_molecule_scalar,
        total_scalar=scalar.total_scalar,
        per_molecule_matrix=matrices,
        sign_convention=SignConvention(sign_convention),
    )


def apply_shifts(model: MolecularModel, matrix: np.ndarray) -> MolecularModel:
    """
    First-order energy correction: E_r += matrix[r, r].

    Off-diagonal couplings are ignored. The ground level stays at 0 because
    matrix[0, 0] vanishes.
    """
    matrix = np.asarray(matrix, dtype=float)
    if matrix.shape != (model.n_levels, model.n_levels):
        raise InputValidationError(
            f"shift matrix shape {matrix.shape} does not match {model.n_levels} level(s)"
        )
    energies = model.energies + np.diag(matrix)
    energies[0] = 0.0

    try:
        return MolecularModel(
            label=f"{model.label} (shifted)",
            energies=energies,
            widths=model.widths,
            dipoles=model.dipoles,
            representation=model.representation,
        )
    except ValidationError as e:
        raise InputValidationError(f"shifted levels of '{model.label}': {e.errors()[0]['msg']}") from e
