"""
Numeric validation utilities.
"""

from typing import Tuple

import numpy as np

# Unit-norm and transversality tolerance for photon polarizations
POLARIZATION_TOLERANCE = 1e-12


class VectorValidator:
    """Validates 3-vectors used for wavevectors and polarizations."""

    @staticmethod
    def is_unit(vector: np.ndarray, tolerance: float = POLARIZATION_TOLERANCE) -> bool:
        """Check the (Hermitian) norm of a possibly complex vector is 1."""
        norm = float(np.sqrt(np.vdot(vector, vector).real))
        return abs(norm - 1.0) <= tolerance

    @staticmethod
    def is_transverse(polarization: np.ndarray, k: np.ndarray, tolerance: float = POLARIZATION_TOLERANCE) -> bool:
        """Check e . k vanishes relative to |k|."""
        return abs(np.dot(polarization, k)) <= tolerance * float(np.linalg.norm(k))

    @staticmethod
    def validate_mode(k: np.ndarray, polarization: np.ndarray) -> Tuple[bool, str]:
        """
        Validate a photon mode.
        Returns (is_valid, error_message).
        """
        errors = []

        has_direction = bool(np.linalg.norm(k) > 0.0)
        if not has_direction:
            errors.append("wavevector must be nonzero")

        if not VectorValidator.is_unit(polarization):
            errors.append("polarization must have unit norm")

        if has_direction and not VectorValidator.is_transverse(polarization, k):
            errors.append("polarization must be transverse to the wavevector")

        return len(errors) == 0, "; ".join(errors)


class RotationValidator:
    """Validates proper rotation matrices."""

    @staticmethod
    def validate_rotation(rotation: np.ndarray, tolerance: float = 1e-12) -> Tuple[bool, str]:
        """
        Check R is 3x3, orthogonal and has det +1 within tolerance.
        Returns (is_valid, error_message).
        """
        if rotation.shape != (3, 3):
            return False, f"rotation must be 3x3, got shape {rotation.shape}"

        deviation = float(np.max(np.abs(rotation.T @ rotation - np.eye(3))))
        if deviation > tolerance:
            return False, f"non-orthogonal rotation (|R^T R - 1| = {deviation:.3e})"

        determinant = float(np.linalg.det(rotation))
        if abs(determinant - 1.0) > tolerance:
            return False, f"improper rotation (det R = {determinant:.12g})"

        return True, ""
