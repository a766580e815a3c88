"""
Exception hierarchy for the toolkit.
The CLI maps each family onto a process exit code.
"""

from typing import Optional


class HyperpolError(Exception):
    """Base class for all toolkit errors."""


class InputValidationError(HyperpolError, ValueError):
    """Input data violates a model invariant or a file schema."""


class SeparationError(InputValidationError):
    """Two sites of an assembly are closer than the separation cutoff."""


class FrequencyMismatchError(InputValidationError):
    """A tensor was evaluated at a different frequency than the photon mode."""


class ResonanceError(HyperpolError, ArithmeticError):
    """An undamped energy denominator vanishes within tolerance."""

    def __init__(self, level: int, multiple: int, value: float, omega: Optional[float] = None):
        self.level = level
        self.multiple = multiple
        self.value = value
        self.omega = omega
        where = f" at omega={omega:.12g}" if omega is not None else ""
        super().__init__(
            f"resonance singularity: denominator for level {level} with "
            f"multiple {multiple:+d} is {value:.3e} hartree{where}"
        )
