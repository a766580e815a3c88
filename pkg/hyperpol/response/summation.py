"""
Compensated summation over numpy arrays.

Every addition is split into its rounded sum and the exact rounding error
(TwoSum); the errors are carried separately and folded in at the end.
Complex addition is component-wise in IEEE arithmetic, so the same
transformation holds for complex arrays.
"""

from typing import Tuple, Union

import numpy as np

ArrayLike = Union[float, complex, np.ndarray]


def two_sum(a: np.ndarray, b: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Error-free transformation: a + b == s + t exactly, with s = fl(a + b)."""
    s = a + b
    b_virtual = s - a
    a_virtual = s - b_virtual
    t = (a - a_virtual) + (b - b_virtual)
    return s, t


class CompensatedSum:
    """Running compensated sum of equally shaped arrays."""

    def __init__(self, shape: Tuple[int, ...] = (), dtype=complex):
        self._sum = np.zeros(shape, dtype=dtype)
        self._carry = np.zeros(shape, dtype=dtype)
        self.count = 0

    def add(self, value: ArrayLike):
        value = np.asarray(value, dtype=self._sum.dtype)
        self._sum, error = two_sum(self._sum, value)
        self._carry = self._carry + error
        self.count += 1

    def total(self) -> np.ndarray:
        return self._sum + self._carry
