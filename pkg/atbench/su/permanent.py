"""Matrix permanents by Ryser's inclusion–exclusion formula.

Subsets of columns are visited in Gray-code order so each step adds or
removes one column from the running row sums.
"""

from __future__ import annotations

import numpy as np
from numpy.typing import NDArray

from ..config import PERMANENT_HARD_LIMIT
from ..errors import ResourceLimitError, ValidationError


def _check_shape(shape: tuple[int, ...]) -> int:
    if len(shape) < 2 or shape[-1] != shape[-2]:
        raise ValidationError(f"Permanent needs square matrices, got shape {shape}.")
    n = shape[-1]
    if n > PERMANENT_HARD_LIMIT:
        raise ResourceLimitError(
            f"Permanent is limited to n ≤ {PERMANENT_HARD_LIMIT} (got {n})."
        )
    return n


def permanent_batch(matrices: NDArray[np.complexfloating]) -> NDArray[np.complex128]:
    """Permanents of a stack of square matrices, shape (m, n, n) -> (m,)."""

    stack = np.asarray(matrices, dtype=np.complex128)
    n = _check_shape(stack.shape)
    if stack.ndim != 3:
        raise ValidationError("permanent_batch expects a stack of shape (m, n, n).")
    if n == 0:
        return np.ones(stack.shape[0], dtype=np.complex128)
    row_sums = np.zeros(stack.shape[:2], dtype=np.complex128)
    total = np.zeros(stack.shape[0], dtype=np.complex128)
    subset = 0
    for step in range(1, 1 << n):
        column = (step & -step).bit_length() - 1
        subset ^= 1 << column
        if subset >> column & 1:
            row_sums += stack[:, :, column]
        else:
            row_sums -= stack[:, :, column]
        term = np.prod(row_sums, axis=1)
        if subset.bit_count() & 1:
            total -= term
        else:
            total += term
    return total if n % 2 == 0 else -total


def permanent(matrix: NDArray[np.complexfloating]) -> complex:
    array = np.asarray(matrix, dtype=np.complex128)
    if array.ndim != 2:
        raise ValidationError(f"Permanent needs a square matrix, got shape {array.shape}.")
    return complex(permanent_batch(array[None, :, :])[0])


__all__ = ["permanent", "permanent_batch"]
