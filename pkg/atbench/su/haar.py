"""Haar-distributed samples from SU(n).

A complex Ginibre matrix is orthonormalized by QR, the columns are rephased
so that R has a positive diagonal (which makes Q Haar on U(n)), and Q is
divided by the principal n-th root of its determinant.
"""

from __future__ import annotations

import numpy as np
from numpy.typing import NDArray

from ..errors import ValidationError

ComplexArray = NDArray[np.complex128]

_SINGULAR_DIAGONAL = 1e-12


def _ginibre(n: int, size: int, rng: np.random.Generator) -> ComplexArray:
    real = rng.standard_normal((size, n, n))
    imag = rng.standard_normal((size, n, n))
    return (real + 1j * imag) / np.sqrt(2.0)


def haar_su_batch(n: int, size: int, rng: np.random.Generator) -> ComplexArray:
    """``size`` independent Haar samples of SU(n), shape (size, n, n)."""

    if n < 1:
        raise ValidationError("n must be at least 1.")
    if size < 0:
        raise ValidationError("size must be non-negative.")
    if n == 1:
        return np.ones((size, 1, 1), dtype=np.complex128)
    z = _ginibre(n, size, rng)
    q, r = np.linalg.qr(z)
    diagonal = np.diagonal(r, axis1=-2, axis2=-1).copy()
    # Re-draw the (probability zero) numerically singular draws.
    singular = np.min(np.abs(diagonal), axis=-1) < _SINGULAR_DIAGONAL
    while np.any(singular):
        count = int(singular.sum())
        q_new, r_new = np.linalg.qr(_ginibre(n, count, rng))
        q[singular] = q_new
        diagonal[singular] = np.diagonal(r_new, axis1=-2, axis2=-1)
        singular = np.min(np.abs(diagonal), axis=-1) < _SINGULAR_DIAGONAL
    q = q * (diagonal / np.abs(diagonal))[:, None, :]
    root = np.power(np.linalg.det(q), 1.0 / n)
    return q / root[:, None, None]


def haar_su(n: int, rng: np.random.Generator) -> ComplexArray:
    """One Haar sample of SU(n)."""

    return haar_su_batch(n, 1, rng)[0]


__all__ = ["ComplexArray", "haar_su", "haar_su_batch"]
