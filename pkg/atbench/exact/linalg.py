"""Fraction-free exact linear algebra over the integers and rationals."""

from __future__ import annotations

import math
from collections.abc import Sequence
from fractions import Fraction

from ..errors import ResourceLimitError, ValidationError


def clear_denominators(row: Sequence[int | Fraction]) -> list[int]:
    """Scale a rational row by the lcm of its denominators; the rank is unchanged."""

    denominators = [value.denominator for value in row if isinstance(value, Fraction)]
    scale = math.lcm(*denominators) if denominators else 1
    return [int(value * scale) for value in row]


def bareiss_rank(rows: Sequence[Sequence[int | Fraction]], *, dense_cap: int | None = None) -> int:
    """Exact rank by Bareiss elimination after clearing denominators.

    Pivoting takes the first nonzero entry in canonical row order, so the
    elimination is deterministic. Every intermediate entry is a minor of the
    input, which keeps the division by the previous pivot exact.
    """

    if not rows:
        return 0
    ncols = len(rows[0])
    if any(len(row) != ncols for row in rows):
        raise ValidationError("Matrix rows have different lengths.")
    if dense_cap is not None and max(len(rows), ncols) > dense_cap:
        raise ResourceLimitError(
            f"Dense elimination of a {len(rows)}×{ncols} block exceeds the cap {dense_cap}."
        )
    m = [clear_denominators(row) for row in rows]
    nrows = len(m)
    rank = 0
    previous = 1
    for col in range(ncols):
        pivot_row = next((r for r in range(rank, nrows) if m[r][col] != 0), None)
        if pivot_row is None:
            continue
        if pivot_row != rank:
            m[rank], m[pivot_row] = m[pivot_row], m[rank]
        pivot = m[rank][col]
        pivot_line = m[rank]
        for r in range(rank + 1, nrows):
            line = m[r]
            factor = line[col]
            for c in range(col + 1, ncols):
                line[c] = (line[c] * pivot - factor * pivot_line[c]) // previous
            line[col] = 0
        previous = pivot
        rank += 1
        if rank == nrows:
            break
    return rank


def exact_det(rows: Sequence[Sequence[int | Fraction]]) -> Fraction:
    """Determinant of a square rational matrix by Bareiss elimination."""

    n = len(rows)
    if any(len(row) != n for row in rows):
        raise ValidationError("Determinant needs a square matrix.")
    if n == 0:
        return Fraction(1)
    denominators = [
        value.denominator for row in rows for value in row if isinstance(value, Fraction)
    ]
    scale = math.lcm(*denominators) if denominators else 1
    m = [[int(value * scale) for value in row] for row in rows]
    sign = 1
    previous = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) // previous
        previous = m[k][k]
    return Fraction(sign * m[n - 1][n - 1], scale**n)


__all__ = ["bareiss_rank", "clear_denominators", "exact_det"]
