"""Latin squares and their row, column and total signs.

Symbols are 0-based. Row ``i`` read left to right is the permutation
``j ↦ L[i][j]``; column ``j`` read top to bottom is ``i ↦ L[i][j]``.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

from ..errors import ValidationError
from ..exact.permutation import Permutation, PermutationError, sign


class LatinSquareError(ValidationError):
    """Raised when an array is not a Latin square."""


@dataclass(frozen=True, slots=True)
class SignTriple:
    row_sign: int
    col_sign: int
    total_sign: int

    def __post_init__(self) -> None:
        if self.total_sign != self.row_sign * self.col_sign:
            raise ValidationError("total_sign must equal row_sign * col_sign.")


@dataclass(frozen=True, slots=True)
class LatinSquare:
    n: int
    rows: tuple[Permutation, ...]

    def __post_init__(self) -> None:
        if len(self.rows) != self.n or any(row.n != self.n for row in self.rows):
            raise LatinSquareError(f"Expected {self.n} rows of length {self.n}.")
        for j in range(self.n):
            if len({row.images[j] for row in self.rows}) != self.n:
                raise LatinSquareError(f"Column {j + 1} repeats a symbol.")

    @classmethod
    def from_entries(cls, entries: Sequence[Sequence[int]]) -> LatinSquare:
        try:
            rows = tuple(Permutation(tuple(row)) for row in entries)
        except PermutationError as exc:
            raise LatinSquareError(f"A row is not a permutation: {exc}") from exc
        return cls(len(rows), rows)

    @classmethod
    def cyclic(cls, n: int) -> LatinSquare:
        return cls.from_entries([[(i + j) % n for j in range(n)] for i in range(n)])

    def entries(self) -> tuple[tuple[int, ...], ...]:
        return tuple(row.images for row in self.rows)

    def columns(self) -> tuple[Permutation, ...]:
        return tuple(
            Permutation(tuple(row.images[j] for row in self.rows)) for j in range(self.n)
        )

    def transpose(self) -> LatinSquare:
        return LatinSquare(self.n, self.columns())

    def relabel(self, symbols: Permutation) -> LatinSquare:
        """Apply ``symbols`` to every entry."""

        return LatinSquare(self.n, tuple(symbols.compose(row) for row in self.rows))

    def conjugate(self, roles: Sequence[int]) -> LatinSquare:
        """Permute the roles of (row, column, symbol).

        Each cell gives a triple ``(i, j, L[i][j])``; ``roles`` lists which
        coordinate of that triple becomes the new row, column and symbol.
        ``(1, 0, 2)`` is the transpose.
        """

        if sorted(roles) != [0, 1, 2]:
            raise ValidationError(f"roles must be a permutation of (0, 1, 2), got {tuple(roles)}.")
        grid = [[0] * self.n for _ in range(self.n)]
        for i, row in enumerate(self.rows):
            for j, s in enumerate(row.images):
                triple = (i, j, s)
                grid[triple[roles[0]]][triple[roles[1]]] = triple[roles[2]]
        return LatinSquare.from_entries(grid)

    def symbol_permutations(self) -> tuple[Permutation, ...]:
        """For each symbol k, the permutation ``i ↦ column of k in row i``."""

        inverses = [row.inverse() for row in self.rows]
        return tuple(
            Permutation(tuple(inverse.images[k] for inverse in inverses)) for k in range(self.n)
        )

    def __str__(self) -> str:
        return "\n".join(" ".join(str(value + 1) for value in row.images) for row in self.rows)


def sign_data(square: LatinSquare) -> SignTriple:
    """Row sign, column sign and their product for one square."""

    row_sign = 1
    for row in square.rows:
        row_sign *= sign(row)
    col_sign = 1
    for column in square.columns():
        col_sign *= sign(column)
    return SignTriple(row_sign=row_sign, col_sign=col_sign, total_sign=row_sign * col_sign)


__all__ = ["LatinSquare", "LatinSquareError", "SignTriple", "sign_data"]
