"""Enumeration of Latin squares and signed censuses.

Squares are filled row by row, cells left to right, symbols tried in ascending
order, with per-column used-symbol bitmasks. Row and column signs are carried
as inversion parities: placing symbol ``s`` adds one inversion per larger
symbol already present in the same row (resp. column).

Work is sharded by the first two rows. Each shard searches independently and
shard results are reduced in shard order, so counts never depend on the worker
count.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass, field
from itertools import permutations, product

from joblib import Parallel, delayed

from ..config import LATIN_HARD_LIMIT
from ..errors import ResourceLimitError, ValidationError
from ..logging import Stopwatch
from .squares import LatinSquare, sign_data

logger = logging.getLogger(__name__)

PREFIX_ROWS = 2
NAIVE_ORACLE_LIMIT = 4

Leaf = Callable[[list[list[int]], int, int], None]


@dataclass(frozen=True, slots=True)
class Prefix:
    """Search state after a number of completed rows."""

    rows: tuple[tuple[int, ...], ...]
    col_masks: tuple[int, ...]
    row_parity: int
    col_parity: int

    @classmethod
    def empty(cls, n: int) -> Prefix:
        return cls((), (0,) * n, 0, 0)

    @classmethod
    def identity_first_row(cls, n: int) -> Prefix:
        return cls((tuple(range(n)),), tuple(1 << s for s in range(n)), 0, 0)


@dataclass(frozen=True, slots=True)
class SignedCensus:
    n: int
    total: int
    even: int
    odd: int
    col_even: int
    col_odd: int
    row_even: int
    row_odd: int
    shards: int = field(default=1, compare=False)

    def __post_init__(self) -> None:
        if not (
            self.even + self.odd == self.total
            and self.col_even + self.col_odd == self.total
            and self.row_even + self.row_odd == self.total
        ):
            raise ValidationError(f"Census counts for n={self.n} are not consistent.")

    @classmethod
    def from_parity_counts(
        cls, n: int, counts: tuple[int, int, int, int], *, shards: int = 1
    ) -> SignedCensus:
        """Build from counts indexed by ``2 * row_parity + col_parity``."""

        rows_even_cols_even, rows_even_cols_odd, rows_odd_cols_even, rows_odd_cols_odd = counts
        return cls(
            n=n,
            total=sum(counts),
            even=rows_even_cols_even + rows_odd_cols_odd,
            odd=rows_even_cols_odd + rows_odd_cols_even,
            col_even=rows_even_cols_even + rows_odd_cols_even,
            col_odd=rows_even_cols_odd + rows_odd_cols_odd,
            row_even=rows_even_cols_even + rows_even_cols_odd,
            row_odd=rows_odd_cols_even + rows_odd_cols_odd,
            shards=shards,
        )

    @property
    def at_difference(self) -> int:
        return self.even - self.odd

    @property
    def col_difference(self) -> int:
        return self.col_even - self.col_odd

    @property
    def row_difference(self) -> int:
        return self.row_even - self.row_odd


def check_order(n: int, *, limit: int, allow_large: bool = False) -> None:
    """Refuse orders outside the enumeration limits."""

    if n < 1:
        raise ValidationError("Latin square order must be at least 1.")
    if n > LATIN_HARD_LIMIT:
        raise ResourceLimitError(
            f"Order {n} is beyond the enumeration hard limit {LATIN_HARD_LIMIT}."
        )
    if n > limit and not allow_large:
        raise ResourceLimitError(
            f"Order {n} exceeds the configured limit {limit}; pass --allow-large to run it."
        )


def _search(n: int, start: Prefix, stop_row: int, emit: Leaf) -> None:
    full = (1 << n) - 1
    grid = [list(row) for row in start.rows] + [[0] * n for _ in range(n - len(start.rows))]
    col_masks = list(start.col_masks)

    def fill(r: int, c: int, row_mask: int, row_par: int, col_par: int) -> None:
        if c == n:
            if r + 1 == stop_row:
                emit(grid, row_par, col_par)
            else:
                fill(r + 1, 0, 0, row_par, col_par)
            return
        col_mask = col_masks[c]
        avail = full & ~row_mask & ~col_mask
        while avail:
            bit = avail & -avail
            avail ^= bit
            s = bit.bit_length() - 1
            grid[r][c] = s
            col_masks[c] = col_mask | bit
            fill(
                r,
                c + 1,
                row_mask | bit,
                row_par ^ ((row_mask >> (s + 1)).bit_count() & 1),
                col_par ^ ((col_mask >> (s + 1)).bit_count() & 1),
            )
        col_masks[c] = col_mask

    first_row = len(start.rows)
    if first_row >= stop_row:
        emit(grid, start.row_parity, start.col_parity)
        return
    fill(first_row, 0, 0, start.row_parity, start.col_parity)


def prefixes(n: int, start: Prefix, depth: int) -> list[Prefix]:
    """Every search state with ``depth`` completed rows reachable from ``start``."""

    found: list[Prefix] = []
    stop = min(max(depth, len(start.rows)), n)

    def emit(grid: list[list[int]], row_par: int, col_par: int) -> None:
        rows = tuple(tuple(row) for row in grid[:stop])
        masks = [0] * n
        for row in rows:
            for c, s in enumerate(row):
                masks[c] |= 1 << s
        found.append(Prefix(rows, tuple(masks), row_par, col_par))

    _search(n, start, stop, emit)
    return found


def _shard_counts(n: int, start: Prefix) -> tuple[int, int, int, int]:
    counts = [0, 0, 0, 0]

    def emit(_grid: list[list[int]], row_par: int, col_par: int) -> None:
        counts[2 * row_par + col_par] += 1

    _search(n, start, n, emit)
    return counts[0], counts[1], counts[2], counts[3]


def _shard_squares(n: int, start: Prefix) -> list[tuple[tuple[int, ...], ...]]:
    squares: list[tuple[tuple[int, ...], ...]] = []

    def emit(grid: list[list[int]], _row_par: int, _col_par: int) -> None:
        squares.append(tuple(tuple(row) for row in grid))

    _search(n, start, n, emit)
    return squares


def _parity_counts(
    n: int, start: Prefix, threads: int
) -> tuple[tuple[int, int, int, int], int]:
    shards = prefixes(n, start, PREFIX_ROWS)
    if threads <= 1:
        results = [_shard_counts(n, shard) for shard in shards]
    else:
        results = Parallel(n_jobs=threads)(delayed(_shard_counts)(n, shard) for shard in shards)
    totals = [0, 0, 0, 0]
    for shard_result in results:
        for bucket, value in enumerate(shard_result):
            totals[bucket] += value
    return (totals[0], totals[1], totals[2], totals[3]), len(shards)


def enumerate_squares(
    n: int,
    visit: Callable[[LatinSquare], None] | None = None,
    *,
    limit: int = LATIN_HARD_LIMIT,
    allow_large: bool = False,
    threads: int = 1,
    ordered: bool = True,
) -> int:
    """Visit every Latin square of order n once; return the count.

    With several threads the shards are searched in parallel and the visitor is
    still called from this thread. ``ordered`` keeps canonical order; without it
    each shard is handed over as soon as it finishes.
    """

    check_order(n, limit=limit, allow_large=allow_large)
    if visit is None:
        counts, _ = _parity_counts(n, Prefix.empty(n), threads)
        return SignedCensus.from_parity_counts(n, counts).total

    count = 0
    if threads <= 1:

        def emit(grid: list[list[int]], _row_par: int, _col_par: int) -> None:
            nonlocal count
            count += 1
            visit(LatinSquare.from_entries(grid))

        _search(n, Prefix.empty(n), n, emit)
        return count

    shards = prefixes(n, Prefix.empty(n), PREFIX_ROWS)
    return_as = "generator" if ordered else "generator_unordered"
    batches = Parallel(n_jobs=threads, return_as=return_as)(
        delayed(_shard_squares)(n, shard) for shard in shards
    )
    for batch in batches:
        for entries in batch:
            count += 1
            visit(LatinSquare.from_entries(entries))
    return count


def _lift_identity_first_row(n: int, counts: tuple[int, int, int, int]) -> tuple[int, ...]:
    # Relabeling symbols by τ multiplies every row and column sign by sign(τ),
    # so both parities flip exactly when τ is odd and n is odd.
    even_relabels = math.factorial(n) // 2 if n >= 2 else 1
    odd_relabels = math.factorial(n) - even_relabels
    flip = n % 2
    lifted = []
    for row_par in (0, 1):
        for col_par in (0, 1):
            same = counts[2 * row_par + col_par]
            flipped = counts[2 * (row_par ^ flip) + (col_par ^ flip)]
            lifted.append(even_relabels * same + odd_relabels * flipped)
    return tuple(lifted)


def census(
    n: int,
    *,
    limit: int = LATIN_HARD_LIMIT,
    allow_large: bool = False,
    threads: int = 1,
    symmetry: bool = False,
) -> SignedCensus:
    """Exact even/odd, column-even/odd and row-even/odd counts in one enumeration pass.

    ``symmetry`` enumerates only squares whose first row is the identity and
    lifts the counts through the n! symbol relabelings.
    """

    check_order(n, limit=limit, allow_large=allow_large)
    clock = Stopwatch()
    if symmetry:
        reduced, shard_count = _parity_counts(n, Prefix.identity_first_row(n), threads)
        a, b, c, d = _lift_identity_first_row(n, reduced)
        counts = (a, b, c, d)
    else:
        counts, shard_count = _parity_counts(n, Prefix.empty(n), threads)
    result = SignedCensus.from_parity_counts(n, counts, shards=shard_count)
    logger.info(
        "Census n=%d: %d squares (symmetry=%s, threads=%d) in %.2fs",
        n,
        result.total,
        symmetry,
        threads,
        clock.seconds,
    )
    return result


def at_difference(
    n: int, *, limit: int = LATIN_HARD_LIMIT, allow_large: bool = False, threads: int = 1
) -> int:
    """Number of even minus number of odd Latin squares of order n."""

    return census(n, limit=limit, allow_large=allow_large, threads=threads).at_difference


def col_difference(
    n: int, *, limit: int = LATIN_HARD_LIMIT, allow_large: bool = False, threads: int = 1
) -> int:
    """Number of column-even minus column-odd Latin squares of order n."""

    return census(n, limit=limit, allow_large=allow_large, threads=threads).col_difference


def huang_rota_verify(
    n: int, *, limit: int = LATIN_HARD_LIMIT, allow_large: bool = False, threads: int = 1
) -> bool:
    """Check that the two differences agree up to sign."""

    result = census(n, limit=limit, allow_large=allow_large, threads=threads)
    return abs(result.at_difference) == abs(result.col_difference)


def naive_census(n: int) -> SignedCensus:
    """Census by filtering every n-tuple of permutations; an oracle for n ≤ 4."""

    if n > NAIVE_ORACLE_LIMIT:
        raise ResourceLimitError(f"The naive oracle is limited to n ≤ {NAIVE_ORACLE_LIMIT}.")
    counts = [0, 0, 0, 0]
    rows = list(permutations(range(n)))
    for candidate in product(rows, repeat=n):
        if any(len({row[j] for row in candidate}) != n for j in range(n)):
            continue
        signs = sign_data(LatinSquare.from_entries(candidate))
        counts[2 * (signs.row_sign < 0) + (signs.col_sign < 0)] += 1
    return SignedCensus.from_parity_counts(n, (counts[0], counts[1], counts[2], counts[3]))


__all__ = [
    "Prefix",
    "SignedCensus",
    "at_difference",
    "census",
    "check_order",
    "col_difference",
    "enumerate_squares",
    "huang_rota_verify",
    "naive_census",
    "prefixes",
]
