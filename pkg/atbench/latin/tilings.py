"""Coefficient of Π g[i][j] in detⁿ by permutation tilings.

Expanding detⁿ as a sum over n-tuples (σ₁, …, σ_n) of permutations, the
all-entries monomial arises exactly from tuples whose graphs tile the n×n grid.
Writing symbol k into the cells of σ_k's graph turns such a tuple into a Latin
square, so the coefficient is a signed Latin-square count.
"""

from __future__ import annotations

import logging
from itertools import permutations

from joblib import Parallel, delayed

from ..config import LATIN_HARD_LIMIT
from ..exact.permutation import sign_of_images
from ..logging import Stopwatch
from .enumeration import check_order

logger = logging.getLogger(__name__)


def _shard_sum(n: int, first: tuple[int, ...]) -> int:
    """Signed count of tilings whose first permutation is ``first``."""

    free = [((1 << n) - 1) & ~(1 << first[i]) for i in range(n)]
    start_sign = sign_of_images(first)
    if n == 1:
        return start_sign
    total = 0

    def place(k: int, i: int, used: int, parity: int) -> None:
        nonlocal total
        if i == n:
            if k + 1 == n:
                total += -start_sign if parity else start_sign
            else:
                place(k + 1, 0, 0, parity)
            return
        avail = free[i] & ~used
        while avail:
            bit = avail & -avail
            avail ^= bit
            j = bit.bit_length() - 1
            free[i] ^= bit
            place(k, i + 1, used | bit, parity ^ ((used >> (j + 1)).bit_count() & 1))
            free[i] |= bit

    place(1, 0, 0, 0)
    return total


def det_power_coefficient(
    n: int,
    *,
    limit: int = LATIN_HARD_LIMIT,
    allow_large: bool = False,
    threads: int = 1,
) -> int:
    """Σ over tiling n-tuples of permutations of Π_k sign(σ_k).

    Equals ⟨Π g[i][j], detⁿ⟩ because the all-entries multi-index has factorial
    weight 1. Sharded by σ₁ and summed in lexicographic shard order.
    """

    check_order(n, limit=limit, allow_large=allow_large)
    clock = Stopwatch()
    shards = list(permutations(range(n)))
    if threads <= 1:
        results = [_shard_sum(n, first) for first in shards]
    else:
        results = Parallel(n_jobs=threads)(delayed(_shard_sum)(n, first) for first in shards)
    total = sum(results)
    logger.info(
        "det^%d all-entries coefficient = %d (%d shards) in %.2fs",
        n,
        total,
        len(shards),
        clock.seconds,
    )
    return total


__all__ = ["det_power_coefficient"]
