"""The Hadamard–Howe map h_{d,n}: S^d(SⁿV) → Sⁿ(S^dV) on monomial bases.

A basis element is laid out as a d×n array of tensor slots, one row per inner
monomial. Each row is expanded as the average over its distinct orderings, the
array is read by columns, and the n column monomials are multiplied. With
averaging at both symmetrization steps the coefficient of an output monomial
is the probability of obtaining it when every row is shuffled uniformly.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations

from joblib import Parallel, delayed

from ..errors import ResourceLimitError, ValidationError
from ..exact.linalg import bareiss_rank
from ..logging import Stopwatch
from .basis import (
    InnerMonomial,
    SymBasisElement,
    basis,
    basis_size,
    weight_zero_basis,
    wreath_dimension,
)

logger = logging.getLogger(__name__)

Column = tuple[int, ...]
State = tuple[Column, ...]


@lru_cache(maxsize=4096)
def _orderings(inner: InnerMonomial) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted(set(permutations(inner))))


def _check_element(dim_v: int, d: int, n: int, b: SymBasisElement) -> None:
    if b.d != d or b.n != n:
        raise ValidationError(f"{b} is not a monomial of S^{d}(S^{n}V).")
    if any(index < 0 or index >= dim_v for inner in b.outer for index in inner):
        raise ValidationError(f"{b} uses a variable outside dim V = {dim_v}.")


def hdn_apply(dim_v: int, d: int, n: int, b: SymBasisElement) -> dict[SymBasisElement, Fraction]:
    """Image of one basis monomial, as a sparse vector over basis(dim_v, n, d).

    The distribution over column contents is built row by row. Columns are
    exchangeable, so each partial state is kept with its columns sorted.
    """

    _check_element(dim_v, d, n, b)
    states: dict[State, Fraction] = {tuple(() for _ in range(n)): Fraction(1)}
    for inner in b.outer:
        orders = _orderings(inner)
        share = Fraction(1, len(orders))
        advanced: dict[State, Fraction] = defaultdict(Fraction)
        for state, probability in states.items():
            weight = probability * share
            for order in orders:
                grown = sorted(
                    tuple(sorted((*column, value)))
                    for column, value in zip(state, order, strict=True)
                )
                advanced[tuple(grown)] += weight
        states = advanced
    image = {SymBasisElement(state): value for state, value in states.items()}
    return dict(sorted(image.items()))


@dataclass(frozen=True, slots=True)
class ExactLinearMap:
    """Sparse exact matrix whose rows and columns are labelled by monomials."""

    dim_v: int
    domain_basis: tuple[SymBasisElement, ...]
    codomain_basis: tuple[SymBasisElement, ...]
    entries: dict[tuple[int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        rows, cols = self.shape
        for (row, col), value in self.entries.items():
            if not (0 <= row < rows and 0 <= col < cols):
                raise ValidationError(f"Entry ({row}, {col}) lies outside a {rows}×{cols} map.")
            if value == 0:
                raise ValidationError("Sparse entries must be nonzero.")

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.codomain_basis), len(self.domain_basis)

    def column(self, col: int) -> dict[int, Fraction]:
        return {row: value for (row, c), value in self.entries.items() if c == col}

    def dense(self) -> list[list[Fraction]]:
        rows, cols = self.shape
        matrix = [[Fraction(0)] * cols for _ in range(rows)]
        for (row, col), value in self.entries.items():
            matrix[row][col] = value
        return matrix

    def restrict(
        self, domain: Iterable[SymBasisElement], codomain: Iterable[SymBasisElement]
    ) -> ExactLinearMap:
        """Submatrix on the given domain and codomain monomials."""

        domain_list = tuple(domain)
        codomain_list = tuple(codomain)
        col_of = {element: i for i, element in enumerate(self.domain_basis)}
        row_of = {element: i for i, element in enumerate(self.codomain_basis)}
        new_col = {col_of[element]: j for j, element in enumerate(domain_list)}
        new_row = {row_of[element]: i for i, element in enumerate(codomain_list)}
        entries = {
            (new_row[row], new_col[col]): value
            for (row, col), value in self.entries.items()
            if row in new_row and col in new_col
        }
        return ExactLinearMap(self.dim_v, domain_list, codomain_list, entries)

    def weight_blocks(self) -> list[tuple[tuple[int, ...], list[int], list[int]]]:
        """Group row and column indices by torus weight; the map preserves weight."""

        col_groups: dict[tuple[int, ...], list[int]] = defaultdict(list)
        row_groups: dict[tuple[int, ...], list[int]] = defaultdict(list)
        for j, element in enumerate(self.domain_basis):
            col_groups[element.weight(self.dim_v)].append(j)
        for i, element in enumerate(self.codomain_basis):
            row_groups[element.weight(self.dim_v)].append(i)
        weights = sorted(set(col_groups) | set(row_groups))
        return [(w, row_groups.get(w, []), col_groups.get(w, [])) for w in weights]

    def to_text(self) -> str:
        """Sparse triplet form: ``row col value codomain-label domain-label`` per line,
        1-based indices, ordered by column then row."""

        rows, cols = self.shape
        lines = [f"# exact-linear-map rows={rows} cols={cols} dim_v={self.dim_v}"]
        for (row, col), value in sorted(self.entries.items(), key=lambda item: item[0][::-1]):
            lines.append(
                f"{row + 1}\t{col + 1}\t{value}\t"
                f"{self.codomain_basis[row].label()}\t{self.domain_basis[col].label()}"
            )
        return "\n".join(lines) + "\n"


@dataclass(frozen=True, slots=True)
class RankReport:
    rank: int
    rows: int
    cols: int
    blocks: int

    @property
    def injective(self) -> bool:
        return self.rank == self.cols

    @property
    def surjective(self) -> bool:
        return self.rank == self.rows

    @property
    def isomorphism(self) -> bool:
        return self.injective and self.surjective

    @property
    def nullity(self) -> int:
        return self.cols - self.rank

    @property
    def maximal_rank(self) -> bool:
        return self.rank == min(self.rows, self.cols)

    def as_dict(self) -> dict[str, object]:
        return {
            "rank": self.rank,
            "rows": self.rows,
            "cols": self.cols,
            "blocks": self.blocks,
            "injective": self.injective,
            "surjective": self.surjective,
            "isomorphism": self.isomorphism,
            "nullity": self.nullity,
            "maximal_rank": self.maximal_rank,
        }


def _columns(
    dim_v: int, d: int, n: int, elements: Sequence[SymBasisElement]
) -> list[dict[SymBasisElement, Fraction]]:
    return [hdn_apply(dim_v, d, n, element) for element in elements]


def _assemble(
    dim_v: int,
    d: int,
    n: int,
    domain: Sequence[SymBasisElement],
    codomain: Sequence[SymBasisElement],
    threads: int,
) -> ExactLinearMap:
    clock = Stopwatch()
    if threads > 1 and len(domain) > threads:
        step = -(-len(domain) // threads)
        batches = [domain[i : i + step] for i in range(0, len(domain), step)]
        results = Parallel(n_jobs=threads)(
            delayed(_columns)(dim_v, d, n, batch) for batch in batches
        )
        images = [image for batch in results for image in batch]
    else:
        images = _columns(dim_v, d, n, domain)
    row_of = {element: i for i, element in enumerate(codomain)}
    entries: dict[tuple[int, int], Fraction] = {}
    for col, image in enumerate(images):
        for element, value in image.items():
            row = row_of.get(element)
            if row is None:
                raise ValidationError(f"Image monomial {element} is missing from the codomain.")
            entries[(row, col)] = value
    logger.info(
        "Assembled h_%d,%d on dim V=%d: %d×%d, %d nonzeros in %.2fs",
        d,
        n,
        dim_v,
        len(codomain),
        len(domain),
        len(entries),
        clock.seconds,
    )
    return ExactLinearMap(dim_v, tuple(domain), tuple(codomain), entries)


def hdn_matrix(
    dim_v: int, d: int, n: int, *, cap: int | None = None, threads: int = 1
) -> ExactLinearMap:
    """Full matrix of h_{d,n} from basis(dim_v, d, n) to basis(dim_v, n, d)."""

    domain = basis(dim_v, d, n, cap=cap)
    codomain = basis(dim_v, n, d, cap=cap)
    return _assemble(dim_v, d, n, domain, codomain, threads)


def weight_zero_matrix(
    d: int, n: int, *, cap: int | None = None, threads: int = 1
) -> ExactLinearMap:
    """h_{d,n} restricted to the weight-zero subspace, dim V = dn."""

    domain = weight_zero_basis(d, n, cap=cap)
    codomain = weight_zero_basis(n, d, cap=cap)
    return _assemble(d * n, d, n, domain, codomain, threads)


def rank_report(linear_map: ExactLinearMap, *, dense_cap: int | None = None) -> RankReport:
    """Exact rank, eliminating each torus-weight block on its own."""

    rows, cols = linear_map.shape
    entries = linear_map.entries
    rank = 0
    blocks = linear_map.weight_blocks()
    for _weight, row_ids, col_ids in blocks:
        if not row_ids or not col_ids:
            continue
        block = [
            [entries.get((row, col), Fraction(0)) for col in col_ids] for row in row_ids
        ]
        rank += bareiss_rank(block, dense_cap=dense_cap)
    return RankReport(rank=rank, rows=rows, cols=cols, blocks=len(blocks))


@dataclass(frozen=True, slots=True)
class HermiteCheck:
    d: int
    n: int
    domain_dim: int
    codomain_dim: int
    report: RankReport

    @property
    def holds(self) -> bool:
        return self.domain_dim == self.codomain_dim and self.report.isomorphism


def hermite_check(
    d: int, n: int, *, cap: int | None = None, dense_cap: int | None = None
) -> HermiteCheck:
    """For dim V = 2 both sides have equal dimension and h_{d,n} is an isomorphism."""

    linear_map = hdn_matrix(2, d, n, cap=cap)
    return HermiteCheck(
        d=d,
        n=n,
        domain_dim=basis_size(2, d, n),
        codomain_dim=basis_size(2, n, d),
        report=rank_report(linear_map, dense_cap=dense_cap),
    )


def check_weight_zero_size(d: int, n: int, *, cap: int, allow_large: bool, hard_cap: int) -> int:
    """Dimension of the weight-zero domain, refused when above the applicable cap."""

    size = max(wreath_dimension(d, n), wreath_dimension(n, d))
    limit = hard_cap if allow_large else min(cap, hard_cap)
    if size > limit:
        raise ResourceLimitError(
            f"Weight-zero h_{d},{n} has dimension {size}; limit is {limit}"
            + ("" if allow_large else " (use --allow-large to raise it)")
            + "."
        )
    return size


__all__ = [
    "ExactLinearMap",
    "HermiteCheck",
    "RankReport",
    "check_weight_zero_size",
    "hdn_apply",
    "hdn_matrix",
    "hermite_check",
    "rank_report",
    "weight_zero_matrix",
]
