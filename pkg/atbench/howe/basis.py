"""Monomial bases of S^d(SⁿV).

A basis element is a multiset of d inner monomials, each inner monomial a
multiset of n variable indices from [dimV]. Both levels are stored as sorted
tuples, so the canonical order of a basis is plain tuple order.
"""

from __future__ import annotations

import math
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, combinations_with_replacement

from ..errors import ResourceLimitError, ValidationError

InnerMonomial = tuple[int, ...]


@dataclass(frozen=True, slots=True, order=True)
class SymBasisElement:
    outer: tuple[InnerMonomial, ...]

    def __post_init__(self) -> None:
        if not self.outer:
            raise ValidationError("A basis element needs at least one inner monomial.")
        size = len(self.outer[0])
        if any(len(inner) != size for inner in self.outer):
            raise ValidationError("Every inner monomial must have the same degree.")
        if any(tuple(sorted(inner)) != inner for inner in self.outer):
            raise ValidationError("Inner monomials must be sorted tuples.")
        if tuple(sorted(self.outer)) != self.outer:
            raise ValidationError("Inner monomials must be listed in sorted order.")

    @classmethod
    def of(cls, inners: Sequence[Sequence[int]]) -> SymBasisElement:
        return cls(tuple(sorted(tuple(sorted(inner)) for inner in inners)))

    @property
    def d(self) -> int:
        return len(self.outer)

    @property
    def n(self) -> int:
        return len(self.outer[0])

    def weight(self, dim_v: int) -> tuple[int, ...]:
        """Total exponent of each variable across all inner monomials."""

        counts = [0] * dim_v
        for inner in self.outer:
            for index in inner:
                counts[index] += 1
        return tuple(counts)

    def relabel(self, images: Sequence[int]) -> SymBasisElement:
        """Apply a substitution of variable indices."""

        return SymBasisElement.of([[images[i] for i in inner] for inner in self.outer])

    def outer_multiplicity(self) -> int:
        """Number of distinct orderings of the outer multiset."""

        return multinomial([self.outer.count(inner) for inner in set(self.outer)])

    def inner_multiplicity(self) -> int:
        """Product over inner monomials of their number of distinct orderings."""

        return math.prod(
            multinomial([inner.count(index) for index in set(inner)]) for inner in self.outer
        )

    def label(self, symbol: str = "x") -> str:
        return "".join(f"({inner_label(inner, symbol)})" for inner in self.outer)

    def __str__(self) -> str:
        return self.label()


def multinomial(parts: Sequence[int]) -> int:
    return math.factorial(sum(parts)) // math.prod(math.factorial(part) for part in parts)


def inner_label(inner: InnerMonomial, symbol: str = "x") -> str:
    factors = []
    for index in sorted(set(inner)):
        exponent = inner.count(index)
        name = f"{symbol}{index + 1}"
        factors.append(name if exponent == 1 else f"{name}^{exponent}")
    return "*".join(factors)


def sym_power_dim(dim_v: int, n: int) -> int:
    """dim SⁿV for dim V = dim_v."""

    return math.comb(dim_v + n - 1, n)


def basis_size(dim_v: int, d: int, n: int) -> int:
    return math.comb(sym_power_dim(dim_v, n) + d - 1, d)


def wreath_dimension(d: int, n: int) -> int:
    """(dn)! / (n!^d · d!), the dimension of the weight-zero subspace of S^d(SⁿV)."""

    return math.factorial(d * n) // (math.factorial(n) ** d * math.factorial(d))


def _check_positive(dim_v: int, d: int, n: int) -> None:
    if dim_v < 1 or d < 1 or n < 1:
        raise ValidationError("dimV, d and n must all be at least 1.")


@lru_cache(maxsize=64)
def inner_monomials(dim_v: int, n: int) -> tuple[InnerMonomial, ...]:
    return tuple(combinations_with_replacement(range(dim_v), n))


def basis(dim_v: int, d: int, n: int, *, cap: int | None = None) -> list[SymBasisElement]:
    """All monomials of S^d(SⁿV) in canonical lexicographic order."""

    _check_positive(dim_v, d, n)
    size = basis_size(dim_v, d, n)
    if cap is not None and size > cap:
        raise ResourceLimitError(
            f"Basis of S^{d}(S^{n}V) with dim V={dim_v} has {size} elements (cap {cap})."
        )
    return [
        SymBasisElement(outer)
        for outer in combinations_with_replacement(inner_monomials(dim_v, n), d)
    ]


def basis_with_weight(
    dim_v: int, d: int, n: int, weight: Sequence[int]
) -> list[SymBasisElement]:
    """Monomials of S^d(SⁿV) whose total exponent vector equals ``weight``."""

    _check_positive(dim_v, d, n)
    if len(weight) != dim_v or sum(weight) != d * n:
        raise ValidationError(f"Weight {tuple(weight)} is impossible for S^{d}(S^{n}V).")
    inners = inner_monomials(dim_v, n)
    inner_weights = [
        tuple(inner.count(index) for index in range(dim_v)) for inner in inners
    ]
    found: list[SymBasisElement] = []
    chosen: list[InnerMonomial] = []
    remaining = list(weight)

    def extend(start: int) -> None:
        if len(chosen) == d:
            if not any(remaining):
                found.append(SymBasisElement(tuple(chosen)))
            return
        for position in range(start, len(inners)):
            inner_weight = inner_weights[position]
            if any(w > r for w, r in zip(inner_weight, remaining, strict=True)):
                continue
            for index, w in enumerate(inner_weight):
                remaining[index] -= w
            chosen.append(inners[position])
            extend(position)
            chosen.pop()
            for index, w in enumerate(inner_weight):
                remaining[index] += w

    extend(0)
    return found


def _set_partitions(items: tuple[int, ...], block: int) -> Iterator[tuple[InnerMonomial, ...]]:
    if not items:
        yield ()
        return
    first, rest = items[0], items[1:]
    for companions in combinations(rest, block - 1):
        remaining = tuple(item for item in rest if item not in companions)
        for tail in _set_partitions(remaining, block):
            yield ((first, *companions), *tail)


def weight_zero_basis(d: int, n: int, *, cap: int | None = None) -> list[SymBasisElement]:
    """Weight-zero monomials of S^d(SⁿV) with dim V = dn: set partitions of [dn] into
    d blocks of size n, in canonical order."""

    _check_positive(d * n, d, n)
    size = wreath_dimension(d, n)
    if cap is not None and size > cap:
        raise ResourceLimitError(
            f"Weight-zero subspace of S^{d}(S^{n}V) has dimension {size} (cap {cap})."
        )
    return [SymBasisElement(outer) for outer in _set_partitions(tuple(range(d * n)), n)]


__all__ = [
    "InnerMonomial",
    "SymBasisElement",
    "basis",
    "basis_size",
    "basis_with_weight",
    "inner_label",
    "inner_monomials",
    "multinomial",
    "sym_power_dim",
    "weight_zero_basis",
    "wreath_dimension",
]
