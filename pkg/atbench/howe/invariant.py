"""The SL(V)-invariant P on S^d(SⁿV) and its dual coefficient vector P*.

P is evaluated on a product of d groups of n vectors in ℚ^d as the sum over
one permutation per group of the product, over the n positions, of the
determinant formed by picking one vector from every group at that position.
The determinant form is normalized so that det(e₁,…,e_d) = 1.
"""

from __future__ import annotations

import logging
import math
from collections import defaultdict
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from ..config import INVARIANT_HARD_LIMIT
from ..errors import ResourceLimitError, ValidationError
from ..exact.linalg import exact_det
from ..logging import Stopwatch
from .basis import SymBasisElement, basis_with_weight
from .hadamard import hdn_apply

logger = logging.getLogger(__name__)

Vector = tuple[Fraction, ...]

PSTAR_LIMIT = 4


@dataclass(frozen=True, slots=True)
class PInvariant:
    """Handle on P for a fixed shape; ``allow_odd`` lifts the even-n guard."""

    d: int
    n: int
    allow_odd: bool = False

    def __post_init__(self) -> None:
        if self.d < 1 or self.n < 1:
            raise ValidationError("d and n must be at least 1.")
        if self.n % 2 and not self.allow_odd:
            raise ValidationError(f"P is defined for even n only (got n={self.n}).")

    def _groups(
        self, vectors: Sequence[Sequence[Sequence[int | Fraction]]]
    ) -> list[tuple[list[Vector], list[int]]]:
        if len(vectors) != self.d:
            raise ValidationError(f"Expected {self.d} groups of vectors, got {len(vectors)}.")
        groups = []
        for group in vectors:
            if len(group) != self.n:
                raise ValidationError(f"Every group needs {self.n} vectors.")
            distinct: list[Vector] = []
            counts: list[int] = []
            for raw in group:
                if len(raw) != self.d:
                    raise ValidationError(f"Vectors must lie in a space of dimension {self.d}.")
                vector = tuple(Fraction(value) for value in raw)
                if vector in distinct:
                    counts[distinct.index(vector)] += 1
                else:
                    distinct.append(vector)
                    counts.append(1)
            groups.append((distinct, counts))
        return groups

    def evaluate(self, vectors: Sequence[Sequence[Sequence[int | Fraction]]]) -> Fraction:
        """Exact value of P on the given vectors.

        Equal vectors inside a group are merged: choosing one of c equal copies
        contributes a factor c instead of c separate branches. A branch is
        dropped as soon as one of its determinants vanishes.
        """

        groups = self._groups(vectors)
        d, n = self.d, self.n
        dets: dict[tuple[int, ...], Fraction] = {}
        chosen: list[int] = []

        def det_of(key: tuple[int, ...]) -> Fraction:
            value = dets.get(key)
            if value is None:
                value = exact_det([groups[g][0][idx] for g, idx in enumerate(key)])
                dets[key] = value
            return value

        def walk(position: int, group: int) -> Fraction:
            if group == d:
                value = det_of(tuple(chosen))
                if value == 0:
                    return Fraction(0)
                if position + 1 == n:
                    return value
                saved = chosen.copy()
                chosen.clear()
                rest = walk(position + 1, 0)
                chosen[:] = saved
                return value * rest
            counts = groups[group][1]
            total = Fraction(0)
            for idx, count in enumerate(counts):
                if count == 0:
                    continue
                counts[idx] -= 1
                chosen.append(idx)
                total += count * walk(position, group + 1)
                chosen.pop()
                counts[idx] += 1
            return total

        return walk(0, 0)


def eval_P(  # noqa: N802
    d: int,
    n: int,
    vectors: Sequence[Sequence[Sequence[int | Fraction]]],
    *,
    allow_odd: bool = False,
) -> Fraction:
    return PInvariant(d, n, allow_odd=allow_odd).evaluate(vectors)


def _unit(d: int, index: int) -> tuple[int, ...]:
    return tuple(1 if k == index else 0 for k in range(d))


def P_on_power(  # noqa: N802
    n: int, *, allow_odd: bool = False, limit: int = INVARIANT_HARD_LIMIT
) -> int:
    """P on (e₁⋯e_n)ⁿ: every group holds e₁,…,e_n once.

    Each surviving term is a Latin square read by columns, so the value is a
    signed Latin-square count.
    """

    if n < 1:
        raise ValidationError("n must be at least 1.")
    if n > limit:
        raise ResourceLimitError(f"P on (e1⋯en)^n is limited to n ≤ {limit} (got {n}).")
    clock = Stopwatch()
    group = [_unit(n, j) for j in range(n)]
    value = eval_P(n, n, [group] * n, allow_odd=allow_odd)
    logger.info("P on (e1⋯e%d)^%d = %s in %.2fs", n, n, value, clock.seconds)
    return int(value)


@dataclass(frozen=True, slots=True)
class PStarVector:
    """Coefficients of P* over the weight-(n,…,n) monomials of Sⁿ(Sⁿℂⁿ).

    Coefficients follow the ordered-outer-word convention: the coefficient of
    (e₁ⁿ)⋯(e_nⁿ) is 1.
    """

    n: int
    basis: tuple[SymBasisElement, ...]
    coefficients: tuple[Fraction, ...]

    def coefficient(self, element: SymBasisElement) -> Fraction:
        return self.coefficients[self.basis.index(element)]

    def nonzero(self) -> dict[SymBasisElement, Fraction]:
        return {
            element: value
            for element, value in zip(self.basis, self.coefficients, strict=True)
            if value != 0
        }

    def as_floats(self) -> list[float]:
        return [float(value) for value in self.coefficients]


def power_monomial(n: int) -> SymBasisElement:
    """(e₁⋯e_n)ⁿ."""

    return SymBasisElement(tuple(tuple(range(n)) for _ in range(n)))


def diagonal_monomial(n: int) -> SymBasisElement:
    """(e₁ⁿ)⋯(e_nⁿ)."""

    return SymBasisElement(tuple((i,) * n for i in range(n)))


def Pstar_coefficients(n: int, *, limit: int = PSTAR_LIMIT) -> PStarVector:  # noqa: N802
    """P* over the weight-(n,…,n) monomials; defined for even n and for n = 1."""

    if n < 1 or (n % 2 and n > 1):
        raise ValidationError(f"P* is computed for even n only (got n={n}).")
    if n > limit:
        raise ResourceLimitError(f"P* coefficients are limited to n ≤ {limit} (got {n}).")
    clock = Stopwatch()
    elements = basis_with_weight(n, n, n, (n,) * n)
    scale = Fraction(1, math.factorial(n) ** n)
    coefficients = []
    for element in elements:
        vectors = [[_unit(n, index) for index in inner] for inner in element.outer]
        raw = eval_P(n, n, vectors, allow_odd=n == 1)
        coefficients.append(raw * element.inner_multiplicity() * scale)
    logger.info(
        "P* for n=%d over %d monomials in %.2fs", n, len(elements), clock.seconds
    )
    return PStarVector(n=n, basis=tuple(elements), coefficients=tuple(coefficients))


@dataclass(frozen=True, slots=True)
class KernelCheck:
    """Image of P* under h_{n,n}, in the plain monomial basis of Sⁿ(Sⁿℂⁿ).

    P* lies outside the kernel exactly when the image has a nonzero term.
    """

    n: int
    image: tuple[tuple[SymBasisElement, Fraction], ...]

    @property
    def in_kernel(self) -> bool:
        return not self.image

    @property
    def support(self) -> int:
        return len(self.image)

    def coefficient(self, element: SymBasisElement) -> Fraction:
        return dict(self.image).get(element, Fraction(0))


def kernel_check(n: int, *, limit: int = PSTAR_LIMIT) -> KernelCheck:
    """Apply h_{n,n} to P* written with plain polynomial coefficients.

    Ordered-outer-word coefficients become plain ones after multiplying by the
    number of distinct orderings of each outer multiset.
    """

    pstar = Pstar_coefficients(n, limit=limit)
    clock = Stopwatch()
    image: dict[SymBasisElement, Fraction] = defaultdict(Fraction)
    for element, value in pstar.nonzero().items():
        plain = value * element.outer_multiplicity()
        for target, share in hdn_apply(n, n, n, element).items():
            image[target] += plain * share
    terms = tuple(sorted((element, value) for element, value in image.items() if value != 0))
    logger.info(
        "h_{%d,%d}(P*) has %d nonzero terms in %.2fs", n, n, len(terms), clock.seconds
    )
    return KernelCheck(n=n, image=terms)


__all__ = [
    "KernelCheck",
    "PInvariant",
    "PStarVector",
    "P_on_power",
    "Pstar_coefficients",
    "diagonal_monomial",
    "eval_P",
    "kernel_check",
    "power_monomial",
]
