"""Sparse multivariate polynomials with exact rational coefficients.

Polynomials live over a declared :class:`VariableSpace`: either plain variables
``x[1..k]`` or the matrix coordinates ``g[i][j]`` of an n×n matrix, flattened
row-major. Coefficients are :class:`fractions.Fraction` throughout; there is no
floating-point polynomial arithmetic here.

Terms are kept in a dict keyed by :class:`MultiIndex`. The canonical order used
by :meth:`SparsePoly.sorted_terms` and the text form is lexicographic on
exponent vectors, largest first, so serialized polynomials are byte-stable.
"""

from __future__ import annotations

import logging
import math
import re
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from operator import add

from ..errors import ContractError, ValidationError
from ..types import Scalar, VariableKind
from .permutation import all_permutations, sign

logger = logging.getLogger(__name__)

_NAME_PATTERN = re.compile(r"^(?:x\[(\d+)\]|g\[(\d+)\]\[(\d+)\])(?:\^(\d+))?$")


@dataclass(frozen=True, slots=True)
class VariableSpace:
    kind: VariableKind
    size: int

    def __post_init__(self) -> None:
        if self.size < 1:
            raise ValidationError("A variable space needs at least one variable.")

    @classmethod
    def plain(cls, k: int) -> VariableSpace:
        return cls("plain", k)

    @classmethod
    def matrix(cls, n: int) -> VariableSpace:
        return cls("matrix", n)

    @property
    def count(self) -> int:
        return self.size * self.size if self.kind == "matrix" else self.size

    def index(self, i: int, j: int) -> int:
        """Flat index of the 0-based matrix coordinate ``g[i][j]``."""

        if self.kind != "matrix":
            raise ContractError("Matrix coordinates require a matrix variable space.")
        return i * self.size + j

    def name(self, index: int) -> str:
        if self.kind == "matrix":
            i, j = divmod(index, self.size)
            return f"g[{i + 1}][{j + 1}]"
        return f"x[{index + 1}]"

    def parse_name(self, token: str) -> tuple[int, int]:
        """Parse ``g[i][j]^e`` / ``x[i]^e`` into (flat index, exponent)."""

        match = _NAME_PATTERN.match(token.strip())
        if match is None:
            raise ValidationError(f"Cannot parse variable token {token!r}.")
        plain, row, col, power = match.groups()
        exponent = int(power) if power else 1
        if plain is not None:
            if self.kind != "plain":
                raise ContractError(f"Token {token!r} does not belong to a matrix space.")
            index = int(plain) - 1
        else:
            index = self.index(int(row) - 1, int(col) - 1)
        if not 0 <= index < self.count:
            raise ValidationError(f"Variable {token!r} is outside the declared space.")
        return index, exponent


@dataclass(frozen=True, slots=True, order=True)
class MultiIndex:
    exponents: tuple[int, ...]
    degree: int = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        if any(e < 0 for e in self.exponents):
            raise ValidationError("Exponents must be non-negative.")
        object.__setattr__(self, "degree", sum(self.exponents))

    @classmethod
    def zero(cls, count: int) -> MultiIndex:
        return cls((0,) * count)

    def __mul__(self, other: MultiIndex) -> MultiIndex:
        return MultiIndex(tuple(map(add, self.exponents, other.exponents)))

    def factorial_weight(self) -> int:
        """Product of the factorials of the exponents (``m!``)."""

        return math.prod(math.factorial(e) for e in self.exponents)

    def is_multilinear(self) -> bool:
        return all(e <= 1 for e in self.exponents)

    def support_mask(self) -> int:
        mask = 0
        for index, exponent in enumerate(self.exponents):
            if exponent:
                mask |= 1 << index
        return mask


def _as_fraction(value: int | Fraction) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


@dataclass(frozen=True, slots=True, eq=False)
class SparsePoly:
    space: VariableSpace
    terms: Mapping[MultiIndex, Fraction]

    def __post_init__(self) -> None:
        for index, coeff in self.terms.items():
            if len(index.exponents) != self.space.count:
                raise ValidationError("Multi-index length does not match the variable space.")
            if coeff == 0:
                raise ValidationError("Sparse polynomials never store zero coefficients.")

    # -- construction -----------------------------------------------------------------

    @classmethod
    def from_terms(
        cls,
        space: VariableSpace,
        items: Iterable[tuple[MultiIndex | Sequence[int], int | Fraction]],
    ) -> SparsePoly:
        """Accumulate (index, coefficient) pairs, merging duplicates and dropping zeros."""

        accumulated: dict[MultiIndex, Fraction] = {}
        for raw_index, coeff in items:
            index = raw_index if isinstance(raw_index, MultiIndex) else MultiIndex(tuple(raw_index))
            accumulated[index] = accumulated.get(index, Fraction(0)) + _as_fraction(coeff)
        return cls(space, {index: c for index, c in accumulated.items() if c != 0})

    @classmethod
    def zero(cls, space: VariableSpace) -> SparsePoly:
        return cls(space, {})

    @classmethod
    def one(cls, space: VariableSpace) -> SparsePoly:
        return cls(space, {MultiIndex.zero(space.count): Fraction(1)})

    @classmethod
    def monomial(
        cls, space: VariableSpace, exponents: Sequence[int], coeff: int | Fraction = 1
    ) -> SparsePoly:
        return cls.from_terms(space, [(tuple(exponents), coeff)])

    @classmethod
    def variable(cls, space: VariableSpace, index: int) -> SparsePoly:
        exponents = [0] * space.count
        exponents[index] = 1
        return cls.monomial(space, exponents)

    # -- inspection -------------------------------------------------------------------

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self.space == other.space and dict(self.terms) == dict(other.terms)

    def coefficient(self, index: MultiIndex | Sequence[int]) -> Fraction:
        key = index if isinstance(index, MultiIndex) else MultiIndex(tuple(index))
        return self.terms.get(key, Fraction(0))

    def sorted_terms(self) -> list[tuple[MultiIndex, Fraction]]:
        return sorted(self.terms.items(), key=lambda item: item[0].exponents, reverse=True)

    @property
    def degree(self) -> int | None:
        """Common degree of all terms, or None for the zero or an inhomogeneous polynomial."""

        degrees = {index.degree for index in self.terms}
        return degrees.pop() if len(degrees) == 1 else None

    @property
    def is_homogeneous(self) -> bool:
        return len({index.degree for index in self.terms}) <= 1

    # -- arithmetic -------------------------------------------------------------------

    def _check_space(self, other: SparsePoly) -> None:
        if self.space != other.space:
            raise ContractError(f"Variable spaces differ: {self.space} vs {other.space}.")

    def __add__(self, other: SparsePoly) -> SparsePoly:
        self._check_space(other)
        return SparsePoly.from_terms(self.space, [*self.terms.items(), *other.terms.items()])

    def __neg__(self) -> SparsePoly:
        return SparsePoly(self.space, {index: -c for index, c in self.terms.items()})

    def __sub__(self, other: SparsePoly) -> SparsePoly:
        return self + (-other)

    def scale(self, factor: int | Fraction) -> SparsePoly:
        if factor == 0:
            return SparsePoly.zero(self.space)
        value = _as_fraction(factor)
        return SparsePoly(self.space, {index: c * value for index, c in self.terms.items()})

    def __mul__(self, other: SparsePoly | int | Fraction) -> SparsePoly:
        if isinstance(other, SparsePoly):
            return self.multiply(other)
        return self.scale(other)

    __rmul__ = __mul__

    def multiply(self, other: SparsePoly, *, multilinear_only: bool = False) -> SparsePoly:
        """Product with hash-map accumulation.

        With ``multilinear_only`` both operands are first restricted to their
        multilinear terms and only disjoint-support products are formed.
        """

        self._check_space(other)
        accumulated: dict[tuple[int, ...], Fraction] = {}
        if multilinear_only:
            left = [(i.support_mask(), i.exponents, c) for i, c in self.terms.items()
                    if i.is_multilinear()]
            right = [(i.support_mask(), i.exponents, c) for i, c in other.terms.items()
                     if i.is_multilinear()]
            for mask_a, exp_a, coeff_a in left:
                for mask_b, exp_b, coeff_b in right:
                    if mask_a & mask_b:
                        continue
                    key = tuple(map(add, exp_a, exp_b))
                    accumulated[key] = accumulated.get(key, Fraction(0)) + coeff_a * coeff_b
        else:
            for index_a, coeff_a in self.terms.items():
                exp_a = index_a.exponents
                for index_b, coeff_b in other.terms.items():
                    key = tuple(map(add, exp_a, index_b.exponents))
                    accumulated[key] = accumulated.get(key, Fraction(0)) + coeff_a * coeff_b
        return SparsePoly(
            self.space, {MultiIndex(key): c for key, c in accumulated.items() if c != 0}
        )

    def multilinear_part(self) -> SparsePoly:
        return SparsePoly(
            self.space, {i: c for i, c in self.terms.items() if i.is_multilinear()}
        )

    # -- canonical text form ----------------------------------------------------------

    def to_text(self) -> str:
        """One term per line, ``coeff * g[i][j]^e ...``, largest exponent vector first."""

        if not self.terms:
            return "0\n"
        lines = []
        for index, coeff in self.sorted_terms():
            factors = [str(coeff)]
            for var, exponent in enumerate(index.exponents):
                if exponent == 1:
                    factors.append(self.space.name(var))
                elif exponent > 1:
                    factors.append(f"{self.space.name(var)}^{exponent}")
            lines.append(" * ".join(factors))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, space: VariableSpace, text: str) -> SparsePoly:
        items: list[tuple[MultiIndex | Sequence[int], int | Fraction]] = []
        for line_num, raw_line in enumerate(text.splitlines(), start=1):
            line = raw_line.strip()
            if not line or line == "0":
                continue
            coeff_token, *factor_tokens = line.split(" * ")
            try:
                coeff = Fraction(coeff_token)
            except ValueError as exc:
                raise ValidationError(f"Line {line_num}: bad coefficient {coeff_token!r}.") from exc
            exponents = [0] * space.count
            for token in factor_tokens:
                index, exponent = space.parse_name(token)
                exponents[index] += exponent
            items.append((exponents, coeff))
        return cls.from_terms(space, items)


def det_poly(n: int) -> SparsePoly:
    """The determinant Σ_σ sign(σ) Π_i g[i][σ(i)] in matrix(n) coordinates."""

    return _signed_permutation_sum(n, signed=True)


def perm_poly(n: int) -> SparsePoly:
    """The permanent: same support as :func:`det_poly`, all coefficients +1."""

    return _signed_permutation_sum(n, signed=False)


def _signed_permutation_sum(n: int, *, signed: bool) -> SparsePoly:
    if n < 1:
        raise ValidationError("Matrix size must be at least 1.")
    space = VariableSpace.matrix(n)
    items: list[tuple[MultiIndex | Sequence[int], int | Fraction]] = []
    for sigma in all_permutations(n):
        exponents = [0] * space.count
        for i in range(n):
            exponents[space.index(i, sigma(i))] = 1
        items.append((exponents, sign(sigma) if signed else 1))
    return SparsePoly.from_terms(space, items)


def all_entries_monomial(n: int) -> SparsePoly:
    """The monomial Π_{i,j} g[i][j]."""

    space = VariableSpace.matrix(n)
    return SparsePoly.monomial(space, [1] * space.count)


def poly_pow(p: SparsePoly, k: int, multilinear_only: bool = False) -> SparsePoly:
    """Return ``p**k`` by iterated multiplication.

    With ``multilinear_only`` every intermediate product is truncated to its
    multilinear terms; a term with an exponent ≥ 2 can never become multilinear
    again, so the result equals the multilinear part of the full power.
    """

    if k < 0:
        raise ValidationError("Exponent must be non-negative.")
    if multilinear_only and not p.is_homogeneous:
        raise ContractError("Multilinear truncation requires a homogeneous polynomial.")
    result = SparsePoly.one(p.space)
    if multilinear_only:
        result = result.multilinear_part()
    for step in range(k):
        result = result.multiply(p, multilinear_only=multilinear_only)
        logger.debug("poly_pow step %d/%d: %d terms", step + 1, k, len(result))
    return result


def apolar_pair(q: SparsePoly, r: SparsePoly) -> Fraction:
    """Σ_m q_m · r_m · m!, i.e. q(∂) applied to r for equal-degree forms."""

    if q.space != r.space:
        raise ContractError(f"Variable spaces differ: {q.space} vs {r.space}.")
    if not q.is_homogeneous or not r.is_homogeneous:
        raise ContractError("The apolarity pairing is defined on homogeneous polynomials.")
    if q.degree is not None and r.degree is not None and q.degree != r.degree:
        raise ContractError(f"Degrees differ: {q.degree} vs {r.degree}.")
    small, large = (q, r) if len(q) <= len(r) else (r, q)
    total = Fraction(0)
    for index, coeff in small.terms.items():
        other = large.terms.get(index)
        if other is not None:
            total += coeff * other * index.factorial_weight()
    return total


def _is_exact(value: object) -> bool:
    return isinstance(value, int | Fraction) and not isinstance(value, bool)


def eval_poly(p: SparsePoly, point: Sequence[Scalar]) -> Scalar:
    """Evaluate at a point; exact when every coordinate is rational, complex otherwise."""

    if len(point) != p.space.count:
        raise ValidationError(
            f"Point has {len(point)} coordinates, the space has {p.space.count} variables."
        )
    if all(_is_exact(value) for value in point):
        exact_point = [_as_fraction(value) for value in point]  # type: ignore[arg-type]
        total = Fraction(0)
        for index, coeff in p.terms.items():
            total += coeff * math.prod(
                exact_point[var] ** e for var, e in enumerate(index.exponents) if e
            )
        return total
    complex_point = [complex(value) for value in point]
    accumulated = 0j
    for index, coeff in p.terms.items():
        accumulated += float(coeff) * math.prod(
            (complex_point[var] ** e for var, e in enumerate(index.exponents) if e), start=1 + 0j
        )
    return accumulated


def matrix_point(rows: Sequence[Sequence[Scalar]]) -> list[Scalar]:
    """Flatten a square matrix row-major into a point of its matrix space."""

    n = len(rows)
    if any(len(row) != n for row in rows):
        raise ValidationError("Expected a square matrix.")
    return [value for row in rows for value in row]


__all__ = [
    "MultiIndex",
    "SparsePoly",
    "VariableSpace",
    "all_entries_monomial",
    "apolar_pair",
    "det_poly",
    "eval_poly",
    "matrix_point",
    "perm_poly",
    "poly_pow",
]
