"""Tests for the invariant P and its coefficient vector P*."""

from __future__ import annotations

import math
import random
from fractions import Fraction
from itertools import permutations, product

import pytest

from atbench.errors import ResourceLimitError, ValidationError
from atbench.exact.linalg import exact_det
from atbench.howe.basis import SymBasisElement
from atbench.howe.invariant import (
    P_on_power,
    PInvariant,
    Pstar_coefficients,
    diagonal_monomial,
    eval_P,
    kernel_check,
    power_monomial,
)
from atbench.latin.enumeration import col_difference

Vector = list[Fraction]

SL2 = [[2, 3], [1, 2]]
SL3 = [[2, 1, 0], [1, 1, 0], [0, 0, 1]]


def _unit(d: int, index: int) -> list[int]:
    return [1 if k == index else 0 for k in range(d)]


def _random_groups(rng: random.Random, d: int, n: int) -> list[list[Vector]]:
    return [
        [[Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(d)] for _ in range(n)]
        for _ in range(d)
    ]


def _apply(matrix: list[list[int]], vector: Vector) -> Vector:
    return [sum((a * v for a, v in zip(row, vector, strict=True)), Fraction(0)) for row in matrix]


@pytest.mark.parametrize(("d", "n"), [(1, 2), (2, 2), (3, 2), (2, 4)])
def test_constant_groups_give_factorial_power(d: int, n: int) -> None:
    groups = [[_unit(d, i)] * n for i in range(d)]

    assert eval_P(d, n, groups) == math.factorial(n) ** d


def test_transposed_assignment_at_order_two() -> None:
    groups = [[_unit(2, 0), _unit(2, 1)], [_unit(2, 0), _unit(2, 1)]]

    assert eval_P(2, 2, groups) == -2


@pytest.mark.parametrize(("d", "n"), [(2, 2), (2, 4), (3, 2)])
def test_symmetric_in_groups_and_within_groups(d: int, n: int) -> None:
    rng = random.Random(7 * d + n)
    for _ in range(5):
        groups = _random_groups(rng, d, n)
        value = eval_P(d, n, groups)

        shuffled_groups = groups.copy()
        rng.shuffle(shuffled_groups)
        assert eval_P(d, n, shuffled_groups) == value

        target = rng.randrange(d)
        one_group_shuffled = [group.copy() for group in groups]
        rng.shuffle(one_group_shuffled[target])
        assert eval_P(d, n, one_group_shuffled) == value


def test_swapping_two_vectors_in_one_group_keeps_the_value() -> None:
    rng = random.Random(41)
    groups = _random_groups(rng, 2, 4)
    swapped = [group.copy() for group in groups]
    swapped[1][0], swapped[1][3] = swapped[1][3], swapped[1][0]

    assert eval_P(2, 4, swapped) == eval_P(2, 4, groups)


@pytest.mark.parametrize(("matrix", "n"), [(SL2, 2), (SL2, 4), (SL3, 2)])
def test_invariant_under_special_linear_maps(matrix: list[list[int]], n: int) -> None:
    d = len(matrix)
    rng = random.Random(23 + n)
    for _ in range(5):
        groups = _random_groups(rng, d, n)
        moved = [[_apply(matrix, vector) for vector in group] for group in groups]
        assert eval_P(d, n, moved) == eval_P(d, n, groups)


def _brute_force(d: int, n: int, groups: list[list[Vector]]) -> Fraction:
    total = Fraction(0)
    for choice in product(permutations(range(n)), repeat=d):
        term = Fraction(1)
        for position in range(n):
            term *= exact_det([groups[g][choice[g][position]] for g in range(d)])
        total += term
    return total


@pytest.mark.parametrize(("d", "n", "seed"), [(2, 2, 1), (3, 2, 2), (2, 4, 3)])
def test_matches_brute_force_with_repeated_vectors(d: int, n: int, seed: int) -> None:
    rng = random.Random(seed)
    base = _random_groups(rng, d, n)
    groups = [[group[0]] * (n // 2) + group[n // 2 :] for group in base]

    assert eval_P(d, n, groups) == _brute_force(d, n, groups)
    assert eval_P(d, n, base) == _brute_force(d, n, base)


def test_shape_validation() -> None:
    with pytest.raises(ValidationError):
        eval_P(2, 3, [[_unit(2, 0)] * 3] * 2)
    with pytest.raises(ValidationError):
        eval_P(2, 2, [[_unit(2, 0)] * 2])
    with pytest.raises(ValidationError):
        eval_P(2, 2, [[_unit(3, 0)] * 2] * 2)
    with pytest.raises(ValidationError):
        PInvariant(0, 2)


def test_odd_orders_vanish_when_allowed() -> None:
    assert P_on_power(3, allow_odd=True) == 0
    assert P_on_power(1, allow_odd=True) == 1


@pytest.mark.parametrize("n", [2, 4])
def test_power_value_tracks_column_difference(n: int) -> None:
    value = P_on_power(n)

    assert abs(value) == abs(col_difference(n))
    assert value != 0


def test_power_value_at_order_two() -> None:
    assert P_on_power(2) == col_difference(2) == -2


def test_power_value_limit() -> None:
    with pytest.raises(ResourceLimitError):
        P_on_power(6)
    with pytest.raises(ResourceLimitError):
        P_on_power(4, limit=3)


def test_pstar_at_order_two() -> None:
    pstar = Pstar_coefficients(2)

    assert [element.label("e") for element in pstar.basis] == ["(e1^2)(e2^2)", "(e1*e2)(e1*e2)"]
    assert pstar.coefficients == (Fraction(1), Fraction(-2))
    assert pstar.coefficient(diagonal_monomial(2)) == 1
    assert pstar.coefficient(power_monomial(2)) == -2
    assert pstar.as_floats() == [1.0, -2.0]


def test_pstar_is_symmetric_under_variable_swap() -> None:
    pstar = Pstar_coefficients(2)

    for element in pstar.basis:
        assert pstar.coefficient(element.relabel([1, 0])) == pstar.coefficient(element)


def test_pstar_rejects_odd_and_large_orders() -> None:
    with pytest.raises(ValidationError):
        Pstar_coefficients(3)
    with pytest.raises(ResourceLimitError):
        Pstar_coefficients(6)


@pytest.mark.slow
def test_pstar_at_order_four() -> None:
    pstar = Pstar_coefficients(4)

    assert pstar.coefficient(diagonal_monomial(4)) == 1
    assert pstar.coefficient(power_monomial(4)) == P_on_power(4)
    assert len(pstar.nonzero()) > 2


def test_pstar_at_order_one_is_the_single_variable() -> None:
    pstar = Pstar_coefficients(1)

    assert pstar.nonzero() == {SymBasisElement(((0,),)): Fraction(1)}


def test_hadamard_howe_image_of_pstar_at_order_two() -> None:
    check = kernel_check(2)

    assert not check.in_kernel
    assert dict(check.image) == {
        SymBasisElement(((0, 0), (1, 1))): Fraction(-1),
        SymBasisElement(((0, 1), (0, 1))): Fraction(1),
    }
    assert check.coefficient(power_monomial(2)) == 1
    assert check.coefficient(SymBasisElement(((0, 0), (0, 0)))) == 0


def test_hadamard_howe_image_of_pstar_at_order_four() -> None:
    check = kernel_check(4)

    assert not check.in_kernel
    assert check.support == 465
    assert all(element.weight(4) == (4, 4, 4, 4) for element, _ in check.image)


def test_kernel_check_follows_pstar_limits() -> None:
    assert kernel_check(1).support == 1
    with pytest.raises(ValidationError):
        kernel_check(3)
    with pytest.raises(ResourceLimitError):
        kernel_check(4, limit=2)
