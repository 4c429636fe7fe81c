"""Tests for the Hadamard–Howe map and its exact ranks."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from atbench.errors import ResourceLimitError, ValidationError
from atbench.howe.basis import SymBasisElement, basis, weight_zero_basis
from atbench.howe.hadamard import (
    check_weight_zero_size,
    hdn_apply,
    hdn_matrix,
    hermite_check,
    rank_report,
    weight_zero_matrix,
)


@pytest.mark.parametrize(("d", "n"), [(1, 1), (2, 2), (2, 3), (3, 2), (3, 4), (4, 4)])
def test_pure_powers_map_to_power_of_product(d: int, n: int) -> None:
    element = SymBasisElement(tuple((i,) * n for i in range(d)))
    image = hdn_apply(d, d, n, element)

    assert image == {SymBasisElement((tuple(range(d)),) * n): Fraction(1)}


def test_mixed_power_splits_one_quarter_three_quarters() -> None:
    element = SymBasisElement.of([[0, 1]] * 3)
    image = hdn_apply(2, 3, 2, element)

    assert image == {
        SymBasisElement(((0, 0, 0), (1, 1, 1))): Fraction(1, 4),
        SymBasisElement(((0, 0, 1), (0, 1, 1))): Fraction(3, 4),
    }


def test_single_group_is_identity() -> None:
    element = SymBasisElement.of([[0, 0, 1]])

    assert hdn_apply(2, 1, 3, element) == {SymBasisElement(((0,), (0,), (1,))): Fraction(1)}


SMALL_SHAPES = [
    (dim_v, d, n)
    for dim_v in range(1, 13)
    for d in range(1, 13)
    for n in range(1, 13)
    if dim_v * d * n <= 12
]


@pytest.mark.parametrize(("dim_v", "d", "n"), [*SMALL_SHAPES, (3, 3, 2)])
def test_images_are_probability_vectors_of_same_weight(dim_v: int, d: int, n: int) -> None:
    for element in basis(dim_v, d, n):
        image = hdn_apply(dim_v, d, n, element)
        assert sum(image.values()) == 1
        assert all(value > 0 for value in image.values())
        assert {key.weight(dim_v) for key in image} == {element.weight(dim_v)}


def test_relabeling_commutes_with_the_map() -> None:
    rng = random.Random(11)
    images = [2, 0, 1]
    for element in rng.sample(basis(3, 2, 3), 12):
        relabeled = hdn_apply(3, 2, 3, element.relabel(images))
        image = hdn_apply(3, 2, 3, element)
        expected = {key.relabel(images): value for key, value in image.items()}
        assert relabeled == expected


def test_rejects_foreign_elements() -> None:
    with pytest.raises(ValidationError):
        hdn_apply(2, 3, 2, SymBasisElement.of([[0, 1]] * 2))
    with pytest.raises(ValidationError):
        hdn_apply(2, 2, 2, SymBasisElement.of([[0, 2], [0, 1]]))


@pytest.mark.parametrize(("d", "n", "rank"), [(2, 2, 6), (2, 3, 10), (3, 2, 10)])
def test_two_variable_ranks(d: int, n: int, rank: int) -> None:
    report = rank_report(hdn_matrix(2, d, n))

    assert report.rank == rank
    assert report.isomorphism
    assert report.nullity == 0


def test_one_variable_map_is_one_by_one() -> None:
    linear_map = hdn_matrix(1, 3, 4)

    assert linear_map.shape == (1, 1)
    assert rank_report(linear_map).rank == 1


def test_matrix_columns_match_direct_images() -> None:
    linear_map = hdn_matrix(2, 3, 2, threads=2)

    for col, element in enumerate(linear_map.domain_basis):
        column = {
            linear_map.codomain_basis[row]: value for row, value in linear_map.column(col).items()
        }
        assert column == hdn_apply(2, 3, 2, element)


@pytest.mark.parametrize(("d", "n"), [(d, n) for d in range(1, 5) for n in range(1, 5)])
def test_hermite_reciprocity(d: int, n: int) -> None:
    assert hermite_check(d, n).holds


@pytest.mark.slow
@pytest.mark.parametrize(
    ("d", "n"), [(d, n) for d in range(1, 7) for n in range(1, 7) if max(d, n) >= 5]
)
def test_hermite_reciprocity_larger(d: int, n: int) -> None:
    assert hermite_check(d, n).holds


def test_weight_zero_matrix_is_restriction_of_full_matrix() -> None:
    small = weight_zero_matrix(2, 2)
    full = hdn_matrix(4, 2, 2).restrict(weight_zero_basis(2, 2), weight_zero_basis(2, 2))

    assert small.shape == (3, 3)
    assert small.entries == full.entries
    assert set(small.entries.values()) == {Fraction(1, 2)}
    assert rank_report(small).rank == 3


@pytest.mark.slow
def test_weight_zero_three_three() -> None:
    linear_map = weight_zero_matrix(3, 3, threads=2)
    report = rank_report(linear_map)

    assert linear_map.shape == (280, 280)
    assert report.blocks == 1
    assert report.maximal_rank


def test_weight_zero_size_gate() -> None:
    assert check_weight_zero_size(2, 2, cap=200, allow_large=False, hard_cap=2000) == 3
    with pytest.raises(ResourceLimitError):
        check_weight_zero_size(3, 3, cap=200, allow_large=False, hard_cap=2000)
    assert check_weight_zero_size(3, 3, cap=200, allow_large=True, hard_cap=2000) == 280


def test_text_export() -> None:
    text = weight_zero_matrix(2, 2).to_text()
    lines = text.splitlines()

    assert lines[0] == "# exact-linear-map rows=3 cols=3 dim_v=4"
    assert len(lines) == 7
    assert lines[1] == "2\t1\t1/2\t(x1*x3)(x2*x4)\t(x1*x2)(x3*x4)"
