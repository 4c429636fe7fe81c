"""Tests for Latin square enumeration, signed censuses and tilings."""

from __future__ import annotations

import random

import pytest

from atbench.errors import ResourceLimitError, ValidationError
from atbench.exact.permutation import Permutation
from atbench.exact.poly import all_entries_monomial, apolar_pair, det_poly, poly_pow
from atbench.latin import (
    LatinSquare,
    LatinSquareError,
    at_difference,
    census,
    col_difference,
    det_power_coefficient,
    enumerate_squares,
    huang_rota_verify,
    naive_census,
    sign_data,
)

TOTALS = {1: 1, 2: 2, 3: 12, 4: 576, 5: 161_280}


def test_sign_data_of_order_two_square() -> None:
    square = LatinSquare.from_entries([[0, 1], [1, 0]])
    signs = sign_data(square)

    assert (signs.row_sign, signs.col_sign, signs.total_sign) == (-1, -1, 1)


def test_rejects_repeated_column_symbol() -> None:
    with pytest.raises(LatinSquareError):
        LatinSquare.from_entries([[0, 1], [0, 1]])
    with pytest.raises(ValidationError):
        LatinSquare.from_entries([[0, 0], [1, 1]])


def test_transpose_and_relabel_stay_latin() -> None:
    square = LatinSquare.cyclic(4)
    tau = Permutation.from_one_based((2, 1, 3, 4))

    assert square.transpose().transpose() == square
    relabeled = square.relabel(tau)
    assert relabeled.entries()[0] == (1, 0, 2, 3)
    assert str(LatinSquare.cyclic(2)) == "1 2\n2 1"


@pytest.mark.parametrize(("n", "total"), sorted(TOTALS.items()))
def test_census_totals(n: int, total: int) -> None:
    assert census(n).total == total


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_census_matches_naive_oracle(n: int) -> None:
    assert census(n) == naive_census(n)


def test_order_two_census() -> None:
    result = census(2)

    assert (result.even, result.odd) == (2, 0)
    assert result.at_difference == 2
    assert result.col_difference == -2


def test_order_one_square_is_even() -> None:
    assert at_difference(1) == 1


@pytest.mark.parametrize("n", [3, 5])
def test_odd_orders_vanish(n: int) -> None:
    result = census(n)

    assert result.at_difference == 0
    assert result.col_difference == 0


@pytest.mark.parametrize("n", [2, 4])
def test_even_orders_do_not_vanish(n: int) -> None:
    assert at_difference(n) != 0


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_differences_agree_up_to_sign(n: int) -> None:
    assert huang_rota_verify(n)
    assert abs(at_difference(n)) == abs(col_difference(n))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_symmetry_census_matches_full_enumeration(n: int) -> None:
    assert census(n, symmetry=True) == census(n)


def test_census_does_not_depend_on_threads() -> None:
    assert census(4, threads=3) == census(4, threads=1)


def test_enumeration_visits_each_square_once_in_canonical_order() -> None:
    serial: list[tuple[tuple[int, ...], ...]] = []
    parallel: list[tuple[tuple[int, ...], ...]] = []

    count = enumerate_squares(4, lambda square: serial.append(square.entries()))
    enumerate_squares(4, lambda square: parallel.append(square.entries()), threads=2)

    assert count == 576
    assert len(set(serial)) == 576
    assert serial == sorted(serial)
    assert parallel == serial


def test_census_limits() -> None:
    with pytest.raises(ValidationError):
        census(0)
    with pytest.raises(ResourceLimitError):
        census(7, allow_large=True)
    with pytest.raises(ResourceLimitError):
        census(6, limit=5)


def test_tiling_coefficient_at_order_two() -> None:
    assert det_power_coefficient(2) == -2


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_tiling_coefficient_tracks_latin_difference(n: int) -> None:
    value = det_power_coefficient(n)

    assert abs(value) == abs(at_difference(n))
    assert det_power_coefficient(n, threads=2) == value


@pytest.mark.slow
def test_tiling_coefficient_vanishes_at_order_five() -> None:
    assert det_power_coefficient(5) == 0


def test_conjugates_are_latin_and_compose_back() -> None:
    square = LatinSquare.from_entries([[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 1, 0], [3, 2, 0, 1]])

    assert square.conjugate((1, 0, 2)) == square.transpose()
    assert square.conjugate((0, 1, 2)) == square
    row_symbol = square.conjugate((0, 2, 1))
    assert row_symbol.conjugate((0, 2, 1)) == square
    with pytest.raises(ValidationError):
        square.conjugate((0, 0, 1))


def _shuffled_square(n: int, rng: random.Random) -> LatinSquare:
    rows = list(range(n))
    cols = list(range(n))
    symbols = list(range(n))
    rng.shuffle(rows)
    rng.shuffle(cols)
    rng.shuffle(symbols)
    return LatinSquare.from_entries(
        [[symbols[(rows[r] + cols[c]) % n] for c in range(n)] for r in range(n)]
    )


def _sample_squares(n: int, count: int, seed: int) -> list[LatinSquare]:
    rng = random.Random(seed)
    if n <= 4:
        every: list[LatinSquare] = []
        enumerate_squares(n, every.append)
        return rng.sample(every, min(count, len(every)))
    return [_shuffled_square(n, rng) for _ in range(count)]


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_transpose_swaps_row_and_column_signs(n: int) -> None:
    for square in _sample_squares(n, 40, seed=n):
        signs = sign_data(square)
        flipped = sign_data(square.transpose())

        assert (flipped.row_sign, flipped.col_sign) == (signs.col_sign, signs.row_sign)
        assert flipped.total_sign == signs.total_sign


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_symbol_transposition_scales_row_sign(n: int) -> None:
    swap = Permutation.transposition(n, 0, 1)
    for square in _sample_squares(n, 40, seed=100 + n):
        before = sign_data(square).row_sign
        after = sign_data(square.relabel(swap)).row_sign

        assert after == before * (-1) ** n


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_tiling_coefficient_matches_apolar_pairing(n: int) -> None:
    power = poly_pow(det_poly(n), n, multilinear_only=True)

    assert apolar_pair(all_entries_monomial(n), power) == det_power_coefficient(n)


def test_census_reports_its_shards() -> None:
    # 4! first rows, each followed by one of the 9 derangements.
    assert census(4).shards == 24 * 9
    assert census(4, symmetry=True).shards == 9


def test_unordered_enumeration_visits_the_same_squares() -> None:
    seen: list[tuple[tuple[int, ...], ...]] = []

    count = enumerate_squares(
        4, lambda square: seen.append(square.entries()), threads=2, ordered=False
    )

    assert count == 576
    assert sorted(seen) == sorted(set(seen))
    assert len(seen) == 576


def test_symbol_permutations_tile_the_grid() -> None:
    square = LatinSquare.from_entries([[0, 1, 2], [2, 0, 1], [1, 2, 0]])
    cells = {
        (row, sigma(row)) for sigma in square.symbol_permutations() for row in range(square.n)
    }

    assert len(cells) == 9
    for symbol, sigma in enumerate(square.symbol_permutations()):
        assert all(square.entries()[row][sigma(row)] == symbol for row in range(3))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_symbol_permutation_signs_sum_to_tiling_coefficient(n: int) -> None:
    total = 0

    def add(square: LatinSquare) -> None:
        nonlocal total
        sign = 1
        for sigma in square.symbol_permutations():
            sign *= sigma.sign()
        total += sign

    enumerate_squares(n, add)

    assert total == det_power_coefficient(n)
