"""Statistical and structural tests for Haar sampling on SU(n)."""

from __future__ import annotations

import numpy as np
import pytest
from scipy import stats

from atbench.errors import ValidationError
from atbench.su.haar import haar_su, haar_su_batch

SAMPLES = 20_000

# z-bound for checks that compare every entry or entry pair at once.
FAMILY_Z = 4.5
KS_ALPHA = 1e-3


@pytest.mark.parametrize("n", [2, 3, 5])
def test_samples_are_special_unitary(n: int) -> None:
    g = haar_su_batch(n, 200, np.random.default_rng(1))
    identity = np.broadcast_to(np.eye(n), g.shape)

    assert g.shape == (200, n, n)
    assert np.allclose(g @ np.conj(np.swapaxes(g, -1, -2)), identity, atol=1e-12)
    assert np.allclose(np.linalg.det(g), 1.0, atol=1e-12)


def test_single_sample_shape() -> None:
    assert haar_su(3, np.random.default_rng(0)).shape == (3, 3)


def test_order_one_is_trivial() -> None:
    g = haar_su_batch(1, 5, np.random.default_rng(0))

    assert np.array_equal(g, np.ones((5, 1, 1), dtype=np.complex128))


def test_same_seed_same_samples() -> None:
    first = haar_su_batch(3, 10, np.random.default_rng(42))
    second = haar_su_batch(3, 10, np.random.default_rng(42))

    assert np.array_equal(first, second)


@pytest.mark.parametrize("n", [2, 3])
def test_first_and_second_moments(n: int) -> None:
    g = haar_su_batch(n, SAMPLES, np.random.default_rng(5))
    entry = g[:, 0, 0]
    tolerance = 5.0 / np.sqrt(SAMPLES)

    assert abs(entry.mean()) < tolerance
    assert abs(np.mean(np.abs(entry) ** 2) - 1.0 / n) < tolerance


def test_su2_diagonal_product_has_mean_one_half() -> None:
    g = haar_su_batch(2, SAMPLES, np.random.default_rng(9))
    product = g[:, 0, 0] * g[:, 1, 1]

    assert abs(product.mean() - 0.5) < 5.0 * 0.29 / np.sqrt(SAMPLES)


def test_su2_entry_modulus_is_uniform_and_left_invariant() -> None:
    rng = np.random.default_rng(13)
    g = haar_su_batch(2, SAMPLES, rng)
    h = haar_su(2, np.random.default_rng(99))
    moved = h @ g

    assert stats.kstest(np.abs(g[:, 0, 0]) ** 2, "uniform").pvalue > KS_ALPHA
    assert stats.kstest(np.abs(moved[:, 0, 0]) ** 2, "uniform").pvalue > KS_ALPHA


def test_rejects_bad_arguments() -> None:
    with pytest.raises(ValidationError):
        haar_su_batch(0, 3, np.random.default_rng(0))
    with pytest.raises(ValidationError):
        haar_su_batch(2, -1, np.random.default_rng(0))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_trace_distribution_is_left_invariant(n: int) -> None:
    v = haar_su(n, np.random.default_rng(100 + n))
    g = haar_su_batch(n, SAMPLES, np.random.default_rng(200 + n))
    reference = haar_su_batch(n, SAMPLES, np.random.default_rng(300 + n))
    moved = np.trace(v @ g, axis1=-2, axis2=-1)
    plain = np.trace(reference, axis1=-2, axis2=-1)

    assert stats.ks_2samp(moved.real, plain.real).pvalue > KS_ALPHA
    assert stats.ks_2samp(np.abs(moved), np.abs(plain)).pvalue > KS_ALPHA


def _within(values: np.ndarray, expected: np.ndarray) -> np.ndarray:
    mean = values.mean(axis=0)
    stderr_re = values.real.std(axis=0, ddof=1) / np.sqrt(values.shape[0])
    stderr_im = values.imag.std(axis=0, ddof=1) / np.sqrt(values.shape[0])
    close_re = np.abs(mean.real - expected) <= FAMILY_Z * stderr_re + 1e-12
    close_im = np.abs(mean.imag) <= FAMILY_Z * stderr_im + 1e-12
    return close_re & close_im


@pytest.mark.parametrize("n", [2, 3, 4])
def test_every_entry_has_mean_zero(n: int) -> None:
    g = haar_su_batch(n, SAMPLES, np.random.default_rng(400 + n))

    assert _within(g, np.zeros((n, n))).all()


@pytest.mark.parametrize("n", [2, 3, 4])
def test_mixed_second_moments_are_orthogonal(n: int) -> None:
    g = haar_su_batch(n, SAMPLES // 2, np.random.default_rng(500 + n))
    moments = np.einsum("sij,skl->sijkl", g, np.conj(g))
    identity = np.eye(n)
    expected = np.einsum("ik,jl->ijkl", identity, identity) / n

    assert _within(moments, expected).all()
