"""Monte-Carlo estimates of the SU(n) integrals tied to the Alon–Tarsi chain."""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from numpy.typing import NDArray

from ..errors import ResourceLimitError, ValidationError
from ..howe.basis import InnerMonomial, SymBasisElement, basis_with_weight
from ..howe.invariant import (
    Pstar_coefficients,
    PStarVector,
    diagonal_monomial,
    power_monomial,
)
from .estimate import Integrand, MCEstimate, estimate
from .haar import ComplexArray
from .permanent import permanent_batch

logger = logging.getLogger(__name__)

DEFAULT_PROJECTION_CAP = 2


def _perm_power(n: int) -> Integrand:
    def integrand(g: ComplexArray) -> NDArray[np.complex128]:
        return (permanent_batch(g) ** n)[:, None]

    return integrand


def _entry_product(g: ComplexArray) -> NDArray[np.complex128]:
    return np.prod(g.reshape(g.shape[0], -1), axis=1)[:, None]


def mc_perm_power(
    n: int, *, samples: int, seed: int, chunk_size: int, threads: int = 1
) -> MCEstimate:
    """Estimate of ∫ perm(g)ⁿ dg over SU(n)."""

    if n < 1:
        raise ValidationError("n must be at least 1.")
    (result,) = estimate(
        n,
        _perm_power(n),
        samples=samples,
        seed=seed,
        chunk_size=chunk_size,
        threads=threads,
        label="perm(g)^n",
    )
    return result


def mc_entry_product(
    n: int, *, samples: int, seed: int, chunk_size: int, threads: int = 1
) -> MCEstimate:
    """Estimate of ∫ Π gⁱⱼ dg over SU(n)."""

    if n < 1:
        raise ValidationError("n must be at least 1.")
    (result,) = estimate(
        n,
        _entry_product,
        samples=samples,
        seed=seed,
        chunk_size=chunk_size,
        threads=threads,
        label="product of entries",
    )
    return result


def _inner_expansion(g: ComplexArray) -> dict[InnerMonomial, NDArray[np.complex128]]:
    """Coefficients of (g e₁)⋯(g e_n) in the monomials of Sⁿℂⁿ, per sample."""

    size, n = g.shape[0], g.shape[1]
    poly: dict[InnerMonomial, NDArray[np.complex128]] = {
        (): np.ones(size, dtype=np.complex128)
    }
    for q in range(n):
        grown: dict[InnerMonomial, NDArray[np.complex128]] = defaultdict(
            lambda: np.zeros(size, dtype=np.complex128)
        )
        for key, coefficient in poly.items():
            for i in range(n):
                grown[tuple(sorted((*key, i)))] += coefficient * g[:, i, q]
        poly = dict(grown)
    return poly


def _outer_power(
    inner: dict[InnerMonomial, NDArray[np.complex128]], n: int, size: int
) -> dict[tuple[InnerMonomial, ...], NDArray[np.complex128]]:
    """n-th power of the inner polynomial, keeping only words that can still
    reach exponent n in every variable."""

    inner_weight = {
        key: tuple(key.count(index) for index in range(n)) for key in inner
    }
    outer: dict[tuple[InnerMonomial, ...], NDArray[np.complex128]] = {
        (): np.ones(size, dtype=np.complex128)
    }
    weights: dict[tuple[InnerMonomial, ...], tuple[int, ...]] = {(): (0,) * n}
    for _ in range(n):
        grown: dict[tuple[InnerMonomial, ...], NDArray[np.complex128]] = {}
        grown_weights: dict[tuple[InnerMonomial, ...], tuple[int, ...]] = {}
        for key, coefficient in outer.items():
            weight = weights[key]
            for monomial, inner_coefficient in inner.items():
                total = tuple(a + b for a, b in zip(weight, inner_weight[monomial], strict=True))
                if max(total) > n:
                    continue
                new_key = tuple(sorted((*key, monomial)))
                product = coefficient * inner_coefficient
                if new_key in grown:
                    grown[new_key] = grown[new_key] + product
                else:
                    grown[new_key] = product
                    grown_weights[new_key] = total
        outer, weights = grown, grown_weights
    return outer


def projection_vectors(g: ComplexArray, elements: list[SymBasisElement]) -> NDArray[np.complex128]:
    """Coefficients of g·(e₁⋯e_n)ⁿ over ``elements`` for each sample, shape (m, k).

    An outer monomial's coefficient is its polynomial coefficient divided by
    the number of distinct orderings of the outer multiset.
    """

    size, n = g.shape[0], g.shape[1]
    outer = _outer_power(_inner_expansion(g), n, size)
    columns = []
    for element in elements:
        coefficient = outer.get(element.outer)
        if coefficient is None:
            columns.append(np.zeros(size, dtype=np.complex128))
        else:
            columns.append(coefficient / element.outer_multiplicity())
    return np.stack(columns, axis=1)


@dataclass(frozen=True, slots=True)
class ProjectionEstimate:
    n: int
    basis: tuple[SymBasisElement, ...]
    estimates: tuple[MCEstimate, ...]

    def estimate_for(self, element: SymBasisElement) -> MCEstimate:
        return self.estimates[self.basis.index(element)]

    def real_vector(self) -> list[float]:
        return [entry.mean.real for entry in self.estimates]


def mc_projection_power(
    n: int,
    *,
    samples: int,
    seed: int,
    chunk_size: int,
    threads: int = 1,
    cap: int = DEFAULT_PROJECTION_CAP,
) -> ProjectionEstimate:
    """Average of g·(e₁⋯e_n)ⁿ over SU(n), on the weight-(n,…,n) monomials."""

    if n < 1:
        raise ValidationError("n must be at least 1.")
    if n > cap:
        raise ResourceLimitError(f"Projection is limited to n ≤ {cap} (got {n}).")
    elements = basis_with_weight(n, n, n, (n,) * n)

    def integrand(g: ComplexArray) -> NDArray[np.complex128]:
        return projection_vectors(g, elements)

    estimates = estimate(
        n,
        integrand,
        samples=samples,
        seed=seed,
        chunk_size=chunk_size,
        threads=threads,
        label="projection of (e1⋯en)^n",
    )
    return ProjectionEstimate(n=n, basis=tuple(elements), estimates=tuple(estimates))


def cosine_similarity(left: list[float], right: list[float]) -> float:
    """|⟨a, b⟩| / (‖a‖‖b‖); proportional vectors of either sign score 1."""

    a = np.asarray(left, dtype=np.float64)
    b = np.asarray(right, dtype=np.float64)
    norms = float(np.linalg.norm(a) * np.linalg.norm(b))
    if norms == 0.0:
        return 0.0
    return abs(float(a @ b)) / norms


def projection_alignment(projection: ProjectionEstimate, pstar: PStarVector) -> float:
    if projection.basis != pstar.basis:
        raise ValidationError("Projection and P* are expressed over different bases.")
    return cosine_similarity(projection.real_vector(), pstar.as_floats())


@dataclass(frozen=True, slots=True)
class RatioReport:
    n: int
    perm_power: MCEstimate
    entry_product: MCEstimate
    mc_ratio: float
    mc_sigma: float
    exact_ratio: Fraction

    @property
    def deviation(self) -> float:
        return abs(self.mc_ratio - float(self.exact_ratio))

    @property
    def agrees(self) -> bool:
        return self.deviation <= 3.0 * self.mc_sigma

    def as_dict(self) -> dict[str, object]:
        return {
            "n": self.n,
            "mc_ratio": self.mc_ratio,
            "mc_sigma": self.mc_sigma,
            "exact_ratio": str(self.exact_ratio),
            "agrees": self.agrees,
            "perm_power": self.perm_power.as_dict(),
            "entry_product": self.entry_product.as_dict(),
        }


def exact_coefficient_ratio(pstar: PStarVector) -> Fraction:
    """coeff[(e₁⋯e_n)ⁿ] / coeff[(e₁ⁿ)⋯(e_nⁿ)] of P*."""

    return pstar.coefficient(power_monomial(pstar.n)) / pstar.coefficient(
        diagonal_monomial(pstar.n)
    )


def ratio_consistency(
    n: int, *, samples: int, seed: int, chunk_size: int, threads: int = 1
) -> RatioReport:
    """Compare ∫perm(g)ⁿ / ∫Πgⁱⱼ with the same ratio read off P*.

    Both estimates share the same samples, so the first-order error terms are
    added linearly, which bounds the error for any correlation between them.
    """

    exact = exact_coefficient_ratio(Pstar_coefficients(n))
    perm = mc_perm_power(n, samples=samples, seed=seed, chunk_size=chunk_size, threads=threads)
    entry = mc_entry_product(
        n, samples=samples, seed=seed, chunk_size=chunk_size, threads=threads
    )
    numerator, denominator = perm.mean.real, entry.mean.real
    if denominator == 0.0:
        raise ValidationError("The product-of-entries estimate is exactly zero.")
    ratio = numerator / denominator
    sigma = abs(perm.stderr_re / denominator) + abs(numerator * entry.stderr_re / denominator**2)
    logger.info("MC ratio %.4f ± %.4f against exact %s", ratio, sigma, exact)
    return RatioReport(
        n=n,
        perm_power=perm,
        entry_product=entry,
        mc_ratio=ratio,
        mc_sigma=sigma,
        exact_ratio=exact,
    )


__all__ = [
    "ProjectionEstimate",
    "RatioReport",
    "cosine_similarity",
    "exact_coefficient_ratio",
    "mc_entry_product",
    "mc_perm_power",
    "mc_projection_power",
    "projection_alignment",
    "projection_vectors",
    "ratio_consistency",
]
