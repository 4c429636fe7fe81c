"""Chunked, reproducible Monte-Carlo averages over SU(n).

Samples are split into chunks of ``chunk_size``; chunk ``c`` draws from its own
stream seeded by ``SeedSequence(seed, spawn_key=(c,))``. Each chunk reports its
count, mean and sum of squared deviations, and chunks are merged in chunk order
with the pairwise update, so the result does not depend on the worker count.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
from joblib import Parallel, delayed
from numpy.typing import NDArray

from ..errors import ValidationError
from ..logging import Stopwatch
from .haar import ComplexArray, haar_su_batch

logger = logging.getLogger(__name__)

Integrand = Callable[[ComplexArray], NDArray[np.complex128]]
"""Maps a stack of samples (m, n, n) to values of shape (m, k)."""


@dataclass(frozen=True, slots=True)
class MCEstimate:
    mean: complex
    stderr_re: float
    stderr_im: float
    samples: int
    seed: int
    chunk_size: int

    @property
    def stderr(self) -> float:
        return math.hypot(self.stderr_re, self.stderr_im)

    def within(self, target: complex, sigmas: float = 3.0, atol: float = 1e-12) -> bool:
        """True when both parts lie within ``sigmas`` standard errors of ``target``.

        ``atol`` absorbs rounding noise in parts that vanish identically.
        """

        delta = self.mean - target
        return abs(delta.real) <= sigmas * self.stderr_re + atol and abs(
            delta.imag
        ) <= sigmas * self.stderr_im + atol

    def as_dict(self) -> dict[str, object]:
        return {
            "mean_re": self.mean.real,
            "mean_im": self.mean.imag,
            "stderr": self.stderr,
            "stderr_re": self.stderr_re,
            "stderr_im": self.stderr_im,
            "samples": self.samples,
            "seed": self.seed,
            "chunk_size": self.chunk_size,
        }


@dataclass(slots=True)
class _Moments:
    count: int
    mean: NDArray[np.complex128]
    m2_re: NDArray[np.float64]
    m2_im: NDArray[np.float64]

    def merge(self, other: _Moments) -> _Moments:
        if self.count == 0:
            return other
        total = self.count + other.count
        delta = other.mean - self.mean
        weight = self.count * other.count / total
        return _Moments(
            count=total,
            mean=self.mean + delta * (other.count / total),
            m2_re=self.m2_re + other.m2_re + delta.real**2 * weight,
            m2_im=self.m2_im + other.m2_im + delta.imag**2 * weight,
        )


def chunk_rng(seed: int, chunk: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(chunk,)))


def chunk_sizes(samples: int, chunk_size: int) -> list[int]:
    full, rest = divmod(samples, chunk_size)
    return [chunk_size] * full + ([rest] if rest else [])


def _chunk_moments(
    n: int, seed: int, chunk: int, size: int, integrand: Integrand
) -> _Moments:
    samples = haar_su_batch(n, size, chunk_rng(seed, chunk))
    values = np.asarray(integrand(samples), dtype=np.complex128)
    mean = values.mean(axis=0)
    deviations = values - mean
    return _Moments(
        count=size,
        mean=mean,
        m2_re=np.sum(deviations.real**2, axis=0),
        m2_im=np.sum(deviations.imag**2, axis=0),
    )


def estimate(
    n: int,
    integrand: Integrand,
    *,
    samples: int,
    seed: int,
    chunk_size: int,
    threads: int = 1,
    label: str = "integrand",
) -> list[MCEstimate]:
    """One MCEstimate per output column of ``integrand``."""

    if samples < 1:
        raise ValidationError("samples must be at least 1.")
    if chunk_size < 1:
        raise ValidationError("chunk_size must be at least 1.")
    clock = Stopwatch()
    sizes = chunk_sizes(samples, chunk_size)
    tasks = (
        delayed(_chunk_moments)(n, seed, chunk, size, integrand)
        for chunk, size in enumerate(sizes)
    )
    if threads > 1:
        parts = Parallel(n_jobs=threads, backend="threading")(tasks)
    else:
        parts = [function(*args, **kwargs) for function, args, kwargs in tasks]
    merged = parts[0]
    for part in parts[1:]:
        merged = merged.merge(part)

    count = merged.count
    if count > 1:
        stderr_re = np.sqrt(merged.m2_re / (count - 1) / count)
        stderr_im = np.sqrt(merged.m2_im / (count - 1) / count)
    else:
        stderr_re = np.zeros_like(merged.m2_re)
        stderr_im = np.zeros_like(merged.m2_im)
    logger.info(
        "Estimated %s on SU(%d): %d samples in %d chunks, %.2fs",
        label,
        n,
        samples,
        len(sizes),
        clock.seconds,
    )
    return [
        MCEstimate(
            mean=complex(merged.mean[k]),
            stderr_re=float(stderr_re[k]),
            stderr_im=float(stderr_im[k]),
            samples=samples,
            seed=seed,
            chunk_size=chunk_size,
        )
        for k in range(merged.mean.shape[0])
    ]


__all__ = ["Integrand", "MCEstimate", "chunk_rng", "chunk_sizes", "estimate"]
