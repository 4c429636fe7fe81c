"""Permutations of [n] with parity.

Images are stored 0-based: ``Permutation((1, 0))`` is the transposition of
two points. ``from_one_based`` accepts the 1-based notation used in reports.
"""

from __future__ import annotations

from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from itertools import permutations

from ..errors import ValidationError


class PermutationError(ValidationError):
    """Raised when a sequence of images is not a bijection of [n]."""


@dataclass(frozen=True, slots=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.images)
        if sorted(self.images) != list(range(n)):
            raise PermutationError(f"Images {self.images!r} are not a bijection of [{n}].")

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(n)))

    @classmethod
    def from_one_based(cls, images: Sequence[int]) -> Permutation:
        return cls(tuple(value - 1 for value in images))

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> Permutation:
        images = list(range(n))
        images[i], images[j] = images[j], images[i]
        return cls(tuple(images))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def compose(self, other: Permutation) -> Permutation:
        """Return ``self ∘ other``, i.e. ``i ↦ self(other(i))``."""

        if other.n != self.n:
            raise PermutationError("Cannot compose permutations of different sizes.")
        return Permutation(tuple(self.images[j] for j in other.images))

    def inverse(self) -> Permutation:
        inverse = [0] * self.n
        for i, image in enumerate(self.images):
            inverse[image] = i
        return Permutation(tuple(inverse))

    def one_based(self) -> tuple[int, ...]:
        return tuple(value + 1 for value in self.images)

    def cycle_count(self) -> int:
        seen = [False] * self.n
        cycles = 0
        for start in range(self.n):
            if seen[start]:
                continue
            cycles += 1
            point = start
            while not seen[point]:
                seen[point] = True
                point = self.images[point]
        return cycles

    def sign(self) -> int:
        return sign(self)


def sign(p: Permutation) -> int:
    """Return +1 for even and -1 for odd permutations."""

    return -1 if (p.n - p.cycle_count()) % 2 else 1


def sign_of_images(images: Sequence[int]) -> int:
    """Validate raw images and return their sign."""

    return sign(Permutation(tuple(images)))


def all_permutations(n: int) -> Iterator[Permutation]:
    """Yield every permutation of [n] in lexicographic order of images."""

    for images in permutations(range(n)):
        yield Permutation(images)


__all__ = [
    "Permutation",
    "PermutationError",
    "all_permutations",
    "sign",
    "sign_of_images",
]
