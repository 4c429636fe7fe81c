from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache
from os import getenv
from pathlib import Path
from typing import Final

from dotenv import load_dotenv

DEFAULT_CACHE_DIR: Final[str] = "./data/cache"
DEFAULT_CACHE_ENABLED: Final[bool] = True
DEFAULT_THREADS: Final[int] = 1
DEFAULT_SEED: Final[int] = 20140917
DEFAULT_SAMPLES: Final[int] = 100_000
DEFAULT_CHUNK_SIZE: Final[int] = 10_000
DEFAULT_LATIN_LIMIT: Final[int] = 5
DEFAULT_BASIS_CAP: Final[int] = 200_000
DEFAULT_WEIGHT_ZERO_CAP: Final[int] = 200
DEFAULT_DENSE_CAP: Final[int] = 2_000
DEFAULT_PROJECTION_CAP: Final[int] = 2

# Limits no flag can lift.
LATIN_HARD_LIMIT: Final[int] = 6
PERMANENT_HARD_LIMIT: Final[int] = 20
INVARIANT_HARD_LIMIT: Final[int] = 5

CACHE_FILENAME: Final[str] = "results.db"


load_dotenv()


class ConfigurationError(RuntimeError):
    """Raised when configuration values are missing or invalid."""


def _bool(name: str, default: bool) -> bool:
    raw = getenv(name)
    if raw is None:
        return default
    normalized = raw.strip().lower()
    if normalized in {"1", "true", "t", "yes", "y"}:
        return True
    if normalized in {"0", "false", "f", "no", "n"}:
        return False
    raise ConfigurationError(
        f"Environment variable '{name}' must be a boolean-like value (true/false)."
    )


def _int(name: str, default: int, *, minimum: int = 0) -> int:
    raw = getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        value = int(raw)
    except ValueError as exc:
        raise ConfigurationError(f"Environment variable '{name}' must be an integer.") from exc
    if value < minimum:
        raise ConfigurationError(f"Environment variable '{name}' must be >= {minimum}.")
    return value


def _path(name: str, default: str) -> Path:
    raw = getenv(name)
    if raw is None or not raw.strip():
        return Path(default)
    return Path(raw.strip()).expanduser()


@dataclass(frozen=True, slots=True)
class Settings:
    """Strongly typed configuration values backed by environment variables."""

    cache_dir: Path
    cache_enabled: bool
    threads: int
    seed: int
    samples: int
    chunk_size: int

    latin_limit: int
    basis_cap: int
    weight_zero_cap: int
    dense_cap: int
    projection_cap: int

    @property
    def cache_path(self) -> Path:
        return self.cache_dir / CACHE_FILENAME

    @classmethod
    def from_env(cls) -> Settings:
        latin_limit = _int("ATBENCH_LATIN_LIMIT", DEFAULT_LATIN_LIMIT, minimum=1)
        if latin_limit > LATIN_HARD_LIMIT:
            raise ConfigurationError(
                f"ATBENCH_LATIN_LIMIT may not exceed the hard limit {LATIN_HARD_LIMIT}."
            )
        return cls(
            cache_dir=_path("ATBENCH_CACHE_DIR", DEFAULT_CACHE_DIR),
            cache_enabled=_bool("ATBENCH_CACHE_ENABLED", DEFAULT_CACHE_ENABLED),
            threads=_int("ATBENCH_THREADS", DEFAULT_THREADS, minimum=1),
            seed=_int("ATBENCH_SEED", DEFAULT_SEED),
            samples=_int("ATBENCH_SAMPLES", DEFAULT_SAMPLES, minimum=1),
            chunk_size=_int("ATBENCH_CHUNK_SIZE", DEFAULT_CHUNK_SIZE, minimum=1),
            latin_limit=latin_limit,
            basis_cap=_int("ATBENCH_BASIS_CAP", DEFAULT_BASIS_CAP, minimum=1),
            weight_zero_cap=_int("ATBENCH_WEIGHT_ZERO_CAP", DEFAULT_WEIGHT_ZERO_CAP, minimum=1),
            dense_cap=_int("ATBENCH_DENSE_CAP", DEFAULT_DENSE_CAP, minimum=1),
            projection_cap=_int("ATBENCH_PROJECTION_CAP", DEFAULT_PROJECTION_CAP, minimum=1),
        )

    def with_overrides(self, **changes: object) -> Settings:
        """Return a copy with command-line overrides applied (None values are ignored)."""

        applied = {key: value for key, value in changes.items() if value is not None}
        return replace(self, **applied)  # type: ignore[arg-type]


@lru_cache(maxsize=1)
def load_settings() -> Settings:
    """Return cached settings constructed from the environment."""

    return Settings.from_env()


__all__ = [
    "INVARIANT_HARD_LIMIT",
    "LATIN_HARD_LIMIT",
    "PERMANENT_HARD_LIMIT",
    "ConfigurationError",
    "Settings",
    "load_settings",
]
