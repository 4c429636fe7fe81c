"""Logging setup and timing helpers for the workbench.

Result records own stdout, so log lines always go to stderr.
"""

from __future__ import annotations

import logging
import os
import sys
import time
from dataclasses import dataclass, field
from typing import Final

LOG_LEVEL_ENV: Final[str] = "ATBENCH_LOG_LEVEL"

_DEFAULT_LEVEL: Final[int] = logging.INFO
_FORMAT: Final[str] = "%(asctime)s | %(levelname)s | %(name)s | %(message)s"
_DATEFMT: Final[str] = "%Y-%m-%d %H:%M:%S"

# Third-party loggers never go below WARNING.
_NOISY_LOGGERS: Final[tuple[str, ...]] = ("joblib", "aiosqlite", "asyncio")


def resolve_level(raw: str | None) -> int:
    """Level from a name (``debug``, ``WARN``) or a number; INFO when unreadable."""

    if raw is None or not raw.strip():
        return _DEFAULT_LEVEL
    text = raw.strip().upper()
    if text == "WARN":
        text = "WARNING"
    named = logging.getLevelNamesMapping().get(text)
    if named is not None:
        return named
    try:
        return int(text)
    except ValueError:
        return _DEFAULT_LEVEL


def setup_logging(level: int | None = None, *, verbosity: int = 0) -> int:
    """Configure root logging on stderr and return the effective level.

    ``verbosity`` shifts the level by one step per unit: positive values are
    chattier, negative values quieter.
    """

    if level is None:
        level = resolve_level(os.getenv(LOG_LEVEL_ENV))
    level = min(max(level - 10 * verbosity, logging.DEBUG), logging.CRITICAL)

    root = logging.getLogger()
    if not root.handlers:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(_FORMAT, datefmt=_DATEFMT))
        root.addHandler(handler)
    root.setLevel(level)
    for name in _NOISY_LOGGERS:
        logging.getLogger(name).setLevel(max(level, logging.WARNING))
    return level


@dataclass(slots=True)
class Stopwatch:
    """Wall-clock timer started on construction."""

    started: float = field(default_factory=time.perf_counter)

    @property
    def seconds(self) -> float:
        return time.perf_counter() - self.started

    @property
    def ms(self) -> float:
        return self.seconds * 1000.0


__all__ = ["LOG_LEVEL_ENV", "Stopwatch", "resolve_level", "setup_logging"]
