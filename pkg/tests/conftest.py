"""Shared fixtures for the workbench tests."""

from __future__ import annotations

from pathlib import Path

import pytest

from atbench.config import Settings


@pytest.fixture
def settings(tmp_path: Path) -> Settings:
    """Small, fast settings with the cache under a temporary directory."""

    return Settings(
        cache_dir=tmp_path / "cache",
        cache_enabled=True,
        threads=1,
        seed=20140917,
        samples=20_000,
        chunk_size=5_000,
        latin_limit=5,
        basis_cap=200_000,
        weight_zero_cap=200,
        dense_cap=2_000,
        projection_cap=2,
    )
