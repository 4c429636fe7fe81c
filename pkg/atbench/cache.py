"""Content-addressed cache of result records backed by SQLite."""

from __future__ import annotations

import asyncio
import hashlib
import logging
from collections.abc import Callable, Mapping
from pathlib import Path

import aiosqlite

from .config import Settings
from .db import repository, schema
from .db.repository import CacheStats
from .reports import SCHEMA_VERSION, canonical_json

logger = logging.getLogger(__name__)


def cache_key(op: str, params: Mapping[str, object], schema_version: int = SCHEMA_VERSION) -> str:
    """SHA-256 of the canonical JSON of (schema_version, op, params)."""

    material = canonical_json({"schema_version": schema_version, "op": op, "params": params})
    return hashlib.sha256(material.encode("utf-8")).hexdigest()


def payload_digest(payload: bytes) -> str:
    return hashlib.sha256(payload).hexdigest()


class ResultCache:
    """Stores encoded records keyed by operation and parameters.

    Any failure to create or open the database disables the cache for the
    rest of the run; computations then proceed uncached.
    """

    def __init__(self, db_path: Path | None, *, schema_version: int = SCHEMA_VERSION) -> None:
        self._db_path = db_path
        self._schema_version = schema_version
        self._ready = False
        self._disabled = db_path is None

    @classmethod
    def from_settings(cls, settings: Settings) -> ResultCache:
        return cls(settings.cache_path if settings.cache_enabled else None)

    @property
    def enabled(self) -> bool:
        return not self._disabled

    def _disable(self, reason: str, exc: BaseException) -> None:
        logger.warning("Result cache disabled (%s): %s", reason, exc)
        self._disabled = True

    async def _prepare(self) -> Path | None:
        if self._disabled or self._db_path is None:
            return None
        if not self._ready:
            try:
                await schema.ensure_schema(self._db_path)
            except (OSError, aiosqlite.Error) as exc:
                self._disable(f"cannot open {self._db_path}", exc)
                return None
            self._ready = True
        return self._db_path

    async def load(self, op: str, params: Mapping[str, object]) -> bytes | None:
        """Return the cached payload, or None on a miss or a corrupt entry."""

        db_path = await self._prepare()
        if db_path is None:
            return None
        key = cache_key(op, params, self._schema_version)
        try:
            async with repository.connect(db_path) as connection:
                record = await repository.fetch_record(connection, key)
                if record is None:
                    return None
                if payload_digest(record.payload) != record.digest:
                    logger.warning("Evicting corrupt cache entry for %s (%s)", op, key[:12])
                    await repository.delete_record(connection, key)
                    await connection.commit()
                    return None
        except (OSError, aiosqlite.Error) as exc:
            self._disable("read failed", exc)
            return None
        logger.debug("Cache hit for %s (%s)", op, key[:12])
        return record.payload

    async def store(self, op: str, params: Mapping[str, object], payload: bytes) -> None:
        db_path = await self._prepare()
        if db_path is None:
            return
        key = cache_key(op, params, self._schema_version)
        try:
            async with repository.connect(db_path) as connection:
                await repository.upsert_record(
                    connection,
                    key=key,
                    op=op,
                    schema_version=self._schema_version,
                    params=canonical_json(params),
                    payload=payload,
                    digest=payload_digest(payload),
                )
                await connection.commit()
        except (OSError, aiosqlite.Error) as exc:
            self._disable("write failed", exc)

    async def get_or_compute(
        self, op: str, params: Mapping[str, object], compute: Callable[[], bytes]
    ) -> bytes:
        cached = await self.load(op, params)
        if cached is not None:
            return cached
        payload = await asyncio.to_thread(compute)
        await self.store(op, params, payload)
        return payload

    async def stats(self) -> CacheStats | None:
        db_path = await self._prepare()
        if db_path is None:
            return None
        async with repository.connect(db_path) as connection:
            return await repository.get_cache_stats(connection, self._schema_version)

    async def clear(self) -> int:
        db_path = await self._prepare()
        if db_path is None:
            return 0
        async with repository.connect(db_path) as connection:
            removed = await repository.clear_records(connection)
            await connection.commit()
        return removed

    async def prune(self) -> int:
        """Drop entries written under an older (or newer) schema version."""

        db_path = await self._prepare()
        if db_path is None:
            return 0
        async with repository.connect(db_path) as connection:
            removed = await repository.prune_stale(connection, self._schema_version)
            await connection.commit()
        return removed


__all__ = ["ResultCache", "cache_key", "payload_digest"]
