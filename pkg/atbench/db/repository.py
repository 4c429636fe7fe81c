"""Asynchronous helpers for the ``records`` table."""

from __future__ import annotations

from collections.abc import AsyncIterator
from contextlib import asynccontextmanager
from dataclasses import dataclass
from pathlib import Path

import aiosqlite


@dataclass(slots=True)
class StoredRecord:
    key: str
    op: str
    schema_version: int
    params: str
    payload: bytes
    digest: str
    created_at: str


@dataclass(slots=True)
class CacheStats:
    """Counts of cached records, overall and by operation."""

    total_records: int
    stale_records: int
    total_bytes: int
    by_op: dict[str, int]


@asynccontextmanager
async def connect(db_path: Path) -> AsyncIterator[aiosqlite.Connection]:
    """Yield an aiosqlite connection with rows addressable by column name."""

    connection = await aiosqlite.connect(str(db_path))
    connection.row_factory = aiosqlite.Row
    try:
        yield connection
    finally:
        await connection.close()


async def upsert_record(
    connection: aiosqlite.Connection,
    *,
    key: str,
    op: str,
    schema_version: int,
    params: str,
    payload: bytes,
    digest: str,
) -> None:
    """Insert or replace the record stored under ``key``."""

    await connection.execute(
        """
        INSERT INTO records (key, op, schema_version, params, payload, digest)
        VALUES (?, ?, ?, ?, ?, ?)
        ON CONFLICT(key) DO UPDATE SET
            op = excluded.op,
            schema_version = excluded.schema_version,
            params = excluded.params,
            payload = excluded.payload,
            digest = excluded.digest,
            created_at = datetime('now')
        """,
        (key, op, schema_version, params, payload, digest),
    )


async def fetch_record(connection: aiosqlite.Connection, key: str) -> StoredRecord | None:
    """Return the record stored under ``key``, if any."""

    cursor = await connection.execute(
        """
        SELECT key, op, schema_version, params, payload, digest, created_at
          FROM records
         WHERE key = ?
        """,
        (key,),
    )
    row = await cursor.fetchone()
    await cursor.close()
    if row is None:
        return None
    return StoredRecord(
        key=str(row["key"]),
        op=str(row["op"]),
        schema_version=int(row["schema_version"]),
        params=str(row["params"]),
        payload=bytes(row["payload"]),
        digest=str(row["digest"]),
        created_at=str(row["created_at"]),
    )


async def delete_record(connection: aiosqlite.Connection, key: str) -> bool:
    cursor = await connection.execute("DELETE FROM records WHERE key = ?", (key,))
    deleted = cursor.rowcount > 0
    await cursor.close()
    return deleted


async def clear_records(connection: aiosqlite.Connection) -> int:
    """Delete every cached record and return how many were removed."""

    cursor = await connection.execute("DELETE FROM records")
    removed = cursor.rowcount
    await cursor.close()
    return int(removed)


async def prune_stale(connection: aiosqlite.Connection, schema_version: int) -> int:
    """Delete records written under another schema version."""

    cursor = await connection.execute(
        "DELETE FROM records WHERE schema_version != ?", (schema_version,)
    )
    removed = cursor.rowcount
    await cursor.close()
    return int(removed)


async def get_cache_stats(connection: aiosqlite.Connection, schema_version: int) -> CacheStats:
    """Return record counts and payload size."""

    cursor = await connection.execute(
        "SELECT COUNT(*) AS count, COALESCE(SUM(LENGTH(payload)), 0) AS size FROM records"
    )
    row = await cursor.fetchone()
    total_records = int(row["count"]) if row else 0
    total_bytes = int(row["size"]) if row else 0
    await cursor.close()

    cursor = await connection.execute(
        "SELECT COUNT(*) AS count FROM records WHERE schema_version != ?", (schema_version,)
    )
    row = await cursor.fetchone()
    stale_records = int(row["count"]) if row else 0
    await cursor.close()

    cursor = await connection.execute(
        "SELECT op, COUNT(*) AS count FROM records GROUP BY op ORDER BY op"
    )
    rows = await cursor.fetchall()
    await cursor.close()

    return CacheStats(
        total_records=total_records,
        stale_records=stale_records,
        total_bytes=total_bytes,
        by_op={str(r["op"]): int(r["count"]) for r in rows},
    )


__all__ = [
    "CacheStats",
    "StoredRecord",
    "clear_records",
    "connect",
    "delete_record",
    "fetch_record",
    "get_cache_stats",
    "prune_stale",
    "upsert_record",
]
