"""Table layout of the result cache database."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Final

import aiosqlite

# Layout of the ``records`` table itself; record payload versions live per row.
STORAGE_VERSION: Final[int] = 1

SCHEMA_STATEMENTS: tuple[str, ...] = (
    """
    CREATE TABLE IF NOT EXISTS records (
        key TEXT PRIMARY KEY,
        op TEXT NOT NULL,
        schema_version INTEGER NOT NULL,
        params TEXT NOT NULL,
        payload BLOB NOT NULL,
        digest TEXT NOT NULL,
        created_at TEXT NOT NULL DEFAULT (datetime('now'))
    );
    """.strip(),
    """
    CREATE INDEX IF NOT EXISTS records_op_version
        ON records (op, schema_version);
    """.strip(),
)


@dataclass(slots=True, frozen=True)
class SchemaStats:
    statements_executed: int
    previous_storage_version: int

    @property
    def created(self) -> bool:
        return self.previous_storage_version == 0


async def _storage_version(connection: aiosqlite.Connection) -> int:
    cursor = await connection.execute("PRAGMA user_version")
    row = await cursor.fetchone()
    await cursor.close()
    return int(row[0]) if row else 0


async def apply_schema(connection: aiosqlite.Connection) -> SchemaStats:
    """Create the cache table and index if missing and stamp the storage version.

    A database stamped with a newer storage version is left untouched.
    """

    previous = await _storage_version(connection)
    if previous > STORAGE_VERSION:
        raise aiosqlite.DatabaseError(
            f"Cache database uses storage version {previous}; this build reads {STORAGE_VERSION}."
        )
    for statement in SCHEMA_STATEMENTS:
        await connection.execute(statement)
    await connection.execute(f"PRAGMA user_version = {STORAGE_VERSION}")
    return SchemaStats(
        statements_executed=len(SCHEMA_STATEMENTS), previous_storage_version=previous
    )


async def ensure_schema(db_path: Path) -> SchemaStats:
    """Create the cache directory and database file on first use."""

    db_path.parent.mkdir(parents=True, exist_ok=True)
    async with aiosqlite.connect(str(db_path)) as connection:
        stats = await apply_schema(connection)
        await connection.commit()
    return stats


__all__ = ["SCHEMA_STATEMENTS", "STORAGE_VERSION", "SchemaStats", "apply_schema", "ensure_schema"]
