"""SQLite persistence for cached result records."""

from . import repository, schema

__all__ = ["repository", "schema"]
