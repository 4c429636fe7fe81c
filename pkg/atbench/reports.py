"""Versioned result records and their canonical encodings.

Every record is a flat JSON object carrying ``schema_version`` and ``op``.
Exact rationals are written as strings such as ``"-1/6"``; encoded records use
sorted keys and compact separators so equal records encode to equal bytes.
"""

from __future__ import annotations

import csv
import io
import json
from collections.abc import Mapping
from fractions import Fraction
from typing import Any, Final

from .howe.hadamard import RankReport
from .latin.enumeration import SignedCensus
from .su.estimate import MCEstimate

SCHEMA_VERSION: Final[int] = 1

Record = dict[str, Any]

CENSUS_CSV_FIELDS: Final[tuple[str, ...]] = (
    "n",
    "total",
    "even",
    "odd",
    "at_difference",
    "col_even",
    "col_odd",
    "col_difference",
    "row_even",
    "row_odd",
    "row_difference",
)


def _default(value: object) -> object:
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    raise TypeError(f"Object of type {type(value).__name__} is not JSON serializable")


def canonical_json(value: object) -> str:
    return json.dumps(
        value, sort_keys=True, separators=(",", ":"), ensure_ascii=False, default=_default
    )


def encode(record: Mapping[str, Any]) -> bytes:
    return (canonical_json(record) + "\n").encode("utf-8")


def decode(payload: bytes) -> Record:
    value = json.loads(payload.decode("utf-8"))
    if not isinstance(value, dict):
        raise ValueError("A record must decode to a JSON object.")
    return value


def make_record(op: str, elapsed_ms: float, **fields: Any) -> Record:
    return {
        "schema_version": SCHEMA_VERSION,
        "op": op,
        "elapsed_ms": round(elapsed_ms, 3),
        **fields,
    }


def census_fields(result: SignedCensus) -> Record:
    return {
        "n": result.n,
        "total": result.total,
        "even": result.even,
        "odd": result.odd,
        "at_difference": result.at_difference,
        "col_even": result.col_even,
        "col_odd": result.col_odd,
        "col_difference": result.col_difference,
        "row_even": result.row_even,
        "row_odd": result.row_odd,
        "row_difference": result.row_difference,
    }


def census_csv(result: SignedCensus) -> bytes:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=CENSUS_CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    writer.writerow(census_fields(result))
    return buffer.getvalue().encode("utf-8")


def rank_fields(report: RankReport) -> Record:
    return report.as_dict()


def mc_fields(n: int, result: MCEstimate) -> Record:
    return {"n": n, **result.as_dict()}


__all__ = [
    "CENSUS_CSV_FIELDS",
    "SCHEMA_VERSION",
    "Record",
    "canonical_json",
    "census_csv",
    "census_fields",
    "decode",
    "encode",
    "make_record",
    "mc_fields",
    "rank_fields",
]
