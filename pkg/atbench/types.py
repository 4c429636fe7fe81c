"""Shared typing primitives for the workbench."""

from __future__ import annotations

from fractions import Fraction
from typing import Literal, TypeAlias

OutputFormat = Literal["json", "csv"]
VariableKind = Literal["plain", "matrix"]
LegMethod = Literal["exact", "monte-carlo", "monte-carlo-ungated", "skipped"]
Verdict = Literal["consistent", "inconsistent", "vacuous"]
IntegrandName = Literal["perm-power", "entry-product"]

Scalar: TypeAlias = int | Fraction | complex

__all__ = ["IntegrandName", "LegMethod", "OutputFormat", "Scalar", "VariableKind", "Verdict"]
