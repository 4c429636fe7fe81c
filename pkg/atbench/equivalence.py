"""End-to-end check of the six equivalent statements for one order n.

(a) even and odd Latin squares differ in number; (b) P is nonzero on
(e₁⋯e_n)ⁿ; (c) ∫perm(g)ⁿ ≠ 0 over SU(n); (d) ⟨permⁿ, detⁿ⟩ ≠ 0;
(e) ∫Π gⁱⱼ ≠ 0 over SU(n); (f) ⟨Π gⁱⱼ, detⁿ⟩ ≠ 0. Leg (h) applies h_{n,n} to P*
itself: the invariant lies outside the kernel exactly when (a) holds.

The exact legs are computed for n ≤ 4. The Monte-Carlo legs gate the verdict
for n ≤ 2, are reported without gating for larger even n, and are skipped for
odd n ≥ 3, where every exact leg vanishes and the equivalence is vacuous.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .config import Settings
from .errors import ResourceLimitError, ValidationError
from .exact.poly import all_entries_monomial, apolar_pair, det_poly, perm_poly, poly_pow
from .howe.invariant import P_on_power, kernel_check
from .latin.enumeration import census
from .latin.tilings import det_power_coefficient
from .su.estimate import MCEstimate
from .su.integrals import mc_entry_product, mc_perm_power
from .types import LegMethod, Verdict

logger = logging.getLogger(__name__)

EXACT_LIMIT = 4
GATED_MC_LIMIT = 2


@dataclass(frozen=True, slots=True)
class Leg:
    label: str
    statement: str
    method: LegMethod
    value: str | None
    nonzero: bool | None
    stderr: float | None = None

    def as_dict(self) -> dict[str, Any]:
        return {
            "label": self.label,
            "statement": self.statement,
            "method": self.method,
            "value": self.value,
            "nonzero": self.nonzero,
            "stderr": self.stderr,
        }


@dataclass(frozen=True, slots=True)
class Check:
    name: str
    holds: bool


@dataclass(frozen=True, slots=True)
class EquivalenceReport:
    n: int
    legs: tuple[Leg, ...]
    checks: tuple[Check, ...]
    verdict: Verdict
    note: str | None = None

    def leg(self, label: str) -> Leg:
        for leg in self.legs:
            if leg.label == label:
                return leg
        raise KeyError(label)

    @property
    def failed_checks(self) -> list[str]:
        return [check.name for check in self.checks if not check.holds]

    def as_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "verdict": self.verdict,
            "note": self.note,
            "legs": [leg.as_dict() for leg in self.legs],
            "checks": {check.name: check.holds for check in self.checks},
        }


def _exact_leg(label: str, statement: str, value: int | Fraction) -> Leg:
    return Leg(label, statement, "exact", str(value), value != 0)


def _mc_nonzero(result: MCEstimate) -> bool:
    if result.stderr_re == 0.0:
        return result.mean.real != 0.0
    return abs(result.mean.real) > 3.0 * result.stderr_re


def _mc_leg(label: str, statement: str, result: MCEstimate, *, gated: bool) -> Leg:
    return Leg(
        label,
        statement,
        "monte-carlo" if gated else "monte-carlo-ungated",
        repr(result.mean.real),
        _mc_nonzero(result) if gated else None,
        result.stderr_re,
    )


def _sign(value: float | int | Fraction) -> int:
    return (value > 0) - (value < 0)


def build_equivalence_report(
    n: int, settings: Settings, *, allow_large: bool = False
) -> EquivalenceReport:
    if n < 1:
        raise ValidationError("n must be at least 1.")
    if n > EXACT_LIMIT:
        raise ResourceLimitError(f"The exact legs are limited to n ≤ {EXACT_LIMIT} (got {n}).")
    threads = settings.threads
    logger.info("Equivalence chain for n=%d", n)

    signed = census(n, limit=settings.latin_limit, allow_large=allow_large, threads=threads)
    p_value = P_on_power(n, allow_odd=True)
    det_power = poly_pow(det_poly(n), n)
    perm_det = apolar_pair(poly_pow(perm_poly(n), n), det_power)
    entries_det = apolar_pair(all_entries_monomial(n), det_power)
    tilings = det_power_coefficient(
        n, limit=settings.latin_limit, allow_large=allow_large, threads=threads
    )
    at_value = signed.at_difference

    legs = [
        _exact_leg("a", "even and odd Latin squares differ in number", at_value),
        _exact_leg("b", "P((e1⋯en)^n) is nonzero", p_value),
        _exact_leg("d", "<perm^n, det^n> is nonzero", perm_det),
        _exact_leg("f", "<prod g, det^n> is nonzero", entries_det),
    ]
    checks = [
        Check("|a| = |b|", abs(at_value) == abs(p_value)),
        Check("|a| = |tilings|", abs(at_value) == abs(tilings)),
        Check("f = tilings", entries_det == tilings),
        Check("d vanishes with a", (perm_det != 0) == (at_value != 0)),
        Check("f vanishes with a", (entries_det != 0) == (at_value != 0)),
        Check("b vanishes with a", (p_value != 0) == (at_value != 0)),
    ]

    odd_vacuous = n % 2 == 1 and n >= 3
    note = None
    if odd_vacuous:
        note = "odd n: every difference vanishes, so the equivalence is vacuous"
        legs += [
            Leg("h", "h_{n,n}(P*) is nonzero", "skipped", None, None),
            Leg("c", "integral of perm(g)^n is nonzero", "skipped", None, None),
            Leg("e", "integral of prod g is nonzero", "skipped", None, None),
        ]
    else:
        image = kernel_check(n)
        # The witness is the number of nonzero terms of h_{n,n}(P*).
        legs.append(_exact_leg("h", "h_{n,n}(P*) is nonzero", image.support))
        checks.append(Check("h vanishes with a", (not image.in_kernel) == (at_value != 0)))
        gated = n <= GATED_MC_LIMIT
        common = {
            "samples": settings.samples,
            "seed": settings.seed,
            "chunk_size": settings.chunk_size,
            "threads": threads,
        }
        perm_integral = mc_perm_power(n, **common)
        entry_integral = mc_entry_product(n, **common)
        legs += [
            _mc_leg("c", "integral of perm(g)^n is nonzero", perm_integral, gated=gated),
            _mc_leg("e", "integral of prod g is nonzero", entry_integral, gated=gated),
        ]
        if gated:
            checks += [
                Check("c vanishes with a", _mc_nonzero(perm_integral) == (at_value != 0)),
                Check("e vanishes with a", _mc_nonzero(entry_integral) == (at_value != 0)),
                Check(
                    "sign e = sign f",
                    _sign(entry_integral.mean.real) == _sign(entries_det),
                ),
            ]

    legs.sort(key=lambda leg: leg.label)
    verdict: Verdict
    if not all(check.holds for check in checks):
        verdict = "inconsistent"
    elif odd_vacuous:
        verdict = "vacuous"
    else:
        verdict = "consistent"
    report = EquivalenceReport(
        n=n, legs=tuple(legs), checks=tuple(checks), verdict=verdict, note=note
    )
    logger.info("Equivalence chain for n=%d: %s", n, verdict)
    return report


__all__ = ["Check", "EquivalenceReport", "Leg", "build_equivalence_report"]
