"""Command-line entry point for the workbench.

Machine-readable records go to stdout; the human summary is logged to stderr.
"""

from __future__ import annotations

import argparse
import asyncio
import logging
import sys
from collections.abc import Callable, Sequence
from pathlib import Path
from typing import Any, get_args

from .cache import ResultCache
from .config import ConfigurationError, Settings, load_settings
from .equivalence import EXACT_LIMIT, build_equivalence_report
from .errors import (
    EXIT_INTERNAL,
    EXIT_OK,
    EXIT_VALIDATION,
    InconsistencyError,
    ResourceLimitError,
    ValidationError,
    WorkbenchError,
)
from .exact.poly import all_entries_monomial, apolar_pair, det_poly, perm_poly, poly_pow
from .howe.basis import basis_size, wreath_dimension
from .howe.hadamard import (
    ExactLinearMap,
    check_weight_zero_size,
    hdn_matrix,
    rank_report,
    weight_zero_matrix,
)
from .howe.invariant import Pstar_coefficients
from .latin.enumeration import NAIVE_ORACLE_LIMIT, census, check_order, naive_census
from .latin.tilings import det_power_coefficient
from .logging import Stopwatch, setup_logging
from .reports import (
    census_csv,
    census_fields,
    decode,
    encode,
    make_record,
    mc_fields,
    rank_fields,
)
from .su.integrals import (
    mc_entry_product,
    mc_perm_power,
    mc_projection_power,
    projection_alignment,
    ratio_consistency,
)
from .types import IntegrandName, OutputFormat

logger = logging.getLogger(__name__)


def _latin_census(args: argparse.Namespace, settings: Settings) -> bytes:
    clock = Stopwatch()
    result = census(
        args.n,
        limit=settings.latin_limit,
        allow_large=args.allow_large,
        threads=settings.threads,
        symmetry=args.symmetry,
    )
    if args.format == "csv":
        return census_csv(result)
    record = make_record(
        "latin-census",
        clock.ms,
        symmetry=args.symmetry,
        shard_count=result.shards,
        **census_fields(result),
    )
    return encode(record)


def _at_check(args: argparse.Namespace, settings: Settings) -> bytes:
    clock = Stopwatch()
    kwargs: dict[str, Any] = {
        "limit": settings.latin_limit,
        "allow_large": args.allow_large,
        "threads": settings.threads,
    }
    result = census(args.n, **kwargs)
    tilings = det_power_coefficient(args.n, **kwargs)
    naive_agrees = None
    if args.n <= NAIVE_ORACLE_LIMIT:
        naive_agrees = naive_census(args.n) == result
    record = make_record(
        "at-check",
        clock.ms,
        n=args.n,
        total=result.total,
        at_difference=result.at_difference,
        col_difference=result.col_difference,
        row_difference=result.row_difference,
        huang_rota=abs(result.at_difference) == abs(result.col_difference),
        det_power_coefficient=tilings,
        naive_oracle_agrees=naive_agrees,
    )
    return encode(record)


def _write_matrix(path: Path, linear_map: ExactLinearMap) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(linear_map.to_text(), encoding="utf-8")
    logger.info("Wrote %d nonzeros to %s", len(linear_map.entries), path)


def _howe_rank(args: argparse.Namespace, settings: Settings) -> bytes:
    clock = Stopwatch()
    if args.weight_zero:
        linear_map = weight_zero_matrix(args.d, args.n, threads=settings.threads)
        extra: dict[str, Any] = {
            "dim_v": args.d * args.n,
            "wreath_dimension": wreath_dimension(args.d, args.n),
        }
    else:
        linear_map = hdn_matrix(
            args.dim_v, args.d, args.n, cap=settings.basis_cap, threads=settings.threads
        )
        extra = {"dim_v": args.dim_v}
    report = rank_report(linear_map, dense_cap=settings.dense_cap)
    if args.matrix_out is not None:
        _write_matrix(args.matrix_out, linear_map)
    record = make_record(
        "howe-rank",
        clock.ms,
        d=args.d,
        n=args.n,
        weight_zero=args.weight_zero,
        **extra,
        **rank_fields(report),
    )
    return encode(record)


def _pair(args: argparse.Namespace, _settings: Settings) -> bytes:
    clock = Stopwatch()
    det_power = poly_pow(det_poly(args.n), args.n)
    perm_det = apolar_pair(poly_pow(perm_poly(args.n), args.n), det_power)
    entries_det = apolar_pair(all_entries_monomial(args.n), det_power)
    record = make_record(
        "pair",
        clock.ms,
        n=args.n,
        det_power_terms=len(det_power),
        perm_det=perm_det,
        entries_det=entries_det,
    )
    return encode(record)


def _integrate(args: argparse.Namespace, settings: Settings) -> bytes:
    clock = Stopwatch()
    estimator = mc_perm_power if args.integrand == "perm-power" else mc_entry_product
    result = estimator(
        args.n,
        samples=settings.samples,
        seed=settings.seed,
        chunk_size=settings.chunk_size,
        threads=settings.threads,
    )
    record = make_record(
        "integrate", clock.ms, integrand=args.integrand, **mc_fields(args.n, result)
    )
    return encode(record)


def _project(args: argparse.Namespace, settings: Settings) -> bytes:
    clock = Stopwatch()
    common: dict[str, int] = {
        "samples": settings.samples,
        "seed": settings.seed,
        "chunk_size": settings.chunk_size,
        "threads": settings.threads,
    }
    projection = mc_projection_power(args.n, cap=settings.projection_cap, **common)
    pstar = Pstar_coefficients(args.n)
    ratio = ratio_consistency(args.n, **common)
    coefficients = [
        {"monomial": element.label("e"), "pstar": value, **entry.as_dict()}
        for element, value, entry in zip(
            projection.basis, pstar.coefficients, projection.estimates, strict=True
        )
    ]
    record = make_record(
        "project",
        clock.ms,
        n=args.n,
        samples=settings.samples,
        seed=settings.seed,
        chunk_size=settings.chunk_size,
        coefficients=coefficients,
        cosine_similarity=projection_alignment(projection, pstar),
        ratio=ratio.as_dict(),
    )
    return encode(record)


def _equiv(args: argparse.Namespace, settings: Settings) -> bytes:
    clock = Stopwatch()
    report = build_equivalence_report(args.n, settings, allow_large=args.allow_large)
    record = make_record(
        "equiv",
        clock.ms,
        samples=settings.samples,
        seed=settings.seed,
        chunk_size=settings.chunk_size,
        **report.as_dict(),
    )
    return encode(record)


def _precheck(args: argparse.Namespace, settings: Settings) -> None:
    """Refuse oversized requests before the cache is consulted."""

    command = args.command
    if command in {"latin-census", "at-check"}:
        check_order(args.n, limit=settings.latin_limit, allow_large=args.allow_large)
    elif command == "howe-rank":
        if args.weight_zero:
            check_weight_zero_size(
                args.d,
                args.n,
                cap=settings.weight_zero_cap,
                allow_large=args.allow_large,
                hard_cap=settings.dense_cap,
            )
        else:
            if args.dim_v is None:
                raise ValidationError("howe-rank needs --dim-v unless --weight-zero is given.")
            size = max(
                basis_size(args.dim_v, args.d, args.n), basis_size(args.dim_v, args.n, args.d)
            )
            if size > settings.basis_cap:
                raise ResourceLimitError(
                    f"h_{args.d},{args.n} on dim V={args.dim_v} needs a basis of {size} "
                    f"monomials (cap {settings.basis_cap})."
                )
    elif command in {"pair", "equiv"}:
        if args.n < 1:
            raise ValidationError("n must be at least 1.")
        if args.n > EXACT_LIMIT:
            raise ResourceLimitError(f"Exact pairings are limited to n ≤ {EXACT_LIMIT}.")
    elif command == "project" and args.n > settings.projection_cap:
        raise ResourceLimitError(
            f"Projection is limited to n ≤ {settings.projection_cap} (got {args.n})."
        )


def _cache_params(args: argparse.Namespace, settings: Settings) -> dict[str, Any]:
    command = args.command
    params: dict[str, Any] = {"n": args.n}
    if command == "latin-census":
        params.update(symmetry=args.symmetry, format=args.format)
    elif command == "howe-rank":
        params.update(d=args.d, dim_v=args.dim_v, weight_zero=args.weight_zero)
    elif command == "integrate":
        params["integrand"] = args.integrand
    if command in {"integrate", "project", "equiv"}:
        params.update(samples=settings.samples, seed=settings.seed, chunk_size=settings.chunk_size)
    return params


COMMANDS: dict[str, Callable[[argparse.Namespace, Settings], bytes]] = {
    "latin-census": _latin_census,
    "at-check": _at_check,
    "howe-rank": _howe_rank,
    "pair": _pair,
    "integrate": _integrate,
    "project": _project,
    "equiv": _equiv,
}


async def _run_cache_command(args: argparse.Namespace, cache: ResultCache) -> bytes:
    clock = Stopwatch()
    if args.action == "stats":
        stats = await cache.stats()
        fields: dict[str, Any] = {"enabled": cache.enabled}
        if stats is not None:
            fields.update(
                total_records=stats.total_records,
                stale_records=stats.stale_records,
                total_bytes=stats.total_bytes,
                by_op=stats.by_op,
            )
    elif args.action == "clear":
        fields = {"enabled": cache.enabled, "removed": await cache.clear()}
    else:
        fields = {"enabled": cache.enabled, "removed": await cache.prune()}
    return encode(make_record(f"cache-{args.action}", clock.ms, **fields))


async def run_command(args: argparse.Namespace, settings: Settings) -> bytes:
    """Run one subcommand and return its encoded record."""

    cache = ResultCache.from_settings(settings)
    if args.command == "cache":
        return await _run_cache_command(args, cache)

    _precheck(args, settings)
    compute = COMMANDS[args.command]
    # --matrix-out needs the matrix itself, which the cache does not hold.
    if args.command == "howe-rank" and args.matrix_out is not None:
        return await asyncio.to_thread(compute, args, settings)
    return await cache.get_or_compute(
        args.command, _cache_params(args, settings), lambda: compute(args, settings)
    )


def _summarize(command: str, payload: bytes) -> None:
    if command == "latin-census" and not payload.startswith(b"{"):
        logger.info("latin-census: %s", payload.decode("utf-8").splitlines()[-1])
        return
    record = decode(payload)
    keys = {
        "latin-census": ("n", "total", "at_difference", "col_difference"),
        "at-check": ("n", "at_difference", "col_difference", "huang_rota", "det_power_coefficient"),
        "howe-rank": ("d", "n", "rank", "rows", "cols", "isomorphism"),
        "pair": ("n", "perm_det", "entries_det"),
        "integrate": ("integrand", "n", "mean_re", "stderr"),
        "project": ("n", "cosine_similarity"),
        "equiv": ("n", "verdict"),
    }.get(command, tuple(key for key in record if key not in {"schema_version", "op"}))
    summary = ", ".join(f"{key}={record.get(key)}" for key in keys)
    logger.info("%s: %s", command, summary)


def _add_run_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--threads", type=int, help="Worker count for sharded work")
    parser.add_argument("--cache-dir", type=Path, help="Directory holding the result cache")
    parser.add_argument("--no-cache", action="store_true", help="Bypass the result cache")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="More log output")
    parser.add_argument("-q", "--quiet", action="count", default=0, help="Less log output")


def _add_mc_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--samples", type=int, help="Number of Haar samples")
    parser.add_argument("--seed", type=int, help="Monte-Carlo seed")
    parser.add_argument("--chunk-size", type=int, help="Samples per RNG chunk")


def _parse_args(argv: Sequence[str] | None = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        prog="atbench",
        description="Alon–Tarsi, Hadamard–Howe and SU(n) integral equivalence workbench",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    latin = commands.add_parser("latin-census", help="Signed census of Latin squares")
    latin.add_argument("n", type=int)
    latin.add_argument("--allow-large", action="store_true", help="Lift the configured order limit")
    latin.add_argument("--symmetry", action="store_true", help="Fix the first row and lift")
    latin.add_argument("--format", choices=get_args(OutputFormat), default="json")

    at_check = commands.add_parser("at-check", help="Latin differences and tiling coefficient")
    at_check.add_argument("n", type=int)
    at_check.add_argument("--allow-large", action="store_true")

    howe = commands.add_parser("howe-rank", help="Rank of the Hadamard–Howe map")
    howe.add_argument("--dim-v", type=int, help="Dimension of V (ignored with --weight-zero)")
    howe.add_argument("--d", type=int, required=True)
    howe.add_argument("--n", type=int, required=True)
    howe.add_argument("--weight-zero", action="store_true", help="Restrict to weight zero")
    howe.add_argument("--allow-large", action="store_true")
    howe.add_argument("--matrix-out", type=Path, help="Write the sparse matrix to this file")

    pair = commands.add_parser("pair", help="Apolar pairings with det^n")
    pair.add_argument("n", type=int)

    integrate = commands.add_parser("integrate", help="Monte-Carlo SU(n) integral")
    integrate.add_argument("n", type=int)
    integrate.add_argument(
        "--integrand", choices=get_args(IntegrandName), default="perm-power"
    )
    _add_mc_options(integrate)

    project = commands.add_parser("project", help="Average of g·(e1⋯en)^n against P*")
    project.add_argument("n", type=int)
    _add_mc_options(project)

    equiv = commands.add_parser("equiv", help="Run the full equivalence chain")
    equiv.add_argument("n", type=int)
    equiv.add_argument("--allow-large", action="store_true")
    _add_mc_options(equiv)

    cache = commands.add_parser("cache", help="Inspect or clean the result cache")
    cache.add_argument("action", choices=("stats", "clear", "prune"))

    for sub in (latin, at_check, howe, pair, integrate, project, equiv, cache):
        _add_run_options(sub)
    return parser.parse_args(argv)


def _settings_for(args: argparse.Namespace) -> Settings:
    settings = load_settings().with_overrides(
        threads=args.threads,
        cache_dir=args.cache_dir,
        samples=getattr(args, "samples", None),
        seed=getattr(args, "seed", None),
        chunk_size=getattr(args, "chunk_size", None),
    )
    if args.no_cache:
        settings = settings.with_overrides(cache_enabled=False)
    for name in ("threads", "samples", "chunk_size"):
        if getattr(settings, name) < 1:
            raise ValidationError(f"--{name.replace('_', '-')} must be at least 1.")
    return settings


def main(argv: Sequence[str] | None = None) -> int:
    """Parse arguments, run the command and return the process exit code."""

    args = _parse_args(argv)
    setup_logging(verbosity=args.verbose - args.quiet)
    try:
        settings = _settings_for(args)
        payload = asyncio.run(run_command(args, settings))
        sys.stdout.buffer.write(payload)
        sys.stdout.flush()
        _summarize(args.command, payload)
        if args.command == "equiv" and decode(payload).get("verdict") == "inconsistent":
            failed = decode(payload).get("checks", {})
            broken = sorted(name for name, holds in failed.items() if not holds)
            raise InconsistencyError(f"Equivalence legs disagree: {', '.join(broken)}")
    except ConfigurationError as exc:
        logger.error("Configuration error: %s", exc)
        return EXIT_VALIDATION
    except WorkbenchError as exc:
        logger.error("%s: %s", type(exc).__name__, exc)
        return exc.exit_code
    except Exception:
        logger.exception("Unexpected failure")
        return EXIT_INTERNAL
    return EXIT_OK


def run() -> None:  # pragma: no cover - console script wrapper
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    run()
