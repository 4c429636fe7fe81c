"""End-to-end tests for the command-line entry point."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import pytest

from atbench import main as cli
from atbench.config import load_settings
from atbench.equivalence import Check, EquivalenceReport
from atbench.errors import (
    EXIT_INCONSISTENT,
    EXIT_OK,
    EXIT_RESOURCE_LIMIT,
    EXIT_VALIDATION,
)

MC_ARGS = ["--samples", "20000", "--seed", "5", "--chunk-size", "5000"]


@pytest.fixture(autouse=True)
def clean_env(monkeypatch: pytest.MonkeyPatch) -> None:
    for name in ("ATBENCH_LATIN_LIMIT", "ATBENCH_WEIGHT_ZERO_CAP", "ATBENCH_CACHE_ENABLED"):
        monkeypatch.delenv(name, raising=False)
    load_settings.cache_clear()


def _run(
    capsys: pytest.CaptureFixture[str], tmp_path: Path, *argv: str
) -> tuple[int, str]:
    code = cli.main([*argv, "--cache-dir", str(tmp_path / "cache")])
    return code, capsys.readouterr().out


def _record(output: str) -> dict[str, Any]:
    value = json.loads(output)
    assert isinstance(value, dict)
    return value


def test_latin_census_json(capsys: pytest.CaptureFixture[str], tmp_path: Path) -> None:
    code, out = _run(capsys, tmp_path, "latin-census", "3")
    record = _record(out)

    assert code == EXIT_OK
    assert record["op"] == "latin-census"
    assert record["schema_version"] == 1
    assert record["total"] == 12
    assert record["at_difference"] == 0


def test_second_run_is_served_from_cache(
    capsys: pytest.CaptureFixture[str], tmp_path: Path
) -> None:
    _, first = _run(capsys, tmp_path, "latin-census", "4")
    _, second = _run(capsys, tmp_path, "latin-census", "4")
    _, stats = _run(capsys, tmp_path, "cache", "stats")

    assert first == second
    assert _record(stats)["total_records"] == 1
    assert _record(stats)["by_op"] == {"latin-census": 1}


def test_cache_clear(capsys: pytest.CaptureFixture[str], tmp_path: Path) -> None:
    _run(capsys, tmp_path, "pair", "2")
    _, out = _run(capsys, tmp_path, "cache", "clear")

    assert _record(out)["removed"] == 1


def test_latin_census_csv(capsys: pytest.CaptureFixture[str], tmp_path: Path) -> None:
    code, out = _run(capsys, tmp_path, "latin-census", "2", "--format", "csv")

    assert code == EXIT_OK
    assert out.splitlines()[0].startswith("n,total,even,odd,at_difference")
    assert out.splitlines()[1].startswith("2,2,2,0,2,")


def test_at_check(capsys: pytest.CaptureFixture[str], tmp_path: Path) -> None:
    code, out = _run(capsys, tmp_path, "at-check", "4")
    record = _record(out)

    assert code == EXIT_OK
    assert record["huang_rota"] is True
    assert record["naive_oracle_agrees"] is True
    assert abs(record["det_power_coefficient"]) == abs(record["at_difference"])


@pytest.mark.parametrize("argv", [["latin-census", "7"], ["latin-census", "6"], ["pair", "5"]])
def test_oversized_requests_exit_three(
    capsys: pytest.CaptureFixture[str], tmp_path: Path, argv: list[str]
) -> None:
    code, out = _run(capsys, tmp_path, *argv)

    assert code == EXIT_RESOURCE_LIMIT
    assert out == ""


def test_weight_zero_three_three_needs_allow_large(
    capsys: pytest.CaptureFixture[str], tmp_path: Path
) -> None:
    code, _ = _run(capsys, tmp_path, "howe-rank", "--weight-zero", "--d", "3", "--n", "3")

    assert code == EXIT_RESOURCE_LIMIT


@pytest.mark.parametrize(
    "argv",
    [
        ["latin-census", "0"],
        ["latin-census", "3", "--threads", "0"],
        ["howe-rank", "--d", "2", "--n", "2"],
    ],
)
def test_invalid_requests_exit_two(
    capsys: pytest.CaptureFixture[str], tmp_path: Path, argv: list[str]
) -> None:
    code, _ = _run(capsys, tmp_path, *argv)

    assert code == EXIT_VALIDATION


def test_bad_environment_exits_two(
    capsys: pytest.CaptureFixture[str], tmp_path: Path, monkeypatch: pytest.MonkeyPatch
) -> None:
    monkeypatch.setenv("ATBENCH_SEED", "not-a-number")
    load_settings.cache_clear()

    code, _ = _run(capsys, tmp_path, "pair", "2")

    assert code == EXIT_VALIDATION


def test_argument_errors_exit_two() -> None:
    with pytest.raises(SystemExit) as excinfo:
        cli.main(["howe-rank", "--dim-v", "2"])

    assert excinfo.value.code == EXIT_VALIDATION


@pytest.mark.parametrize(
    "argv",
    [
        ["latin-census", "2", "--format", "xml"],
        ["integrate", "2", "--integrand", "trace"],
    ],
)
def test_unknown_choices_exit_two(argv: list[str]) -> None:
    with pytest.raises(SystemExit) as excinfo:
        cli.main(argv)

    assert excinfo.value.code == EXIT_VALIDATION


def test_pair(capsys: pytest.CaptureFixture[str], tmp_path: Path) -> None:
    code, out = _run(capsys, tmp_path, "pair", "2")
    record = _record(out)

    assert code == EXIT_OK
    assert record["perm_det"] == "4"
    assert record["entries_det"] == "-2"
    assert record["det_power_terms"] == 3


def test_howe_rank(capsys: pytest.CaptureFixture[str], tmp_path: Path) -> None:
    code, out = _run(capsys, tmp_path, "howe-rank", "--dim-v", "2", "--d", "3", "--n", "2")
    record = _record(out)

    assert code == EXIT_OK
    assert (record["rank"], record["rows"], record["cols"]) == (10, 10, 10)
    assert record["isomorphism"] is True


def test_howe_rank_weight_zero_with_matrix_export(
    capsys: pytest.CaptureFixture[str], tmp_path: Path
) -> None:
    matrix_path = tmp_path / "out" / "h22.tsv"
    code, out = _run(
        capsys,
        tmp_path,
        "howe-rank",
        "--weight-zero",
        "--d",
        "2",
        "--n",
        "2",
        "--matrix-out",
        str(matrix_path),
    )
    record = _record(out)

    assert code == EXIT_OK
    assert (record["rows"], record["cols"], record["rank"]) == (3, 3, 3)
    assert record["wreath_dimension"] == 3
    assert matrix_path.read_text().startswith("# exact-linear-map rows=3 cols=3 dim_v=4")


def test_integrate(capsys: pytest.CaptureFixture[str], tmp_path: Path) -> None:
    code, out = _run(
        capsys, tmp_path, "integrate", "2", "--integrand", "entry-product", *MC_ARGS
    )
    record = _record(out)

    assert code == EXIT_OK
    assert record["integrand"] == "entry-product"
    assert record["samples"] == 20000
    assert abs(record["mean_re"] + 1 / 6) <= 3 * record["stderr_re"] + 1e-12


def test_project(capsys: pytest.CaptureFixture[str], tmp_path: Path) -> None:
    code, out = _run(capsys, tmp_path, "project", "2", *MC_ARGS)
    record = _record(out)

    assert code == EXIT_OK
    assert [entry["monomial"] for entry in record["coefficients"]] == [
        "(e1^2)(e2^2)",
        "(e1*e2)(e1*e2)",
    ]
    assert [entry["pstar"] for entry in record["coefficients"]] == ["1", "-2"]
    assert record["cosine_similarity"] > 0.99
    assert record["ratio"]["exact_ratio"] == "-2"


@pytest.mark.parametrize(("n", "verdict"), [(2, "consistent"), (3, "vacuous")])
def test_equiv(
    capsys: pytest.CaptureFixture[str], tmp_path: Path, n: int, verdict: str
) -> None:
    code, out = _run(capsys, tmp_path, "equiv", str(n), *MC_ARGS)

    assert code == EXIT_OK
    assert _record(out)["verdict"] == verdict


def test_inconsistent_chain_exits_four(
    capsys: pytest.CaptureFixture[str], tmp_path: Path, monkeypatch: pytest.MonkeyPatch
) -> None:
    def broken(n: int, *_args: object, **_kwargs: object) -> EquivalenceReport:
        return EquivalenceReport(
            n=n, legs=(), checks=(Check("|a| = |b|", False),), verdict="inconsistent"
        )

    monkeypatch.setattr(cli, "build_equivalence_report", broken)
    code, out = _run(capsys, tmp_path, "equiv", "2", "--no-cache")

    assert code == EXIT_INCONSISTENT
    assert _record(out)["verdict"] == "inconsistent"
