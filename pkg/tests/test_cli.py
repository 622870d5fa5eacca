"""Command-line surface: parsing, exit codes, serialization schemas."""

import json
import os
import subprocess
import sys

import pytest

from haarmi import NonConvergenceError, compute_J, Dimensions
from haarmi import cli

CSV_HEADER = (
    "dA,dB,dE,N,regime,I_exact,I_diag,Delta_ev,I_leading,I_series_opt,"
    "series_err,I_integral,J,bound_deficit,oracle_mean,oracle_stderr"
)


def run_cli(*args, env_extra=None):
    env = {k: v for k, v in os.environ.items() if not k.startswith("HAAR_MI_")}
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        [sys.executable, "-m", "haarmi.cli", *args],
        capture_output=True,
        text=True,
        env=env,
    )


# ---------------------------------------------------------------------------
# parsing


def test_parse_defaults():
    config = cli.parse_args(["exact", "--da", "2", "--db", "3", "--de", "7"])
    assert config.command == "exact"
    assert (config.d_a, config.d_b, config.d_e) == (2, 3, 7)
    assert config.tol == 1e-14
    assert config.k_max == 40
    assert config.n_samples == 20000
    assert config.seed == 42
    assert config.workers >= 1
    assert config.output_format == "table"
    assert config.output_path is None


def test_parse_sweep_ranges():
    config = cli.parse_args(
        ["sweep", "--da", "2..4", "--db", "3", "--de-mult", "1..4",
         "--format", "csv"]
    )
    assert config.command == "sweep"
    assert config.da_range == (2, 4)
    assert config.db_range == (3, 3)
    assert config.de_mult_range == (1, 4)
    assert config.de_range is None


@pytest.mark.parametrize(
    "argv",
    [
        ["exact", "--da", "0", "--db", "3", "--de", "7"],
        ["exact", "--da", "2", "--db", "3"],  # missing --de
        ["exact", "--da", "2", "--db", "3", "--de", "7", "--tol", "-1"],
        ["exact", "--da", "2", "--db", "3", "--de", "7", "--kmax", "0"],
        ["oracle", "--da", "2", "--db", "3", "--de", "7", "--samples", "1"],
        ["sweep", "--da", "2..x", "--db", "2", "--de-mult", "1..2"],
        ["sweep", "--da", "4..2", "--db", "2", "--de-mult", "1..2"],  # empty
        ["sweep", "--da", "2", "--db", "2"],  # neither --de nor --de-mult
        ["sweep", "--da", "2", "--db", "2", "--de", "2", "--de-mult", "1"],
        ["frobnicate", "--da", "2", "--db", "3", "--de", "7"],
    ],
)
def test_usage_errors_exit_2(argv):
    result = run_cli(*argv)
    assert result.returncode == 2


def test_seed_environment_override():
    out = run_cli(
        "exact", "--da", "2", "--db", "3", "--de", "7", "--format", "json",
        env_extra={"HAAR_MI_SEED": "7"},
    )
    assert json.loads(out.stdout)["metadata"]["seed"] == 7
    # an explicit flag still wins
    out = run_cli(
        "exact", "--da", "2", "--db", "3", "--de", "7", "--format", "json",
        "--seed", "3", env_extra={"HAAR_MI_SEED": "7"},
    )
    assert json.loads(out.stdout)["metadata"]["seed"] == 3
    # a malformed value is a usage error
    bad = run_cli(
        "exact", "--da", "2", "--db", "3", "--de", "7",
        env_extra={"HAAR_MI_SEED": "oops"},
    )
    assert bad.returncode == 2


# ---------------------------------------------------------------------------
# CSV schema


def test_exact_csv_schema_and_roundtrip():
    result = run_cli("exact", "--da", "2", "--db", "3", "--de", "7",
                     "--format", "csv")
    assert result.returncode == 0
    lines = result.stdout.strip().split("\n")
    assert lines[0] == CSV_HEADER
    fields = lines[1].split(",")
    assert len(fields) == 16
    assert fields[:5] == ["2", "3", "7", "42", "factorised"]
    from haarmi import mutual_information_exact

    expected = mutual_information_exact(Dimensions(2, 3, 7)).total
    assert float(fields[5]) == expected  # 17 digits round-trip exactly
    assert fields[5] == format(expected, ".17g")
    # fields this command does not compute stay empty
    assert fields[9] == "" and fields[14] == "" and fields[15] == ""


def test_series_command_populates_series_fields():
    result = run_cli("series", "--da", "1", "--db", "5", "--de", "9",
                     "--format", "csv")
    assert result.returncode == 0
    fields = result.stdout.strip().split("\n")[1].split(",")
    assert float(fields[9]) == 0.0  # I_series_opt: every term vanishes
    assert float(fields[10]) == 0.0  # series_err
    assert fields[5] == ""  # exact not computed by this command


def test_series_swapped_regime_is_usage_error():
    assert run_cli("series", "--da", "3", "--db", "4", "--de", "2").returncode == 2
    assert run_cli("integral", "--da", "3", "--db", "4", "--de", "2").returncode == 2


def test_sweep_csv_factorised_and_swapped_rows():
    result = run_cli("sweep", "--da", "2..3", "--db", "2..3", "--de-mult",
                     "1..2", "--format", "csv")
    assert result.returncode == 0
    lines = result.stdout.strip().split("\n")
    assert lines[0] == CSV_HEADER
    assert len(lines) == 9  # 2 * 2 * 2 rows
    for line in lines[1:]:
        fields = line.split(",")
        assert fields[4] == "factorised"
        assert fields[11] != "" and fields[12] != ""  # integral and J present
        assert fields[14] == "" and fields[15] == ""  # no oracle in sweeps

    swapped = run_cli("sweep", "--da", "3", "--db", "3", "--de", "2..3",
                      "--format", "csv")
    for line in swapped.stdout.strip().split("\n")[1:]:
        fields = line.split(",")
        assert fields[4] == "swapped"
        assert fields[5] != ""  # exact always present
        for idx in (9, 10, 11, 12, 13):  # series/integral family empty
            assert fields[idx] == ""


def test_sweep_de_mult_always_factorised():
    result = run_cli("sweep", "--da", "2..4", "--db", "2..4", "--de-mult",
                     "1..4", "--format", "csv")
    rows = result.stdout.strip().split("\n")[1:]
    assert len(rows) == 9 * 4
    assert all(row.split(",")[4] == "factorised" for row in rows)


def test_cli_byte_determinism():
    argv = ("sweep", "--da", "2..3", "--db", "2..3", "--de-mult", "1..2",
            "--format", "csv")
    first = run_cli(*argv)
    second = run_cli(*argv)
    assert first.stdout == second.stdout
    argv_json = ("oracle", "--da", "2", "--db", "2", "--de", "2",
                 "--samples", "200", "--format", "json")
    assert run_cli(*argv_json).stdout == run_cli(*argv_json).stdout


# ---------------------------------------------------------------------------
# JSON schema


def test_json_mirrors_csv_names_with_metadata():
    result = run_cli("integral", "--da", "2", "--db", "3", "--de", "7",
                     "--format", "json")
    payload = json.loads(result.stdout)
    assert set(payload) == {"metadata", "rows"}
    assert list(payload["rows"][0]) == CSV_HEADER.split(",")
    meta = payload["metadata"]
    assert meta["version"] and meta["rng"]
    assert meta["seed"] == 42 and meta["tol"] == 1e-14
    row = payload["rows"][0]
    expected_j = compute_J(Dimensions(2, 3, 7)).value
    assert row["J"] == expected_j  # json floats round-trip exactly
    assert row["oracle_mean"] is None


def test_json_roundtrip_identity():
    result = run_cli("exact", "--da", "3", "--db", "4", "--de", "2",
                     "--format", "json")
    row = json.loads(result.stdout)["rows"][0]
    from haarmi import mutual_information_exact

    b = mutual_information_exact(Dimensions(3, 4, 2))
    assert row["I_exact"] == b.total
    assert row["I_diag"] == b.i_diag
    assert row["Delta_ev"] == b.delta_ev
    assert row["regime"] == "swapped"


# ---------------------------------------------------------------------------
# table view


def test_exact_table_regime_fields():
    swapped = run_cli("exact", "--da", "3", "--db", "4", "--de", "2")
    assert swapped.returncode == 0
    assert "swapped" in swapped.stdout
    assert "g_value" not in swapped.stdout
    factorised = run_cli("exact", "--da", "2", "--db", "3", "--de", "7")
    assert "g_value" in factorised.stdout
    # the human view rounds to 10 significant digits
    assert format(0.28458368008518736, ".10g") in factorised.stdout


def test_verify_table_lists_checks():
    result = run_cli("verify", "--da", "2", "--db", "3", "--de", "7",
                     "--samples", "2000")
    assert result.returncode == 0
    for name in ("integral_route", "series_route", "strict_bound", "oracle_3se"):
        assert name in result.stdout
    # all four analytic routes are on display
    for label in ("I_exact", "I_rational", "I_series_opt", "I_integral"):
        assert label in result.stdout
    assert "FAIL" not in result.stdout


# ---------------------------------------------------------------------------
# verify semantics and exit codes


def test_verify_passes_and_emits_checks_json():
    result = run_cli("verify", "--da", "2", "--db", "3", "--de", "7",
                     "--samples", "2000", "--format", "json")
    assert result.returncode == 0
    payload = json.loads(result.stdout)
    statuses = {c["name"]: c["status"] for c in payload["checks"]}
    assert statuses == {
        "integral_route": "pass",
        "series_route": "pass",
        "strict_bound": "pass",
        "oracle_3se": "pass",
    }
    row = payload["rows"][0]
    assert all(row[name] is not None for name in CSV_HEADER.split(","))


def test_verify_swapped_regime_skips_factorised_checks():
    result = run_cli("verify", "--da", "3", "--db", "4", "--de", "2",
                     "--samples", "2000", "--format", "json")
    assert result.returncode == 0
    statuses = {c["name"]: c["status"] for c in json.loads(result.stdout)["checks"]}
    assert statuses["integral_route"] == "skipped"
    assert statuses["series_route"] == "skipped"
    assert statuses["strict_bound"] == "skipped"
    assert statuses["oracle_3se"] == "pass"


def test_verify_fault_injection_exits_4():
    result = run_cli(
        "verify", "--da", "2", "--db", "3", "--de", "7", "--samples", "2000",
        env_extra={"HAAR_MI_FAULT_J_BIAS": "1e-6"},
    )
    assert result.returncode == 4
    assert "verification failed" in result.stderr


def test_unwritable_output_exits_5(tmp_path):
    missing_dir = tmp_path / "does-not-exist" / "out.csv"
    result = run_cli("exact", "--da", "2", "--db", "3", "--de", "7",
                     "--format", "csv", "--out", str(missing_dir))
    assert result.returncode == 5


def test_output_file_written(tmp_path):
    target = tmp_path / "row.csv"
    result = run_cli("exact", "--da", "2", "--db", "3", "--de", "7",
                     "--format", "csv", "--out", str(target))
    assert result.returncode == 0
    assert result.stdout == ""
    assert target.read_text().startswith(CSV_HEADER)


def test_numerical_failure_exits_3(monkeypatch):
    def explode(dims, tol):
        raise NonConvergenceError("injected")

    monkeypatch.setattr(cli, "compute_J", explode)
    config = cli.parse_args(["integral", "--da", "2", "--db", "3", "--de", "7"])
    assert cli.run(config) == 3


def test_run_exact_exit_0(capsys):
    config = cli.parse_args(["exact", "--da", "2", "--db", "3", "--de", "7",
                             "--format", "csv"])
    assert cli.run(config) == 0
    captured = capsys.readouterr()
    assert captured.out.startswith(CSV_HEADER)


def test_table_footer_metadata():
    result = run_cli("exact", "--da", "2", "--db", "3", "--de", "7")
    footer = result.stdout.strip().split("\n")[-1]
    assert "version" in footer and "seed 42" in footer and "tol" in footer
