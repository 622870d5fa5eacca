"""Command-line driver: single evaluations, sweeps, and cross-verification.

Commands
    exact     closed-form average mutual information with its breakdown
    series    divergent large-N expansion, superasymptotically truncated
    integral  convergent Bose-Einstein integral route
    oracle    Haar Monte Carlo sampling statistics
    verify    run every route and check the cross-route agreement criteria
    sweep     tabulate routes over dimension ranges

Exit codes: 0 success, 2 invalid input, 3 numerical failure (quadrature
non-convergence, overflow, validity violation), 4 verification failure,
5 output I/O error.

Output is deterministic for identical argv and environment: CSV/JSON use
round-trip-exact float text, and no timestamps are emitted.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, field

from . import __version__
from .dims import Dimensions, casimir_counts, leading_order
from .errors import (
    DegeneratePoleError,
    DomainError,
    HaarMIError,
    InvalidDimensionError,
    NonConvergenceError,
    NumericalValidityError,
    OracleWorkerError,
    RegimeError,
    SeriesOverflowError,
)
from .integral import compute_J
from .page import (
    MutualInformationBreakdown,
    mutual_information_exact,
    mutual_information_rational,
)
from .sampling import RNG_IDENTITY, HaarSampleStats, run_oracle
from .series import expand

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERICAL = 3
EXIT_VERIFY_FAILED = 4
EXIT_IO = 5

#: Environment override for the default --seed.
SEED_ENV = "HAAR_MI_SEED"

#: Hidden fault-injection hook: a float added to J inside `verify` only,
#: so the failure path of the harness can be exercised end to end.
FAULT_J_BIAS_ENV = "HAAR_MI_FAULT_J_BIAS"

CSV_COLUMNS = [
    "dA",
    "dB",
    "dE",
    "N",
    "regime",
    "I_exact",
    "I_diag",
    "Delta_ev",
    "I_leading",
    "I_series_opt",
    "series_err",
    "I_integral",
    "J",
    "bound_deficit",
    "oracle_mean",
    "oracle_stderr",
]

_CSV_DIGITS = 17
_TABLE_DIGITS = 10


@dataclass(frozen=True)
class RunConfig:
    """Validated invocation parameters for one command."""

    command: str
    d_a: int | None = None
    d_b: int | None = None
    d_e: int | None = None
    da_range: tuple[int, int] | None = None
    db_range: tuple[int, int] | None = None
    de_range: tuple[int, int] | None = None
    de_mult_range: tuple[int, int] | None = None
    tol: float = 1e-14
    k_max: int = 40
    n_samples: int = 20000
    seed: int = 42
    workers: int = 1
    output_format: str = "table"
    output_path: str | None = None


@dataclass
class RunResult:
    """Rows in the common column schema plus command-specific extras."""

    rows: list[dict] = field(default_factory=list)
    checks: list[dict] | None = None
    table_lines: list[str] = field(default_factory=list)


def _parse_span(text: str) -> tuple[int, int]:
    """Inclusive integer range: '3' -> (3, 3); '2..4' -> (2, 4)."""
    try:
        if ".." in text:
            lo_text, hi_text = text.split("..", 1)
            lo, hi = int(lo_text), int(hi_text)
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed range {text!r}") from None
    if lo < 1 or hi < lo:
        raise argparse.ArgumentTypeError(f"empty or non-positive range {text!r}")
    return lo, hi


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 42
    try:
        return int(raw)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"environment variable {SEED_ENV} must be an integer, got {raw!r}"
        ) from None


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-14,
                        help="quadrature tolerance (default 1e-14)")
    common.add_argument("--kmax", dest="k_max", type=int, default=40,
                        help="number of series terms (default 40)")
    common.add_argument("--samples", dest="n_samples", type=int, default=20000,
                        help="Monte Carlo sample count (default 20000)")
    common.add_argument("--seed", type=int, default=None,
                        help=f"RNG seed (default 42, or ${SEED_ENV})")
    common.add_argument("--workers", type=int, default=None,
                        help="Monte Carlo worker threads (default: CPU count)")
    common.add_argument("--format", dest="output_format",
                        choices=("table", "csv", "json"), default="table",
                        help="output format (default table)")
    common.add_argument("--out", dest="output_path", default=None,
                        help="write output to this path instead of stdout")

    single = argparse.ArgumentParser(add_help=False)
    single.add_argument("--da", type=int, required=True, help="dimension of A")
    single.add_argument("--db", type=int, required=True, help="dimension of B")
    single.add_argument("--de", type=int, required=True,
                        help="dimension of the environment E")

    parser = argparse.ArgumentParser(
        prog="haarmi",
        description="Average mutual information of Haar-random bipartite "
                    "pure states, by four independent routes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("exact", "closed-form value with diagonal/eigenvector breakdown"),
        ("series", "superasymptotically truncated large-N expansion"),
        ("integral", "convergent integral route with strict-bound deficit"),
        ("oracle", "Haar Monte Carlo sampling statistics"),
        ("verify", "cross-check all routes and report pass/fail"),
    ):
        sub.add_parser(name, parents=[common, single], help=help_text)

    sweep = sub.add_parser("sweep", parents=[common],
                           help="tabulate routes over dimension ranges")
    sweep.add_argument("--da", type=_parse_span, required=True,
                       help="range for d_A, e.g. 2..4 or 3")
    sweep.add_argument("--db", type=_parse_span, required=True,
                       help="range for d_B")
    group = sweep.add_mutually_exclusive_group(required=True)
    group.add_argument("--de", type=_parse_span,
                       help="explicit range for d_E (may leave the "
                            "factorised regime)")
    group.add_argument("--de-mult", dest="de_mult", type=_parse_span,
                       help="range of multipliers m, with d_E = m*d_A*d_B "
                            "(factorised by construction)")
    return parser


def parse_args(argv: list[str]) -> RunConfig:
    """Parse and validate argv into a RunConfig (usage errors exit 2)."""
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        seed = args.seed if args.seed is not None else _default_seed()
    except argparse.ArgumentTypeError as exc:
        parser.error(str(exc))
    if seed < 0:
        parser.error("--seed must be non-negative")
    if not (args.tol > 0.0) or not math.isfinite(args.tol):
        parser.error("--tol must be a positive finite real")
    if args.k_max < 1:
        parser.error("--kmax must be >= 1")
    if args.command in ("oracle", "verify") and args.n_samples < 2:
        parser.error("--samples must be >= 2 for oracle and verify")
    workers = args.workers if args.workers is not None else (os.cpu_count() or 1)
    if workers < 1:
        parser.error("--workers must be >= 1")

    if args.command == "sweep":
        return RunConfig(
            command="sweep",
            da_range=args.da,
            db_range=args.db,
            de_range=args.de,
            de_mult_range=args.de_mult,
            tol=args.tol,
            k_max=args.k_max,
            n_samples=args.n_samples,
            seed=seed,
            workers=workers,
            output_format=args.output_format,
            output_path=args.output_path,
        )
    if args.da < 1 or args.db < 1 or args.de < 1:
        parser.error("--da, --db and --de must be >= 1")
    return RunConfig(
        command=args.command,
        d_a=args.da,
        d_b=args.db,
        d_e=args.de,
        tol=args.tol,
        k_max=args.k_max,
        n_samples=args.n_samples,
        seed=seed,
        workers=workers,
        output_format=args.output_format,
        output_path=args.output_path,
    )


def _format_number(value, digits: int) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value)
    return format(value, f".{digits}g")


def _empty_row(dims: Dimensions) -> dict:
    row = {name: None for name in CSV_COLUMNS}
    row.update(
        dA=dims.d_a, dB=dims.d_b, dE=dims.d_e, N=dims.n,
        regime=dims.regime_label,
    )
    return row


def _fill_exact(row: dict, dims: Dimensions) -> MutualInformationBreakdown:
    breakdown = mutual_information_exact(dims)
    row.update(
        I_exact=breakdown.total,
        I_diag=breakdown.i_diag,
        Delta_ev=breakdown.delta_ev,
        I_leading=leading_order(dims),
    )
    return breakdown


def _fill_series(row: dict, dims: Dimensions, k_max: int):
    expansion = expand(dims, k_max)
    row.update(
        I_leading=expansion.leading,
        I_series_opt=expansion.value_at_optimal,
        series_err=expansion.error_estimate,
    )
    return expansion


def _fill_integral(row: dict, dims: Dimensions, tol: float, j_bias: float = 0.0):
    if not dims.factorised_regime:
        raise RegimeError(
            f"integral route requires the factorised regime "
            f"(d_a*d_b <= d_e), got {dims.regime_label} {dims}"
        )
    lead = leading_order(dims)
    if dims.d_a == 1 or dims.d_b == 1:
        row.update(I_integral=0.0, bound_deficit=0.0, I_leading=lead)
        return
    su = casimir_counts(dims).su_product
    j = compute_J(dims, tol).value + j_bias
    row.update(
        I_integral=lead - 2.0 * su * j,
        J=j,
        bound_deficit=2.0 * su * j,
        I_leading=lead,
    )


def _fill_oracle(row: dict, dims: Dimensions, config: RunConfig) -> HaarSampleStats:
    stats = run_oracle(dims, config.n_samples, config.seed, config.workers)
    row.update(
        oracle_mean=stats.mean_mutual_information,
        oracle_stderr=stats.stderr_mutual_information,
    )
    return stats


def _kv_lines(pairs: list[tuple[str, object]]) -> list[str]:
    width = max(len(key) for key, _ in pairs)
    return [
        f"{key.ljust(width)}  {_format_number(value, _TABLE_DIGITS)}"
        if not isinstance(value, str)
        else f"{key.ljust(width)}  {value}"
        for key, value in pairs
    ]


def _dims_from(config: RunConfig) -> Dimensions:
    return Dimensions(config.d_a, config.d_b, config.d_e)


def _run_exact(config: RunConfig) -> RunResult:
    dims = _dims_from(config)
    row = _empty_row(dims)
    breakdown = _fill_exact(row, dims)
    pairs = [
        ("dims", f"({dims.d_a}, {dims.d_b}, {dims.d_e})  N={dims.n}"),
        ("regime", dims.regime_label),
        ("I_exact", breakdown.total),
        ("I_diag", breakdown.i_diag),
        ("Delta_ev", breakdown.delta_ev),
        ("I_leading", row["I_leading"]),
    ]
    if breakdown.g_value is not None:
        pairs.append(("g_value", breakdown.g_value))
    return RunResult(rows=[row], table_lines=_kv_lines(pairs))


def _run_series(config: RunConfig) -> RunResult:
    dims = _dims_from(config)
    if not dims.factorised_regime:
        raise RegimeError(
            "the large-N expansion targets the factorised closed form; "
            f"{dims} is in the swapped regime"
        )
    row = _empty_row(dims)
    expansion = _fill_series(row, dims, config.k_max)
    pairs = [
        ("dims", f"({dims.d_a}, {dims.d_b}, {dims.d_e})  N={dims.n}"),
        ("I_leading", expansion.leading),
        ("I_series_opt", expansion.value_at_optimal),
        ("series_err", expansion.error_estimate),
        ("optimal_k", expansion.optimal_k),
        ("divergence_k", expansion.divergence_k
         if expansion.divergence_k is not None else "none"),
    ]
    return RunResult(rows=[row], table_lines=_kv_lines(pairs))


def _run_integral(config: RunConfig) -> RunResult:
    dims = _dims_from(config)
    row = _empty_row(dims)
    _fill_integral(row, dims, config.tol)
    pairs = [
        ("dims", f"({dims.d_a}, {dims.d_b}, {dims.d_e})  N={dims.n}"),
        ("I_integral", row["I_integral"]),
        ("J", row["J"] if row["J"] is not None else "n/a (dimension 1)"),
        ("I_leading", row["I_leading"]),
        ("bound_deficit", row["bound_deficit"]),
    ]
    return RunResult(rows=[row], table_lines=_kv_lines(pairs))


def _run_oracle_cmd(config: RunConfig) -> RunResult:
    dims = _dims_from(config)
    row = _empty_row(dims)
    stats = _fill_oracle(row, dims, config)
    pairs = [
        ("dims", f"({dims.d_a}, {dims.d_b}, {dims.d_e})  N={dims.n}"),
        ("samples", stats.n_samples),
        ("seed", stats.seed),
        ("rng", stats.rng),
        ("mean_I", stats.mean_mutual_information),
        ("stderr_I", stats.stderr_mutual_information),
        ("mean_S_A", stats.mean_entropy_a),
        ("mean_S_B", stats.mean_entropy_b),
        ("mean_S_AB", stats.mean_entropy_ab),
        ("mean_purity_A", stats.mean_purity_a),
        ("mean_diag_S_A", stats.mean_diagonal_entropy_a),
        ("mean_diag_2nd_A", stats.mean_diagonal_second_moment_a),
    ]
    if stats.cartan_var is not None:
        pairs.append(("cartan_var", stats.cartan_var))
        pairs.append(("offdiag_var", stats.offdiag_var))
    return RunResult(rows=[row], table_lines=_kv_lines(pairs))


def _run_verify(config: RunConfig) -> RunResult:
    dims = _dims_from(config)
    row = _empty_row(dims)
    breakdown = _fill_exact(row, dims)
    exact_value = breakdown.total
    rational_value = float(mutual_information_rational(dims))

    j_bias = float(os.environ.get(FAULT_J_BIAS_ENV, "0") or "0")
    checks: list[dict] = []

    def record(name: str, status: str, detail: str) -> None:
        checks.append({"name": name, "status": status, "detail": detail})

    if dims.factorised_regime:
        _fill_series(row, dims, config.k_max)
        _fill_integral(row, dims, config.tol, j_bias=j_bias)

        integral_diff = abs(exact_value - row["I_integral"])
        integral_tol = max(1e-12, 10.0 * config.tol)
        record(
            "integral_route",
            "pass" if integral_diff <= integral_tol else "fail",
            f"|exact - integral| = {integral_diff:.3e} (<= {integral_tol:.3e})",
        )

        series_diff = abs(exact_value - row["I_series_opt"])
        # The superasymptotic error estimate can sit far below binary64
        # summation noise; the floor keeps the check meaningful there.
        series_tol = max(
            2.0 * row["series_err"], 1e-15 + 4e-16 * abs(exact_value)
        )
        record(
            "series_route",
            "pass" if series_diff <= series_tol else "fail",
            f"|exact - series_opt| = {series_diff:.3e} (<= {series_tol:.3e})",
        )

        deficit = row["bound_deficit"]
        record(
            "strict_bound",
            "pass" if deficit > 0.0 else "fail",
            f"bound_deficit = {deficit:.6e} (> 0)",
        )
    else:
        for name in ("integral_route", "series_route", "strict_bound"):
            record(name, "skipped", "swapped regime: factorised-only route")

    stats = _fill_oracle(row, dims, config)
    oracle_diff = abs(exact_value - stats.mean_mutual_information)
    oracle_band = 3.0 * stats.stderr_mutual_information
    record(
        "oracle_3se",
        "pass" if oracle_diff <= oracle_band else "fail",
        f"|exact - oracle_mean| = {oracle_diff:.3e} "
        f"(<= 3*SE = {oracle_band:.3e})",
    )

    pairs = [
        ("dims", f"({dims.d_a}, {dims.d_b}, {dims.d_e})  N={dims.n}"),
        ("regime", dims.regime_label),
        ("I_exact", exact_value),
        ("I_rational", rational_value),
        ("I_series_opt", row["I_series_opt"]),
        ("I_integral", row["I_integral"]),
        ("oracle_mean", stats.mean_mutual_information),
        ("oracle_stderr", stats.stderr_mutual_information),
    ]
    lines = _kv_lines(pairs)
    lines.append("")
    for check in checks:
        lines.append(
            f"[{check['status'].upper():>7}] {check['name']}: {check['detail']}"
        )
    return RunResult(rows=[row], checks=checks, table_lines=lines)


def _run_sweep(config: RunConfig) -> RunResult:
    rows = []
    da_lo, da_hi = config.da_range
    db_lo, db_hi = config.db_range
    for d_a in range(da_lo, da_hi + 1):
        for d_b in range(db_lo, db_hi + 1):
            if config.de_mult_range is not None:
                mult_lo, mult_hi = config.de_mult_range
                de_values = [m * d_a * d_b for m in range(mult_lo, mult_hi + 1)]
            else:
                de_lo, de_hi = config.de_range
                de_values = list(range(de_lo, de_hi + 1))
            for d_e in de_values:
                dims = Dimensions(d_a, d_b, d_e)
                row = _empty_row(dims)
                _fill_exact(row, dims)
                if dims.factorised_regime:
                    _fill_series(row, dims, config.k_max)
                    _fill_integral(row, dims, config.tol)
                rows.append(row)

    header = CSV_COLUMNS
    body = [
        [_format_number(row[name], _TABLE_DIGITS) for name in header]
        for row in rows
    ]
    widths = [
        max(len(header[i]), max((len(line[i]) for line in body), default=0))
        for i in range(len(header))
    ]
    lines = ["  ".join(name.ljust(widths[i]) for i, name in enumerate(header))]
    for line in body:
        lines.append("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(line)))
    return RunResult(rows=rows, table_lines=lines)


def emit(result: RunResult, output_format: str, metadata: dict) -> str:
    """Serialize rows (and verify checks) to table, CSV or JSON text."""
    if output_format == "csv":
        lines = [",".join(CSV_COLUMNS)]
        for row in result.rows:
            lines.append(
                ",".join(_format_number(row[name], _CSV_DIGITS)
                         for name in CSV_COLUMNS)
            )
        return "\n".join(lines) + "\n"
    if output_format == "json":
        payload: dict = {"metadata": metadata, "rows": result.rows}
        if result.checks is not None:
            payload["checks"] = result.checks
        return json.dumps(payload, indent=2) + "\n"
    lines = list(result.table_lines)
    lines.append("")
    lines.append(
        f"version {metadata['version']}  seed {metadata['seed']}  "
        f"tol {metadata['tol']:g}"
    )
    return "\n".join(lines) + "\n"


_HANDLERS = {
    "exact": _run_exact,
    "series": _run_series,
    "integral": _run_integral,
    "oracle": _run_oracle_cmd,
    "verify": _run_verify,
    "sweep": _run_sweep,
}


def run(config: RunConfig) -> int:
    """Execute a validated config; returns the process exit code."""
    try:
        result = _HANDLERS[config.command](config)
    except (InvalidDimensionError, DomainError, RegimeError,
            DegeneratePoleError) as exc:
        print(f"haarmi: invalid input: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NonConvergenceError, SeriesOverflowError, NumericalValidityError,
            OracleWorkerError) as exc:
        print(f"haarmi: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except HaarMIError as exc:
        print(f"haarmi: error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL

    metadata = {
        "version": __version__,
        "seed": config.seed,
        "tol": config.tol,
        "rng": RNG_IDENTITY,
    }
    text = emit(result, config.output_format, metadata)
    if config.output_path is None:
        sys.stdout.write(text)
    else:
        try:
            with open(config.output_path, "w", encoding="utf-8") as handle:
                handle.write(text)
        except OSError as exc:
            print(f"haarmi: cannot write output: {exc}", file=sys.stderr)
            return EXIT_IO

    if config.command == "verify":
        failed = [c for c in result.checks if c["status"] == "fail"]
        if failed:
            names = ", ".join(c["name"] for c in failed)
            print(f"haarmi: verification failed: {names}", file=sys.stderr)
            return EXIT_VERIFY_FAILED
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    config = parse_args(sys.argv[1:] if argv is None else argv)
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
