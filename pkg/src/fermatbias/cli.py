"""Command-line driver: compute series CSVs, verify invariants, fit slopes.

Exit codes: 0 success, 1 usage error, 2 invariant failure, 3 resource cap.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
import time
from dataclasses import dataclass

import sympy

from .arith import residue_degree, sieve_primes
from .curves import CurveId, ap_from_jacobi
from .fields import DEFAULT_TABLE_CAP, TableCapError
from .jacobi import JacobiCache, JacobiProvider
from .lfunc import (
    compute_series,
    default_grid,
    loglog_fit,
    predicted_slope,
    SeriesSample,
)
from .verify import run_verification

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INVARIANT = 2
EXIT_RESOURCE = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse defaults to exit code 2
        raise UsageError(message)


@dataclass
class RunConfig:
    ell: int
    curves: list[CurveId]
    x_max: int
    grid: list[float]
    m: int
    threads: int
    cache: str | None
    oracle_cap: int
    out: str
    timestamp: bool


def _build_parser() -> _Parser:
    parser = _Parser(prog="bias", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("compute", "verify", "fit"):
        p = sub.add_parser(name)
        p.add_argument("--ell", type=int, required=True)
        p.add_argument("--curve", choices=["fermat", "quotient", "all"], default="all")
        p.add_argument("--k", type=int, default=None)
        p.add_argument("--x-max", type=int, default=10**5)
        p.add_argument("--grid", type=str, default=None, help="comma-separated cutoffs")
        p.add_argument("--m", type=int, default=0)
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--cache", type=str, default=None)
        p.add_argument("--oracle-cap", type=int, default=10**5)
        p.add_argument("--table-cap", type=int, default=DEFAULT_TABLE_CAP)
        p.add_argument("--out", type=str, default=".")
        p.add_argument("--no-header-timestamp", action="store_true")
    return parser


def _config_from(args: argparse.Namespace) -> RunConfig:
    ell = args.ell
    if ell < 3 or ell % 2 == 0 or not sympy.isprime(ell):
        raise UsageError(f"--ell {ell} is not an odd prime")
    if args.x_max < 100:
        raise UsageError("--x-max must be >= 100")
    if args.curve == "fermat":
        curves = [CurveId(ell)]
    elif args.curve == "quotient":
        if args.k is None:
            raise UsageError("--curve quotient requires --k")
        if not 1 <= args.k <= ell - 2:
            raise UsageError(f"--k {args.k} out of range 1..{ell - 2}")
        curves = [CurveId(ell, args.k)]
    else:
        curves = [CurveId(ell)] + [CurveId(ell, k) for k in range(1, ell - 1)]
    if args.grid:
        try:
            grid = sorted(float(v) for v in args.grid.split(","))
        except ValueError as exc:
            raise UsageError(f"bad --grid: {exc}") from exc
    else:
        grid = default_grid(args.x_max)
    return RunConfig(
        ell=ell,
        curves=curves,
        x_max=args.x_max,
        grid=grid,
        m=args.m,
        threads=args.threads,
        cache=args.cache,
        oracle_cap=args.oracle_cap,
        out=args.out,
        timestamp=not args.no_header_timestamp,
    )


def _make_provider(config: RunConfig, table_cap: int) -> JacobiProvider:
    cache = JacobiCache(config.cache) if config.cache else None
    return JacobiProvider(config.ell, cap=table_cap, cache=cache)


CSV_COLUMNS = [
    "x",
    "bias_sum",
    "term_I",
    "term_II",
    "term_III",
    "log_euler_product_s_half",
    "second_moment_F",
    "second_moment_Q",
    "predicted_slope",
    "fit_A",
    "fit_c",
]


def series_csv_path(out_dir: str, ell: int, curve: CurveId) -> str:
    return os.path.join(out_dir, f"bias_l{ell}_{curve.label}.csv")


def cmd_compute(config: RunConfig, provider: JacobiProvider) -> int:
    os.makedirs(config.out, exist_ok=True)
    split_primes = [
        p for p in sieve_primes(config.x_max) if p % config.ell == 1
    ]
    provider.precompute(split_primes, threads=config.threads)
    for curve in config.curves:
        rows = compute_series(curve, config.grid, provider)
        samples = [SeriesSample(r.x, r.bias_sum) for r in rows]
        pred = predicted_slope(curve, config.m)
        try:
            fit = loglog_fit(samples)
            fit_a, fit_c = fit.slope, fit.intercept
        except ValueError:
            fit_a = fit_c = float("nan")
        path = series_csv_path(config.out, config.ell, curve)
        with open(path, "w", newline="", encoding="utf-8") as fh:
            if config.timestamp:
                fh.write(f"# generated {time.strftime('%Y-%m-%dT%H:%M:%S')}\n")
            writer = csv.writer(fh)
            writer.writerow(CSV_COLUMNS)
            for r in rows:
                writer.writerow(
                    [
                        _fmt(r.x),
                        _fmt(r.bias_sum),
                        _fmt(r.term_I),
                        _fmt(r.term_II),
                        _fmt(r.term_III),
                        _fmt(r.log_euler_product_s_half),
                        _fmt(r.second_moment_F),
                        _fmt(r.second_moment_Q),
                        _fmt(pred),
                        _fmt(fit_a),
                        _fmt(fit_c),
                    ]
                )
        ap_path = os.path.join(config.out, f"ap_l{config.ell}_{curve.label}.csv")
        with open(ap_path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["l", "curve", "p", "ap"])
            for p in split_primes:
                writer.writerow(
                    [config.ell, curve.label, p, ap_from_jacobi(p, curve, provider)]
                )
        print(f"wrote {path}")
    return EXIT_OK


def _fmt(v: float) -> str:
    if isinstance(v, float) and v == int(v) and abs(v) < 1e15:
        return str(int(v))
    return format(v, ".12g")


def cmd_verify(config: RunConfig, provider: JacobiProvider) -> int:
    results = run_verification(config.ell, config.x_max, provider)
    for res in results:
        print(res.line())
    return EXIT_OK if all(r.passed for r in results) else EXIT_INVARIANT


def cmd_fit(config: RunConfig, provider: JacobiProvider) -> int:
    print(f"{'curve':<12} {'m':>3} {'predicted':>10} {'fit_A':>10} {'|diff|':>8} {'residual':>9}")
    for curve in config.curves:
        path = series_csv_path(config.out, config.ell, curve)
        if not os.path.exists(path):
            print(f"error: missing series {path}; run `bias compute` first", file=sys.stderr)
            return EXIT_USAGE
        with open(path, encoding="utf-8") as fh:
            lines = [ln for ln in fh if not ln.startswith("#")]
        samples = [
            SeriesSample(float(row["x"]), float(row["bias_sum"]))
            for row in csv.DictReader(lines)
        ]
        pred = predicted_slope(curve, config.m)
        fit = loglog_fit(samples)
        print(
            f"{curve.label:<12} {config.m:>3} {pred:>10.4f} {fit.slope:>10.4f} "
            f"{abs(fit.slope - pred):>8.4f} {fit.residual_rms:>9.4f}"
        )
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        config = _config_from(args)
        provider = _make_provider(config, args.table_cap)
        if args.command == "compute":
            return cmd_compute(config, provider)
        if args.command == "verify":
            return cmd_verify(config, provider)
        return cmd_fit(config, provider)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TableCapError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
