"""Command-line front end.

Subcommands: ``exact``, ``figure2``, ``figure6``, ``simulate``, ``verify``,
``strategies list``, and ``report``.  Every subcommand takes
``--format json|csv|text``; CSV output is a header row plus comma-separated
records, LF line endings, UTF-8.  Exact rationals are printed as ``p/q`` (or a
bare integer when the denominator is 1) and parse back with
``fractions.Fraction``.  ``NAPKIN_LAB_THREADS`` caps simulation workers;
results are identical for any worker count.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from fractions import Fraction

from . import figures, optimality, simulate
from .engine import values_for
from .strategies import (
    REGISTRY,
    IntervallicStrategy,
    get_strategy,
    load_strategy_file,
    long_trap_setting,
)

FORMATS = ("text", "json", "csv")


def _threads_from_env() -> int | None:
    raw = os.environ.get("NAPKIN_LAB_THREADS")
    if not raw:
        return None
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"NAPKIN_LAB_THREADS must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError("NAPKIN_LAB_THREADS must be >= 1")
    return value


def _rat(value: Fraction | None) -> str | None:
    return None if value is None else str(value)


def _resolve_strategy(args) -> IntervallicStrategy:
    file_arg = getattr(args, "strategy_file", None)
    if file_arg:
        if getattr(args, "strategy", None):
            raise ValueError("pass either --strategy or --strategy-file, not both")
        return load_strategy_file(file_arg)
    return get_strategy(args.strategy or "long-trap-setting")


def _write_csv(out, header: list[str], rows: list[list]) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)


def _write_json(out, payload) -> None:
    json.dump(payload, out, indent=2)
    out.write("\n")


# ---------------------------------------------------------------------------
# exact
# ---------------------------------------------------------------------------


def _cmd_exact(args, out) -> int:
    strategy = _resolve_strategy(args)
    n = args.n
    if n < 0:
        raise ValueError("n must be >= 0")
    values = values_for(strategy)
    quantities = {
        "table": values.table(n) if n >= 2 else None,
        "inner": values.inner(n) if n >= 1 else None,
        "outer": values.outer(n),
        "asym": values.asym(n),
    }
    if args.format == "json":
        _write_json(out, {
            "command": "exact",
            "strategy": strategy.name,
            "n": n,
            "values": {k: _rat(v) for k, v in quantities.items()},
            "decimals": {k: (None if v is None else float(v)) for k, v in quantities.items()},
        })
    elif args.format == "csv":
        rows = [
            [strategy.name, n, key, str(value), repr(float(value))]
            for key, value in quantities.items()
            if value is not None
        ]
        _write_csv(out, ["strategy", "n", "quantity", "value", "decimal"], rows)
    else:
        out.write(f"strategy: {strategy.name}\n")
        out.write(f"n: {n}\n")
        for key, value in quantities.items():
            if value is None:
                out.write(f"{key}: -\n")
            else:
                out.write(f"{key}: {value} = {float(value)!r}\n")
    return 0


# ---------------------------------------------------------------------------
# figure2
# ---------------------------------------------------------------------------


def _figure2_strategies(args) -> list[IntervallicStrategy]:
    chosen = []
    for name in args.strategies.split(","):
        name = name.strip()
        if name:
            chosen.append(get_strategy(name))
    if getattr(args, "strategy_file", None):
        chosen.append(load_strategy_file(args.strategy_file))
    if not chosen:
        raise ValueError("no strategies selected")
    return chosen


def _cmd_figure2(args, out) -> int:
    strategies = _figure2_strategies(args)
    if args.max_n < args.min_n:
        raise ValueError("--max-n must be >= --min-n")
    rows = figures.figure2_rows(strategies, args.min_n, args.max_n)
    if args.include_reference:
        rows = rows + [
            r for r in figures.reference_rows() if args.min_n <= r.n <= args.max_n
        ]
    if args.plot:
        figures.render_proportion_plot(rows, args.plot)

    with_source = args.include_reference
    if args.format == "json":
        _write_json(out, {
            "command": "figure2",
            "rows": [
                {
                    "strategy": r.strategy,
                    "n": r.n,
                    "proportion": r.text,
                    **({"source": r.source} if with_source else {}),
                }
                for r in rows
            ],
        })
    elif args.format == "text":
        width = max(len(r.strategy) for r in rows)
        for r in rows:
            tail = f"  {r.source}" if with_source else ""
            out.write(f"{r.strategy:<{width}}  {r.n:>3}  {r.text}{tail}\n")
    else:
        header = ["strategy", "n", "proportion"] + (["source"] if with_source else [])
        _write_csv(out, header, [
            [r.strategy, r.n, r.text] + ([r.source] if with_source else [])
            for r in rows
        ])
    return 0


# ---------------------------------------------------------------------------
# figure6
# ---------------------------------------------------------------------------


def _cmd_figure6(args, out) -> int:
    rows = figures.figure6_table()
    if args.format == "json":
        _write_json(out, {
            "command": "figure6",
            "strategy": long_trap_setting().name,
            "rows": [
                {key: (_rat(val) if key != "n" else val) for key, val in row.items()}
                for row in rows
            ],
        })
    elif args.format == "csv":
        _write_csv(out, ["n", "inner", "outer", "asym", "table"], [
            [
                row["n"],
                *("" if row[k] is None else str(row[k]) for k in ("inner", "outer", "asym", "table")),
            ]
            for row in rows
        ])
    else:
        out.write(f"{'n':>2}  {'inner':>6}  {'outer':>6}  {'asym':>6}  {'table':>6}\n")
        for row in rows:
            cells = [
                "-" if row[k] is None else str(row[k])
                for k in ("inner", "outer", "asym", "table")
            ]
            out.write(f"{row['n']:>2}  " + "  ".join(f"{c:>6}" for c in cells) + "\n")
    return 0


# ---------------------------------------------------------------------------
# simulate
# ---------------------------------------------------------------------------


def _cmd_simulate(args, out) -> int:
    strategy = _resolve_strategy(args)
    result = simulate.monte_carlo(
        strategy,
        args.n,
        args.trials,
        args.seed,
        threads=_threads_from_env(),
        engine=args.engine,
    )
    payload = {
        "command": "simulate",
        "strategy": result.strategy,
        "n": result.n,
        "trials": result.trials,
        "seed": result.seed,
        "mean": result.mean,
        "std_error": result.std_error,
        "proportion": result.mean / result.n,
    }
    if args.format == "json":
        _write_json(out, payload)
    elif args.format == "csv":
        _write_csv(
            out,
            ["strategy", "n", "trials", "seed", "mean", "std_error", "proportion"],
            [[
                result.strategy, result.n, result.trials, result.seed,
                repr(result.mean), repr(result.std_error), repr(result.mean / result.n),
            ]],
        )
    else:
        for key in ("strategy", "n", "trials", "seed", "mean", "std_error", "proportion"):
            value = payload[key]
            out.write(f"{key}: {value!r}\n" if isinstance(value, float) else f"{key}: {value}\n")
    return 0


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def _verify_records(args):
    """Yield (record dict, passed) for every verification phase."""
    strategy = long_trap_setting()
    if args.corrupted_strategy:
        # Deliberately suboptimal rule used to demonstrate divergence reporting.
        strategy = IntervallicStrategy(
            "corrupted-always-endpoint", lambda kind, length: 0
        )

    tables = optimality.optimal_interval_values(args.max_n)
    report = optimality.verify_strategy_optimal(args.max_n, strategy, tables)
    if report.equal:
        yield {
            "check": "optimal-interval-match", "kind": None, "n": args.max_n,
            "m": None, "lhs": None, "rhs": None, "pass": True,
        }, True
    else:
        d = report.first_divergence
        yield {
            "check": "optimal-interval-divergence", "kind": d.kind.value,
            "n": d.length, "m": None, "lhs": str(d.strategy_value),
            "rhs": str(d.optimal_value), "pass": False,
        }, False

    for record in optimality.inequality_records(args.ineq_max_n):
        yield {
            "check": record.check, "kind": None, "n": record.n, "m": record.m,
            "lhs": str(record.lhs), "rhs": str(record.rhs), "pass": record.passed,
        }, record.passed

    values = values_for(long_trap_setting())
    for n in range(2, args.raw_max_n + 1):
        raw = optimality.raw_table_optimum(n)
        exact = values.table(n)
        ok = raw == exact
        yield {
            "check": "raw-table-optimum", "kind": None, "n": n, "m": None,
            "lhs": str(raw), "rhs": str(exact), "pass": ok,
        }, ok


def _cmd_verify(args, out) -> int:
    if not 0 <= args.raw_max_n <= optimality.RAW_TABLE_MAX:
        raise ValueError(f"--raw-max-n must be between 0 and {optimality.RAW_TABLE_MAX}")
    all_ok = True
    if args.format == "json":
        for record, ok in _verify_records(args):
            all_ok &= ok
            out.write(json.dumps(record) + "\n")
    elif args.format == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["check", "kind", "n", "m", "lhs", "rhs", "pass"])
        for record, ok in _verify_records(args):
            all_ok &= ok
            writer.writerow([
                record["check"], record["kind"] or "", record["n"],
                "" if record["m"] is None else record["m"],
                record["lhs"] or "", record["rhs"] or "",
                "true" if record["pass"] else "false",
            ])
    else:
        counts: dict[str, int] = {}
        failures = []
        for record, ok in _verify_records(args):
            all_ok &= ok
            counts[record["check"]] = counts.get(record["check"], 0) + 1
            if not ok:
                failures.append(record)
        for check in sorted(counts):
            out.write(f"{check}: {counts[check]} check(s)\n")
        for record in failures:
            where = f"kind={record['kind']} " if record["kind"] else ""
            out.write(
                f"FAIL {record['check']} {where}n={record['n']} m={record['m']} "
                f"lhs={record['lhs']} rhs={record['rhs']}\n"
            )
        out.write(f"verify: {'PASS' if all_ok else 'FAIL'}\n")
    return 0 if all_ok else 1


# ---------------------------------------------------------------------------
# strategies list
# ---------------------------------------------------------------------------


def _cmd_strategies_list(args, out) -> int:
    names = sorted(REGISTRY)
    if args.format == "json":
        _write_json(out, {"command": "strategies-list", "strategies": names})
    elif args.format == "csv":
        _write_csv(out, ["strategy"], [[n] for n in names])
    else:
        for name in names:
            out.write(name + "\n")
    return 0


# ---------------------------------------------------------------------------
# report
# ---------------------------------------------------------------------------


def _cmd_report(args, out) -> int:
    from pathlib import Path

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    strategies = _figure2_strategies(args)

    rows = figures.figure2_rows(strategies, args.min_n, args.max_n)
    rows += [r for r in figures.reference_rows() if args.min_n <= r.n <= args.max_n]

    figure2_csv = out_dir / "figure2.csv"
    with open(figure2_csv, "w", newline="") as fh:
        _write_csv(fh, ["strategy", "n", "proportion", "source"],
                   [[r.strategy, r.n, r.text, r.source] for r in rows])
    figure2_png = out_dir / "figure2.png"
    figures.render_proportion_plot(rows, figure2_png)

    table = figures.figure6_table()
    figure6_csv = out_dir / "figure6.csv"
    with open(figure6_csv, "w", newline="") as fh:
        _write_csv(fh, ["n", "inner", "outer", "asym", "table"], [
            [
                row["n"],
                *("" if row[k] is None else str(row[k]) for k in ("inner", "outer", "asym", "table")),
            ]
            for row in table
        ])

    written = [str(figure2_csv), str(figure2_png), str(figure6_csv)]
    if args.format == "json":
        _write_json(out, {"command": "report", "files": written})
    elif args.format == "csv":
        _write_csv(out, ["file"], [[w] for w in written])
    else:
        for path in written:
            out.write(path + "\n")
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _add_format(parser, default="text"):
    parser.add_argument("--format", choices=FORMATS, default=default,
                        help=f"output format (default {default})")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="napkin-lab",
        description="Exact analysis, optimality verification, and simulation "
                    "of adaptive seating strategies for the circular-table napkin game.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("exact", help="exact expected napkinless counts for one size")
    p.add_argument("--strategy", help="registered strategy name")
    p.add_argument("--strategy-file", help="decision-table file defining the strategy")
    p.add_argument("--n", type=int, required=True, help="component length / table size")
    _add_format(p)
    p.set_defaults(func=_cmd_exact)

    p = sub.add_parser("figure2", help="proportion of napkinless diners per table size")
    p.add_argument("--strategies", default="long-trap-setting,napkin-shunning",
                   help="comma-separated registered strategy names")
    p.add_argument("--strategy-file", help="additional decision-table strategy")
    p.add_argument("--min-n", type=int, default=3)
    p.add_argument("--max-n", type=int, default=50)
    p.add_argument("--include-reference", action="store_true",
                   help="append the shipped reference series (source=paper)")
    p.add_argument("--plot", help="also render the curves to this image file")
    _add_format(p, default="csv")
    p.set_defaults(func=_cmd_figure2)

    p = sub.add_parser("figure6", help="expected-count table for long trap setting, n 0..7")
    _add_format(p)
    p.set_defaults(func=_cmd_figure6)

    p = sub.add_parser("simulate", help="Monte Carlo run of the literal process")
    p.add_argument("--strategy", help="registered strategy name")
    p.add_argument("--strategy-file", help="decision-table file defining the strategy")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--engine", choices=("auto", "numba", "python"), default="auto")
    _add_format(p)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("verify", help="optimality and inequality verification suite")
    p.add_argument("--max-n", type=int, default=2000,
                   help="interval-optimality depth (default 2000)")
    p.add_argument("--raw-max-n", type=int, default=10,
                   help="raw-table search sweep upper bound, 0 to skip (default 10)")
    p.add_argument("--ineq-max-n", type=int, default=200,
                   help="inequality sweep depth (default 200)")
    p.add_argument("--corrupted-strategy", action="store_true",
                   help="verify a deliberately suboptimal rule instead (must fail)")
    _add_format(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("strategies", help="strategy registry")
    strategies_sub = p.add_subparsers(dest="subcommand", required=True)
    p_list = strategies_sub.add_parser("list", help="list registered strategies")
    _add_format(p_list)
    p_list.set_defaults(func=_cmd_strategies_list)

    p = sub.add_parser("report", help="write figure data, rendered plots, and tables to a directory")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--strategies", default="long-trap-setting,napkin-shunning")
    p.add_argument("--strategy-file", help="additional decision-table strategy")
    p.add_argument("--min-n", type=int, default=3)
    p.add_argument("--max-n", type=int, default=50)
    _add_format(p)
    p.set_defaults(func=_cmd_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, sys.stdout)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
