"""Command-line front end.

Usage:
    dicketopo analyze 3 1 --oracle           # closed forms + statevector cross-check
    dicketopo cascade 6 3 --steps 6 --seed 7 # seeded measurement cascade (JSON)
    dicketopo sweep 8 --verify               # CSV over every (n, k), n <= 8
    dicketopo compare 4                      # GHZ vs W vs balanced Dicke

Exit codes: 0 success, 1 closed-form/oracle discrepancy, 2 usage error,
3 request beyond the dense-engine cap.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from .dicke import DickeSpec
from .exceptions import DicketopoError, TooLargeError
from .measurement import SEED_MAX, sample_cascade
from .report import (
    ORACLE_MAX_QUBITS,
    SWEEP_COLUMNS,
    AnalysisReport,
    analyze,
    compare,
    sweep_rows,
    table_text,
    write_sweep_csv,
)

SEED_ENV = "DICKETOPO_SEED"
EXIT_DISCREPANCY = 1
EXIT_USAGE = 2
EXIT_TOO_LARGE = 3


def _seed(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}")
    if not 0 <= value <= SEED_MAX:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return value


def _nonneg(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "table"), default=None)
    common.add_argument("--seed", type=_seed, default=None,
                        help=f"cascade seed (default: ${SEED_ENV} or 0)")
    common.add_argument("--verify", action="store_true",
                        help="cross-check closed forms against the statevector oracle")
    common.add_argument("--oracle", action="store_true",
                        help="attach statevector oracle results (n <= %d)" % ORACLE_MAX_QUBITS)

    parser = argparse.ArgumentParser(prog="dicketopo", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="closed-form report for one (n, k)")
    p.add_argument("n", type=_nonneg)
    p.add_argument("k", type=_nonneg)

    p = sub.add_parser("cascade", parents=[common], help="seeded measurement cascade")
    p.add_argument("n", type=_nonneg)
    p.add_argument("k", type=_nonneg)
    p.add_argument("--steps", type=_nonneg, default=None, help="default: n")

    p = sub.add_parser("sweep", parents=[common], help="table over every (n, k) up to n_max")
    p.add_argument("n_max", type=_nonneg)

    p = sub.add_parser("compare", parents=[common], help="GHZ_n vs W_n vs balanced Dicke")
    p.add_argument("n", type=_nonneg)
    return parser


def _spec(parser, n: int, k: int) -> DickeSpec:
    if n < 1 or k > n:
        parser.error(f"need n >= 1 and 0 <= k <= n, got n={n}, k={k}")
    return DickeSpec(n, k)


def _emit_analysis(report: AnalysisReport, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report.as_dict(), indent=2) + "\n"
    if fmt == "csv":
        return write_sweep_csv([report.sweep_row()])
    row = report.sweep_row()
    text = table_text(["field", "value"], [[c, row[c]] for c in SWEEP_COLUMNS])
    flu = report.fluidity
    text += f"fluidity: {flu.fluidity} ({flu.regime.value}); residuals {flu.residual_fluidities}\n"
    if report.oracle is not None:
        o = report.oracle
        text += f"oracle coherence: {o.coherence!r}; schmidt {o.schmidt.coefficients} rank {o.schmidt.rank}\n"
        for rec in o.branch_table:
            text += f"  outcome {rec.outcome}: p={rec.probability!r} residual={rec.residual_spec}\n"
    for d in report.discrepancies:
        text += f"DISCREPANCY {d.field}: closed={d.closed_form!r} oracle={d.oracle!r} |delta|={d.delta:.3g}\n"
    return text


def _cmd_analyze(parser, args) -> int:
    spec = _spec(parser, args.n, args.k)
    oracle = args.oracle or args.verify
    try:
        report = analyze(spec, oracle=oracle)
    except TooLargeError as exc:
        print(f"dicketopo: {exc}", file=sys.stderr)
        return EXIT_TOO_LARGE
    sys.stdout.write(_emit_analysis(report, args.format or "json"))
    return 0 if report.ok else EXIT_DISCREPANCY


def _cmd_cascade(parser, args) -> int:
    spec = _spec(parser, args.n, args.k)
    steps = spec.n if args.steps is None else args.steps
    if steps > spec.n:
        parser.error(f"cascade longer than system: {steps} steps on {spec.n} qubits")
    seed = args.seed
    if seed is None:
        env = os.environ.get(SEED_ENV)
        try:
            seed = _seed(env) if env else 0
        except argparse.ArgumentTypeError as exc:
            parser.error(f"${SEED_ENV}: {exc}")
    trace = sample_cascade(spec, steps, seed)
    fmt = args.format or "json"
    if fmt == "json":
        sys.stdout.write(trace.to_json() + "\n")
    else:
        header = ["step", "qubit", "outcome", "probability", "residual_n", "residual_k"]
        rows = [
            [i + 1, r.qubit, r.outcome, r.as_dict()["probability"], r.residual_spec.n, r.residual_spec.k]
            for i, r in enumerate(trace.records)
        ]
        if fmt == "csv":
            sys.stdout.write(",".join(header) + "\n")
            sys.stdout.writelines(",".join(map(str, r)) + "\n" for r in rows)
        else:
            sys.stdout.write(f"cascade {spec.n} {spec.k} seed={seed}\n" + table_text(header, rows))
    return 0


def _cmd_sweep(parser, args) -> int:
    if args.n_max < 1:
        parser.error("n_max must be >= 1")
    reports = sweep_rows(args.n_max, verify=args.verify or args.oracle)
    fmt = args.format or "csv"
    rows = [r.sweep_row() for r in reports]
    if fmt == "csv":
        sys.stdout.write(write_sweep_csv(rows))
    elif fmt == "json":
        sys.stdout.write(json.dumps(rows, indent=2) + "\n")
    else:
        sys.stdout.write(table_text(list(SWEEP_COLUMNS), [[r[c] for c in SWEEP_COLUMNS] for r in rows]))
    bad = [(r.spec, d) for r in reports for d in r.discrepancies]
    for spec, d in bad:
        print(f"discrepancy at ({spec.n},{spec.k}) {d.field}: |delta|={d.delta:.3g}", file=sys.stderr)
    return EXIT_DISCREPANCY if bad else 0


def _cmd_compare(parser, args) -> int:
    if not 3 <= args.n <= ORACLE_MAX_QUBITS:
        parser.error(f"compare needs 3 <= n <= {ORACLE_MAX_QUBITS}, got {args.n}")
    summaries = compare(args.n)
    fmt = args.format or "json"
    if fmt == "json":
        sys.stdout.write(json.dumps(summaries, indent=2) + "\n")
        return 0
    header = ["state", "coherence", "rank", "outcome", "p", "residual_ranks", "residual_coherence", "class"]
    rows = []
    for s in summaries:
        for b in s["branches"]:
            rows.append([
                s["name"], s["initial_coherence"], s["initial_rank"], b["outcome"], b["probability"],
                " ".join(map(str, b.get("residual_ranks", []))) or "-",
                b.get("residual_coherence", "-"), s["topology"]["class"],
            ])
    if fmt == "csv":
        sys.stdout.write(",".join(header) + "\n")
        sys.stdout.writelines(",".join(map(str, r)) + "\n" for r in rows)
    else:
        sys.stdout.write(table_text(header, rows))
    return 0


COMMANDS = {
    "analyze": _cmd_analyze,
    "cascade": _cmd_cascade,
    "sweep": _cmd_sweep,
    "compare": _cmd_compare,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](parser, args)
    except DicketopoError as exc:
        print(f"dicketopo: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
