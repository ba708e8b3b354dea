"""Command line front end.

Subcommands: ``run`` (one optimizer run), ``sweep`` (cross-product
experiment), ``ecdf`` (aggregate run logs into a curve), ``table`` (best
method per strategy/repair/dimension), ``diag`` (tidy per-run traces).

Exit codes: 0 success, 2 validation error (bad flags or inputs, before any
objective evaluation), 1 runtime error.
"""

import argparse
import glob
import os
import sys

from .control import PCM_IDS
from .core import RunConfig
from .harness import (aggregate_logs, best_config_table, diag_path,
                      execute_run, extract_run_traces, read_diagnostics,
                      read_ecdf, read_runlog, runlog_path, sweep, write_ecdf,
                      write_table, write_traces)
from .mutation import STRATEGY_IDS
from .problems import FUNCTION_IDS, make_domain_layout
from .variation import REPAIR_MODES


def _add_config_flags(parser):
    parser.add_argument("--mu", type=int, default=100, help="population size")
    parser.add_argument("--p", type=float, default=0.05,
                        help="greediness of the p-best strategies")
    parser.add_argument("--archive", type=int, default=None,
                        help="archive capacity (default: --mu)")
    parser.add_argument("--budget-mult", type=int, default=10000,
                        help="evaluation budget per dimension")
    parser.add_argument("--seed", type=int, default=1, help="master seed")
    parser.add_argument("--out", required=True, help="output directory")


def _csv_list(text):
    return [v for v in text.split(",") if v]


def build_parser():
    parser = argparse.ArgumentParser(
        prog="mixde",
        description="Differential evolution for mixed-integer black-box "
                    "optimization, with a benchmarking harness.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute one run and write its log files")
    p_run.add_argument("--function", required=True, choices=FUNCTION_IDS)
    p_run.add_argument("--dim", type=int, required=True)
    p_run.add_argument("--instance", type=int, default=1)
    p_run.add_argument("--strategy", required=True, choices=STRATEGY_IDS)
    p_run.add_argument("--pcm", required=True, choices=PCM_IDS)
    p_run.add_argument("--repair", required=True, choices=REPAIR_MODES)
    _add_config_flags(p_run)

    p_sweep = sub.add_parser("sweep", help="run a cross-product of configurations")
    p_sweep.add_argument("--functions", required=True,
                         help=f"comma list from: {','.join(FUNCTION_IDS)}")
    p_sweep.add_argument("--dims", required=True, help="comma list of dimensions")
    p_sweep.add_argument("--strategies", required=True,
                         help=f"comma list from: {','.join(STRATEGY_IDS)}")
    p_sweep.add_argument("--pcms", required=True,
                         help=f"comma list from: {','.join(PCM_IDS)}")
    p_sweep.add_argument("--repairs", required=True,
                         help=f"comma list from: {','.join(REPAIR_MODES)}")
    p_sweep.add_argument("--runs", type=int, default=15,
                         help="instances per function (seeds 1..runs)")
    p_sweep.add_argument("--jobs", type=int, default=1,
                         help="concurrent runs; results are independent of this")
    _add_config_flags(p_sweep)

    p_ecdf = sub.add_parser("ecdf", help="aggregate run logs into an ECDF curve")
    p_ecdf.add_argument("--logs", required=True, help="directory of run_*.csv files")
    p_ecdf.add_argument("--out", required=True, help="output curve file")

    p_table = sub.add_parser("table", help="best method per strategy/repair/dimension")
    p_table.add_argument("--curves", required=True, help="directory of ECDF curve files")
    p_table.add_argument("--out", required=True, help="output table file")

    p_diag = sub.add_parser("diag", help="tidy per-run traces from a log pair")
    p_diag.add_argument("--runlog", required=True)
    p_diag.add_argument("--diagfile", required=True)
    p_diag.add_argument("--out", required=True)
    return parser


def _validate_ids(values, valid, what):
    unknown = [v for v in values if v not in valid]
    if unknown:
        raise ValueError(f"unknown {what}: {', '.join(unknown)}; "
                         f"valid: {', '.join(valid)}")
    if not values:
        raise ValueError(f"no {what} given")


def _cmd_run(args):
    make_domain_layout(args.dim)
    config = RunConfig(strategy=args.strategy, pcm=args.pcm, repair=args.repair,
                       mu=args.mu, p=args.p, archive_size=args.archive,
                       budget=args.budget_mult * args.dim, seed=args.seed)
    config.validate(args.dim)

    os.makedirs(args.out, exist_ok=True)
    log = execute_run(args.function, args.dim, args.instance, args.strategy,
                      args.pcm, args.repair, args.mu, args.p, args.archive,
                      args.budget_mult, args.seed, args.out)
    key = (args.function, args.dim, args.instance, args.strategy, args.pcm,
           args.repair)
    final = log.trace[-1][1] if log.trace else float("inf")
    print(f"run complete: {log.evals} evaluations, final error {final:.6g}")
    print(runlog_path(args.out, *key))
    print(diag_path(args.out, *key))
    return 0


def _cmd_sweep(args):
    functions = _csv_list(args.functions)
    dims = [int(v) for v in _csv_list(args.dims)]
    strategies = _csv_list(args.strategies)
    pcms = _csv_list(args.pcms)
    repairs = _csv_list(args.repairs)
    _validate_ids(functions, FUNCTION_IDS, "function")
    _validate_ids(strategies, STRATEGY_IDS, "strategy")
    _validate_ids(pcms, PCM_IDS, "pcm")
    _validate_ids(repairs, REPAIR_MODES, "repair mode")
    if args.runs < 1:
        raise ValueError(f"--runs must be >= 1, got {args.runs}")
    for n in dims:
        make_domain_layout(n)
        RunConfig(strategy=strategies[0], pcm=pcms[0], repair=repairs[0],
                  mu=args.mu, p=args.p, archive_size=args.archive,
                  budget=args.budget_mult * n, seed=args.seed).validate(n)

    executed, skipped = sweep(functions, dims, strategies, pcms, repairs,
                              args.out, runs=args.runs, mu=args.mu, p=args.p,
                              archive_size=args.archive,
                              budget_mult=args.budget_mult, seed=args.seed,
                              jobs=args.jobs)
    print(f"sweep complete: {executed} runs executed, {skipped} skipped (already present)")
    return 0


def _cmd_ecdf(args):
    paths = sorted(glob.glob(os.path.join(args.logs, "run_*.csv")))
    if not paths:
        raise ValueError(f"no run_*.csv files under {args.logs}")
    logs = [read_runlog(p) for p in paths]
    curve = aggregate_logs(logs)
    strategies = {log.strategy for log in logs}
    pcms = {log.pcm for log in logs}
    repairs = {log.repair for log in logs}
    meta = dict(strategy=strategies.pop() if len(strategies) == 1 else "",
                pcm=pcms.pop() if len(pcms) == 1 else "",
                repair=repairs.pop() if len(repairs) == 1 else "",
                n=logs[0].n)
    write_ecdf(curve, args.out, **meta)
    print(f"ecdf over {len(logs)} logs -> {args.out} "
          f"(final proportion {curve.proportion[-1]:.4f})")
    return 0


def _cmd_table(args):
    paths = sorted(glob.glob(os.path.join(args.curves, "*.csv")))
    if not paths:
        raise ValueError(f"no curve files under {args.curves}")
    curves = {}
    for path in paths:
        meta, curve = read_ecdf(path)
        if meta is None:
            raise ValueError(f"{path}: curve file lacks strategy/pcm/repair metadata")
        curves[meta] = curve
    rows = best_config_table(curves)
    write_table(rows, args.out)
    print(f"table with {len(rows)} rows -> {args.out}")
    return 0


def _cmd_diag(args):
    log = read_runlog(args.runlog)
    diag = read_diagnostics(args.diagfile)
    rows = extract_run_traces(log, diag)
    write_traces(rows, args.out)
    print(f"{len(rows)} trace rows -> {args.out}")
    return 0


_COMMANDS = {"run": _cmd_run, "sweep": _cmd_sweep, "ecdf": _cmd_ecdf,
             "table": _cmd_table, "diag": _cmd_diag}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"runtime error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
