"""Run persistence, the experiment sweep, and result tabulation.

File formats (all CSV, `#`-prefixed metadata line first):

* run log     -- ``# function,n,instance,strategy,pcm,repair,mu,seed,budget``
                 then ``eval,f_delta`` rows, improvements only, full
                 round-trip float precision.
* diagnostics -- same metadata line, then
                 ``t,evals,div,nsame,mean_succ_s,mean_succ_c,<memory...>``
                 rows; the mean fields are empty on all-failed iterations
                 and the memory columns flatten the control method's
                 snapshot (2 for p-ja, 20 for p-sha, none otherwise).
* ecdf        -- ``# strategy,pcm,repair,n,denominator`` then
                 ``eval_grid_point,proportion`` rows.
"""

import itertools
import os
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .control import PCM_IDS
from .core import RunConfig, RunLog, run
from .metrics import EcdfCurve, ecdf, make_eval_grid, make_targets
from .problems import make_problem


def _fmt(x):
    return repr(float(x))


def meta_tuple(log):
    return (log.function, log.n, log.instance, log.strategy, log.pcm,
            log.repair, log.mu, log.seed, log.budget)


def _meta_line(log):
    return "# " + ",".join(str(v) for v in meta_tuple(log))


def _parse_meta(line, path):
    if not line.startswith("#"):
        raise ValueError(f"{path}: missing metadata line")
    parts = line.lstrip("#").strip().split(",")
    if len(parts) != 9:
        raise ValueError(f"{path}: malformed metadata line")
    return RunLog(function=parts[0], n=int(parts[1]), instance=int(parts[2]),
                  strategy=parts[3], pcm=parts[4], repair=parts[5],
                  mu=int(parts[6]), seed=int(parts[7]), budget=int(parts[8]))


def _atomic_write(path, text):
    tmp = f"{path}.tmp"
    with open(tmp, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def write_runlog(log, path):
    lines = [_meta_line(log)]
    lines.extend(f"{e},{_fmt(fd)}" for e, fd in log.trace)
    _atomic_write(path, "\n".join(lines) + "\n")


def read_runlog(path):
    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    log = _parse_meta(lines[0], path)
    for ln in lines[1:]:
        e, fd = ln.split(",")
        log.trace.append((int(e), float(fd)))
    return log


def write_diagnostics(log, path):
    lines = [_meta_line(log)]
    for t, evals, div, nsame, ms, mc, snap in log.diagnostics:
        cells = [str(t), str(evals), _fmt(div), str(nsame),
                 "" if ms is None else _fmt(ms),
                 "" if mc is None else _fmt(mc)]
        cells.extend(_fmt(v) for v in snap)
        lines.append(",".join(cells))
    _atomic_write(path, "\n".join(lines) + "\n")


def read_diagnostics(path):
    """Diagnostics rows plus their metadata, as a RunLog with empty trace."""
    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    log = _parse_meta(lines[0], path)
    for ln in lines[1:]:
        cells = ln.split(",")
        ms = float(cells[4]) if cells[4] else None
        mc = float(cells[5]) if cells[5] else None
        snap = tuple(float(v) for v in cells[6:])
        log.diagnostics.append((int(cells[0]), int(cells[1]), float(cells[2]),
                                int(cells[3]), ms, mc, snap))
    return log


def write_ecdf(curve, path, strategy="", pcm="", repair="", n=""):
    lines = [f"# {strategy},{pcm},{repair},{n},{curve.denominator}"]
    lines.extend(f"{int(e)},{_fmt(p)}" for e, p in zip(curve.grid, curve.proportion))
    _atomic_write(path, "\n".join(lines) + "\n")


def read_ecdf(path):
    """Returns ((strategy, pcm, repair, n) or None, EcdfCurve)."""
    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    meta = None
    denominator = 0
    start = 0
    if lines and lines[0].startswith("#"):
        parts = lines[0].lstrip("#").strip().split(",")
        if len(parts) == 5 and all(parts[:4]):
            meta = (parts[0], parts[1], parts[2], int(parts[3]))
        if len(parts) == 5 and parts[4]:
            denominator = int(parts[4])
        start = 1
    grid, prop = [], []
    for ln in lines[start:]:
        e, p = ln.split(",")
        grid.append(int(float(e)))
        prop.append(float(p))
    curve = EcdfCurve(grid=np.array(grid, dtype=np.int64),
                      proportion=np.array(prop), denominator=denominator)
    return meta, curve


def run_basename(function, n, instance, strategy, pcm, repair):
    return f"{function}_n{n}_i{instance}_{strategy}_{pcm}_{repair}"


def runlog_path(out_dir, *key):
    return os.path.join(out_dir, f"run_{run_basename(*key)}.csv")


def diag_path(out_dir, *key):
    return os.path.join(out_dir, f"diag_{run_basename(*key)}.csv")


def execute_run(function, n, instance, strategy, pcm, repair, mu, p,
                archive_size, budget_mult, seed, out_dir):
    """One run end to end: build, optimize, persist.  Returns the log."""
    problem = make_problem(function, n, instance)
    config = RunConfig(strategy=strategy, pcm=pcm, repair=repair, mu=mu, p=p,
                       archive_size=archive_size, budget=budget_mult * n, seed=seed)
    log = run(config, problem)
    key = (function, n, instance, strategy, pcm, repair)
    write_runlog(log, runlog_path(out_dir, *key))
    write_diagnostics(log, diag_path(out_dir, *key))
    return log


def _sweep_worker(args):
    execute_run(*args)
    return args


def sweep(functions, dims, strategies, pcms, repairs, out_dir, runs=15,
          mu=100, p=0.05, archive_size=None, budget_mult=10000, seed=1, jobs=1):
    """Cross-product experiment: every combination, instances 1..runs.

    Existing complete logs (both files present) are skipped, so an
    interrupted sweep resumes where it stopped.  Returns (executed,
    skipped) counts.
    """
    os.makedirs(out_dir, exist_ok=True)
    pending = []
    skipped = 0
    for function, n, strategy, pcm, repair, instance in itertools.product(
            functions, dims, strategies, pcms, repairs, range(1, runs + 1)):
        key = (function, n, instance, strategy, pcm, repair)
        if os.path.exists(runlog_path(out_dir, *key)) and \
                os.path.exists(diag_path(out_dir, *key)):
            skipped += 1
            continue
        pending.append((function, n, instance, strategy, pcm, repair,
                        mu, p, archive_size, budget_mult, seed, out_dir))
    if jobs > 1 and len(pending) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            list(pool.map(_sweep_worker, pending))
    else:
        for args in pending:
            _sweep_worker(args)
    return len(pending), skipped


def aggregate_logs(logs, grid=None):
    """ECDF over run logs sharing one dimension (and hence target set)."""
    logs = list(logs)
    if not logs:
        raise ValueError("no run logs to aggregate")
    ns = {log.n for log in logs}
    if len(ns) != 1:
        raise ValueError(f"logs mix dimensions: {sorted(ns)}")
    if grid is None:
        grid = make_eval_grid(max(log.budget for log in logs))
    return ecdf(logs, make_targets(), grid)


def best_config_table(curves):
    """Best control method per (strategy, repair, n).

    ``curves`` maps (strategy, pcm, repair, n) to an EcdfCurve.  Winner is
    the largest final proportion; ties fall back to the second-to-last grid
    point, then to the lexicographically smallest method id.  Methods with
    no curve in a group are reported as gaps, not errors.
    """
    groups = {}
    for (strategy, pcm, repair, n), curve in curves.items():
        groups.setdefault((strategy, repair, n), {})[pcm] = curve
    rows = []
    for (strategy, repair, n), cell in sorted(groups.items()):
        ranked = sorted(
            cell.items(),
            key=lambda kv: (-kv[1].proportion[-1],
                            -(kv[1].proportion[-2] if len(kv[1].proportion) > 1
                              else kv[1].proportion[-1]),
                            kv[0]))
        best_pcm, best_curve = ranked[0]
        missing = tuple(p for p in PCM_IDS if p not in cell)
        rows.append((strategy, repair, n, best_pcm,
                     float(best_curve.proportion[-1]), missing))
    return rows


def write_table(rows, path):
    lines = ["strategy,repair,n,best_pcm,final_proportion,missing_pcms"]
    for strategy, repair, n, pcm, prop, missing in rows:
        lines.append(f"{strategy},{repair},{n},{pcm},{_fmt(prop)},{' '.join(missing)}")
    _atomic_write(path, "\n".join(lines) + "\n")


def extract_run_traces(log, diag):
    """Flatten one run's files into tidy (panel, series, x, y) rows.

    ``log`` supplies the error curve, ``diag`` the per-iteration series;
    their metadata must agree.
    """
    if meta_tuple(log) != meta_tuple(diag):
        raise ValueError("run log and diagnostics metadata differ: "
                         f"{meta_tuple(log)} vs {meta_tuple(diag)}")
    rows = [("error", "f_delta", e, fd) for e, fd in log.trace]
    memory_names = None
    for t, evals, div, nsame, ms, mc, snap in diag.diagnostics:
        rows.append(("spread", "div", evals, div))
        rows.append(("spread", "nsame", evals, nsame))
        if snap:
            if memory_names is None:
                h = len(snap) // 2
                if h == 1:
                    memory_names = ["m_s", "m_c"]
                else:
                    memory_names = [f"m_s[{j + 1}]" for j in range(h)] + \
                                   [f"m_c[{j + 1}]" for j in range(h)]
            for name, value in zip(memory_names, snap):
                rows.append(("memory", name, evals, value))
        if ms is not None:
            rows.append(("params", "mean_succ_s", evals, ms))
            rows.append(("params", "mean_succ_c", evals, mc))
    return rows


def write_traces(rows, path):
    lines = ["panel,series,x,y"]
    lines.extend(f"{p},{s},{x},{_fmt(y)}" for p, s, x, y in rows)
    _atomic_write(path, "\n".join(lines) + "\n")
