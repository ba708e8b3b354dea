"""Readers for the benchmark CSV formats.

Three file kinds, all plain CSV with an optional leading ``#`` metadata
line:

* ECDF curve   -- ``eval_grid_point,proportion`` rows
* run log      -- metadata ``function,n,instance,strategy,pcm,repair,mu,
                  seed,budget``; ``eval,f_delta`` rows (improvements only)
* diagnostics  -- same metadata; ``t,evals,div,nsame,mean_succ_s,
                  mean_succ_c,<memory...>`` rows, mean fields empty on
                  all-failed iterations

Parsing is deliberately self-contained: the files are the interface to the
optimizer package, not its internals.
"""

from dataclasses import dataclass, field

import numpy as np

META_FIELDS = ("function", "n", "instance", "strategy", "pcm", "repair",
               "mu", "seed", "budget")


class ParseError(ValueError):
    """Malformed input file; message names the file and line."""


def _fail(path, lineno, why):
    raise ParseError(f"{path}:{lineno}: {why}")


def _float(cell, path, lineno):
    try:
        return float(cell)
    except ValueError:
        _fail(path, lineno, f"not a number: {cell!r}")


def _read_lines(path):
    with open(path) as fh:
        return [ln.rstrip("\n") for ln in fh]


def _parse_run_meta(line, path):
    parts = line.lstrip("#").strip().split(",")
    if len(parts) != len(META_FIELDS):
        _fail(path, 1, f"metadata line needs {len(META_FIELDS)} fields, got {len(parts)}")
    meta = dict(zip(META_FIELDS, parts))
    for key in ("n", "instance", "mu", "seed", "budget"):
        try:
            meta[key] = int(meta[key])
        except ValueError:
            _fail(path, 1, f"metadata field {key} is not an integer: {meta[key]!r}")
    return meta


@dataclass
class EcdfSeries:
    evals: np.ndarray
    proportion: np.ndarray
    meta: dict = field(default_factory=dict)


def read_ecdf_csv(path):
    lines = _read_lines(path)
    meta = {}
    start = 0
    if lines and lines[0].startswith("#"):
        parts = lines[0].lstrip("#").strip().split(",")
        if len(parts) == 5:
            meta = {"strategy": parts[0], "pcm": parts[1], "repair": parts[2],
                    "n": parts[3], "denominator": parts[4]}
        start = 1
    evals, prop = [], []
    for lineno, ln in enumerate(lines[start:], start=start + 1):
        if not ln.strip():
            continue
        cells = ln.split(",")
        if len(cells) != 2:
            _fail(path, lineno, f"expected 2 columns, got {len(cells)}")
        evals.append(_float(cells[0], path, lineno))
        prop.append(_float(cells[1], path, lineno))
    if not evals:
        _fail(path, len(lines) or 1, "no data rows")
    return EcdfSeries(evals=np.array(evals), proportion=np.array(prop), meta=meta)


@dataclass
class RunTrace:
    meta: dict
    evals: np.ndarray
    f_delta: np.ndarray


def read_runlog_csv(path):
    lines = _read_lines(path)
    if not lines or not lines[0].startswith("#"):
        _fail(path, 1, "missing metadata line")
    meta = _parse_run_meta(lines[0], path)
    evals, fds = [], []
    for lineno, ln in enumerate(lines[1:], start=2):
        if not ln.strip():
            continue
        cells = ln.split(",")
        if len(cells) != 2:
            _fail(path, lineno, f"expected 2 columns, got {len(cells)}")
        evals.append(int(_float(cells[0], path, lineno)))
        fds.append(_float(cells[1], path, lineno))
    return RunTrace(meta=meta, evals=np.array(evals, dtype=np.int64),
                    f_delta=np.array(fds))


@dataclass
class DiagTrace:
    meta: dict
    t: np.ndarray
    evals: np.ndarray
    div: np.ndarray
    nsame: np.ndarray
    mean_succ_s: np.ndarray  # nan on all-failed iterations
    mean_succ_c: np.ndarray
    memory: np.ndarray       # (iterations, slots); zero columns when stateless


def read_diag_csv(path):
    lines = _read_lines(path)
    if not lines or not lines[0].startswith("#"):
        _fail(path, 1, "missing metadata line")
    meta = _parse_run_meta(lines[0], path)
    rows = []
    width = None
    for lineno, ln in enumerate(lines[1:], start=2):
        if not ln.strip():
            continue
        cells = ln.split(",")
        if len(cells) < 6:
            _fail(path, lineno, f"expected at least 6 columns, got {len(cells)}")
        if width is None:
            width = len(cells)
        elif len(cells) != width:
            _fail(path, lineno, f"ragged row: {len(cells)} columns, expected {width}")
        ms = float("nan") if cells[4] == "" else _float(cells[4], path, lineno)
        mc = float("nan") if cells[5] == "" else _float(cells[5], path, lineno)
        memory = [_float(cell, path, lineno) for cell in cells[6:]]
        rows.append((int(_float(cells[0], path, lineno)),
                     int(_float(cells[1], path, lineno)),
                     _float(cells[2], path, lineno),
                     int(_float(cells[3], path, lineno)), ms, mc, memory))
    if not rows:
        _fail(path, len(lines) or 1, "no data rows")
    return DiagTrace(
        meta=meta,
        t=np.array([r[0] for r in rows], dtype=np.int64),
        evals=np.array([r[1] for r in rows], dtype=np.int64),
        div=np.array([r[2] for r in rows]),
        nsame=np.array([r[3] for r in rows], dtype=np.int64),
        mean_succ_s=np.array([r[4] for r in rows]),
        mean_succ_c=np.array([r[5] for r in rows]),
        memory=np.array([r[6] for r in rows]),
    )
