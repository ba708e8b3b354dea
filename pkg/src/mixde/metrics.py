"""Targets and ECDF aggregation over run traces."""

from dataclasses import dataclass

import numpy as np


def make_targets():
    """The 51 log-spaced error targets 10^2, 10^1.8, ..., 10^-8 (descending).

    Run traces store the error f - f_opt, so targets live in error space; a
    target delta counts as reached once the trace error falls to delta or
    below.
    """
    return 10.0 ** (2.0 - 0.2 * np.arange(51))


def make_eval_grid(budget, points=61):
    """Log-spaced evaluation counts from 1 to the budget, deduplicated."""
    if budget < 1:
        raise ValueError(f"budget must be >= 1, got {budget}")
    grid = np.unique(np.rint(np.logspace(0.0, np.log10(budget), points)).astype(np.int64))
    return grid


@dataclass
class EcdfCurve:
    """Proportion of (run, target) pairs reached per evaluation grid point."""

    grid: np.ndarray
    proportion: np.ndarray
    denominator: int


def ecdf(logs, deltas, grid):
    """Proportion of targets reached within each grid budget, over all logs.

    A (log, delta) pair counts as reached at grid point e when some trace
    entry of the log has eval_index <= e and error <= delta.  The
    denominator is len(logs) * len(deltas).
    """
    logs = list(logs)
    if not logs:
        raise ValueError("ecdf of an empty log set")
    deltas = np.asarray(deltas, dtype=float)
    grid = np.asarray(grid, dtype=np.int64)
    n_targets = len(deltas)
    asc = np.sort(deltas)
    hits = np.zeros(len(grid), dtype=np.int64)
    for log in logs:
        if not log.trace:
            continue
        evals = np.array([e for e, _ in log.trace], dtype=np.int64)
        errs = np.array([fd for _, fd in log.trace], dtype=float)
        # best error achieved within each grid budget (trace is already the
        # improvement sequence, so the last entry <= e holds the best)
        pos = np.searchsorted(evals, grid, side="right") - 1
        have = pos >= 0
        best = np.where(have, errs[np.maximum(pos, 0)], np.inf)
        hits += n_targets - np.searchsorted(asc, best, side="left")
    denominator = len(logs) * n_targets
    return EcdfCurve(grid=grid, proportion=hits / denominator, denominator=denominator)
