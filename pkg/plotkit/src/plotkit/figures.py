"""Figure builders: ECDF comparisons and single-run diagnostic panels.

Builders return matplotlib figures so tests can read the plotted series
back; the save helpers render to png or svg.  Rendering is deterministic
for fixed inputs (fixed svg hash salt, no timestamps)."""

import matplotlib

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "plotkit"

import matplotlib.pyplot as plt
import numpy as np

from .io import read_diag_csv, read_ecdf_csv, read_runlog_csv

FORMATS = ("png", "svg")


def _check_format(fmt):
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}; valid: {', '.join(FORMATS)}")


def _save(fig, out, fmt):
    fig.savefig(out, format=fmt, metadata={"Date": None} if fmt == "svg" else None)
    plt.close(fig)
    return out


def build_ecdf_figure(paths, labels=None, normalize_by=None):
    """One proportion-of-targets curve per input file, log-scaled budget axis.

    normalize_by divides the evaluation axis by the problem dimension when
    given.  Labels default to metadata (or file order) and must be unique.
    """
    series = [read_ecdf_csv(p) for p in paths]
    if labels is None:
        labels = []
        for i, (p, s) in enumerate(zip(paths, series)):
            tag = s.meta.get("pcm") or None
            labels.append(tag if tag else f"curve {i + 1}")
    if len(labels) != len(paths):
        raise ValueError(f"{len(paths)} input files but {len(labels)} labels")
    if len(set(labels)) != len(labels):
        raise ValueError(f"labels must be unique, got {labels}")
    fig, ax = plt.subplots(figsize=(6, 4.5))
    for s, label in zip(series, labels):
        evals = s.evals / normalize_by if normalize_by else s.evals
        ax.plot(evals, s.proportion, label=label, drawstyle="steps-post")
    ax.set_xscale("log")
    ax.set_ylim(-0.02, 1.02)
    ax.set_xlabel("evaluations / n" if normalize_by else "evaluations")
    ax.set_ylabel("proportion of targets reached")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(loc="upper left", fontsize=8)
    fig.tight_layout()
    return fig


def plot_ecdf(paths, out, labels=None, fmt="png", normalize_by=None):
    _check_format(fmt)
    fig = build_ecdf_figure(paths, labels, normalize_by)
    return _save(fig, out, fmt)


def build_diagnostics_figure(runlog_path, diag_path):
    """Four-panel single-run view: error curve, population spread, control
    memories, and mean successful parameters (gaps where none succeeded).

    The two files must describe the same run.
    """
    run = read_runlog_csv(runlog_path)
    diag = read_diag_csv(diag_path)
    if run.meta != diag.meta:
        raise ValueError("run log and diagnostics metadata differ: "
                         f"{run.meta} vs {diag.meta}")

    fig, axes = plt.subplots(2, 2, figsize=(10, 7))
    (ax_err, ax_spread), (ax_mem, ax_par) = axes

    ax_err.plot(run.evals, run.f_delta, drawstyle="steps-post", color="tab:blue")
    ax_err.set_xscale("log")
    ax_err.set_yscale("log")
    ax_err.set_xlabel("evaluations")
    ax_err.set_ylabel("best-so-far error")
    ax_err.set_title("error")

    ax_spread.plot(diag.evals, diag.div, color="tab:blue", label="div")
    ax_spread.set_xlabel("evaluations")
    ax_spread.set_ylabel("div", color="tab:blue")
    twin = ax_spread.twinx()
    twin.plot(diag.evals, diag.nsame, color="tab:red", label="nsame")
    twin.set_ylabel("nsame", color="tab:red")
    twin.set_ylim(0, diag.meta["mu"] * 1.05)
    ax_spread.set_title("population spread")

    slots = diag.memory.shape[1]
    if slots:
        half = slots // 2
        for j in range(half):
            ax_mem.plot(diag.evals, diag.memory[:, j], color="tab:blue",
                        alpha=0.6, lw=0.8)
        for j in range(half, slots):
            ax_mem.plot(diag.evals, diag.memory[:, j], color="tab:red",
                        alpha=0.6, lw=0.8)
        ax_mem.plot([], [], color="tab:blue", label="scale-factor memory")
        ax_mem.plot([], [], color="tab:red", label="crossover-rate memory")
        ax_mem.legend(fontsize=8)
        ax_mem.set_ylim(-0.02, 1.02)
    else:
        ax_mem.annotate("no adaptive state", (0.5, 0.5),
                        xycoords="axes fraction", ha="center", va="center")
    ax_mem.set_xlabel("evaluations")
    ax_mem.set_title("control memories")

    # nan rows break the lines instead of implying parameter values of 0
    ax_par.plot(diag.evals, diag.mean_succ_s, color="tab:blue", label="mean succ. s")
    ax_par.plot(diag.evals, diag.mean_succ_c, color="tab:red", label="mean succ. c")
    ax_par.set_ylim(-0.02, 1.02)
    ax_par.set_xlabel("evaluations")
    ax_par.legend(fontsize=8)
    ax_par.set_title("successful parameters")

    meta = run.meta
    fig.suptitle(f"{meta['function']} n={meta['n']} i={meta['instance']} "
                 f"{meta['strategy']}/{meta['pcm']}/{meta['repair']}", fontsize=10)
    fig.tight_layout()
    return fig


def plot_diagnostics(runlog_path, diag_path, out, fmt="png"):
    _check_format(fmt)
    fig = build_diagnostics_figure(runlog_path, diag_path)
    return _save(fig, out, fmt)
