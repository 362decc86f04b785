"""Figures written straight to files (SVG by default).

matplotlib runs on the Agg backend; ids and metadata are pinned so the
same inputs always give the same SVG bytes.
"""

from __future__ import annotations

import itertools
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .depths import METHODS  # noqa: E402

STYLE = {
    "svg.hashsalt": "gldepth",
    "svg.fonttype": "none",
    "font.size": 9,
    "axes.labelsize": 9,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "axes.spines.top": False,
    "axes.spines.right": False,
}


def _save(fig, path):
    path = Path(path)
    fmt = path.suffix.lstrip(".") or "svg"
    meta = {"Date": None} if fmt == "svg" else None
    fig.savefig(path, format=fmt, metadata=meta, bbox_inches="tight")
    plt.close(fig)
    return path


def study_boxplot(result, path, title=None):
    """Boxplots of the Spearman coefficients of one model, y fixed to [-1, 1]."""
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(5.0, 3.2))
        ax.boxplot([result.coefficients[:, j] for j in range(len(METHODS))],
                   tick_labels=[str(m) for m in METHODS], widths=0.5)
        ax.axhline(0.0, color="0.7", lw=0.6, zorder=0)
        ax.set_ylim(-1.0, 1.0)
        ax.set_ylabel("Spearman coefficient")
        ax.set_title(title or f"Model {result.model_id}")
        return _save(fig, path)


def rank_pairs(rank_map, path):
    """Scatter plots of every pair of depth-based rank vectors."""
    methods = [m for m in METHODS if m in rank_map]
    pairs = list(itertools.combinations(methods, 2))
    ncols = 5 if len(pairs) > 5 else max(1, len(pairs))
    nrows = -(-len(pairs) // ncols)
    with plt.rc_context(STYLE):
        fig, axes = plt.subplots(nrows, ncols, figsize=(2.2 * ncols, 2.2 * nrows),
                                 squeeze=False)
        for ax, (a, b) in zip(axes.flat, pairs):
            ax.scatter(rank_map[a], rank_map[b], s=6, c="k", lw=0)
            ax.set_xlabel(f"{a} rank")
            ax.set_ylabel(f"{b} rank")
            ax.set_aspect("equal", adjustable="datalim")
        for ax in list(axes.flat)[len(pairs):]:
            ax.set_axis_off()
        fig.tight_layout()
        return _save(fig, path)


def rank_scatter(x_ranks, y_ranks, path, xlabel="FSD rank", ylabel="KFSD rank",
                 groups=None):
    """One rank-versus-rank scatter, optionally marking groups."""
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(3.6, 3.6))
        if groups is None:
            ax.scatter(x_ranks, y_ranks, s=10, facecolors="none", edgecolors="k")
        else:
            for g, marker in zip(sorted(set(groups)), "os^Dv"):
                sel = [i for i, gi in enumerate(groups) if gi == g]
                ax.scatter([x_ranks[i] for i in sel], [y_ranks[i] for i in sel],
                           s=12, marker=marker, facecolors="none",
                           edgecolors="k", label=str(g))
            ax.legend(frameon=False)
        ax.set_xlabel(xlabel)
        ax.set_ylabel(ylabel)
        return _save(fig, path)


def plot_curves(sample, path, title=None, highlight=None):
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(5.0, 3.2))
        t = sample.grid.points
        ax.plot(t, sample.values.T, color="0.55", lw=0.5)
        for k in highlight or ():
            ax.plot(t, sample.values[k], color="k", lw=1.2, ls="--")
        ax.set_xlabel("t")
        ax.set_ylabel("x(t)")
        if title:
            ax.set_title(title)
        return _save(fig, path)
