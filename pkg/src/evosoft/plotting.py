"""Figure rendering for the report path.

Every reporting recipe writes its delimited data first; these helpers
turn the same arrays into PNG figures saved next to the CSVs. Rendering
always goes through the Agg backend so runs work headless.
"""

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

_DPI = 150


def _finish(fig, ax, path, xlabel, ylabel, title):
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    ax.legend(loc="best", frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    return path


def ccdf_loglog(values, p_gt, path, fit_line=None, title="degree CCDF",
                xlabel="k", ylabel="P>(k)"):
    """Log-log CCDF scatter with an optional (x, y, label) fit overlay."""
    fig, ax = plt.subplots(figsize=(5, 4))
    mask = np.asarray(p_gt) > 0
    ax.loglog(np.asarray(values)[mask], np.asarray(p_gt)[mask], "o",
              ms=3.5, mfc="none", label="data")
    if fit_line is not None:
        fx, fy, flabel = fit_line
        ax.loglog(fx, fy, "-", lw=1.2, label=flabel)
    return _finish(fig, ax, path, xlabel, ylabel, title)


def avg_degree_vs_logn(n, avg_degree, path, slope=None, intercept=None,
                       title="average degree growth"):
    """Semilog-x plot of <K>(n) with an optional regression line."""
    fig, ax = plt.subplots(figsize=(5, 4))
    ax.semilogx(n, avg_degree, "o", ms=3.5, mfc="none", label="simulation")
    if slope is not None:
        xs = np.asarray(n, dtype=float)
        ax.semilogx(xs, slope * np.log(xs) + intercept, "-", lw=1.2,
                    label=f"fit: {slope:.3f} ln n + {intercept:.3f}")
    return _finish(fig, ax, path, "n", "<K>", title)


def rank_frequency(freqs, path, fit_curve=None, ylabel="frequency",
                   title="rank-frequency"):
    """Rank-ordered frequencies on a log y-axis with an optional fit."""
    fig, ax = plt.subplots(figsize=(5, 4))
    ranks = np.arange(1, len(freqs) + 1)
    ax.semilogy(ranks, freqs, "s", ms=4, mfc="none", label="observed")
    if fit_curve is not None:
        fy, flabel = fit_curve
        ax.semilogy(ranks, fy, "-", lw=1.2, label=flabel)
    return _finish(fig, ax, path, "rank", ylabel, title)


def diversity_series(diversity, capacity, path, title="language diversity"):
    fig, ax = plt.subplots(figsize=(5, 4))
    ax.plot(np.arange(len(diversity)), diversity, "-", lw=1.2,
            label="diversity")
    ax.axhline(capacity, color="k", ls="--", lw=1.0,
               label=f"niche capacity = {capacity}")
    return _finish(fig, ax, path, "sweep", "languages alive", title)


def trait_trajectories(series, path, title="mean trait"):
    """Overlay of labeled mean-trait series: [(label, values), ...]."""
    fig, ax = plt.subplots(figsize=(5, 4))
    for label, values in series:
        ax.plot(np.arange(len(values)), values, lw=1.2, label=label)
    return _finish(fig, ax, path, "generation", "mean z", title)


def weibull_diagnostic(values, p_gt, alpha, scale, path,
                       title="waiting-time CCDF"):
    """ln(-ln P>) against ln T, with the fitted line."""
    fig, ax = plt.subplots(figsize=(5, 4))
    v = np.asarray(values, dtype=float)
    p = np.asarray(p_gt, dtype=float)
    keep = (p > 0) & (p < 1) & (v > 0)
    x = np.log(v[keep])
    ax.plot(x, np.log(-np.log(p[keep])), "o", ms=3.5, mfc="none",
            label="data")
    ax.plot(x, alpha * (x - np.log(scale)), "-", lw=1.2,
            label=f"alpha = {alpha:.3f}")
    return _finish(fig, ax, path, "ln T", "ln(-ln P>)", title)


def paired_scores(first, second, path, labels=("original", "duplicated"),
                  title="complexity of paired streams"):
    """Scatter of paired per-item scores with the diagonal for reference."""
    fig, ax = plt.subplots(figsize=(5, 4))
    a = np.asarray(first, dtype=float)
    b = np.asarray(second, dtype=float)
    ax.plot(a, b, "o", ms=3.5, mfc="none", label="streams")
    lim = [min(a.min(), b.min()) * 0.98, max(a.max(), b.max()) * 1.02]
    ax.plot(lim, lim, "k--", lw=1.0, label="equal score")
    ax.set_xlim(lim)
    ax.set_ylim(lim)
    return _finish(fig, ax, path, labels[0], labels[1], title)
