"""Figure rendering for the statistics report path."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt


def render_loss_histogram(stats, path):
    """Histogram of per-trial observed precision loss."""
    losses = [r.observed_loss for r in stats.records if r.observed_loss is not None]
    fig, ax = plt.subplots(figsize=(6, 4))
    if losses:
        bins = min(20, max(5, len(set(losses))))
        ax.hist(losses, bins=bins, color="#4878d0", edgecolor="black")
    spec = stats.spec
    ax.set_xlabel("observed precision loss (digits)")
    ax.set_ylabel("trials")
    ax.set_title(
        f"d={list(spec.degrees)}, p={spec.prime}, N={spec.prec}, "
        f"{'affine' if spec.affine else 'homogeneous'}, {stats.pipeline}"
    )
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def render_loss_scatter(stats, path):
    """Observed loss against the certified budget, trial by trial."""
    pts = [
        (r.predicted_loss, r.observed_loss)
        for r in stats.records
        if r.observed_loss is not None and r.predicted_loss is not None
    ]
    fig, ax = plt.subplots(figsize=(6, 4))
    if pts:
        xs, ys = zip(*pts)
        ax.scatter(xs, ys, s=18, color="#d65f5f", zorder=3)
        lim = max(max(xs), max(ys), 1)
        ax.plot([0, lim], [0, lim], color="gray", linewidth=1, linestyle="--", label="budget")
        ax.legend()
    ax.set_xlabel("certified loss budget (digits)")
    ax.set_ylabel("observed loss (digits)")
    ax.set_title("observed vs certified precision loss")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def render_report_figures(stats, outdir):
    """Both figures next to the delimited trial log; returns the paths."""
    from pathlib import Path

    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    return [
        render_loss_histogram(stats, outdir / "loss_hist.png"),
        render_loss_scatter(stats, outdir / "loss_vs_budget.png"),
    ]
