"""Render filling-rate-versus-propagation-count curves to image files."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .harness import RunRecord

_COLORS = {
    "naive": "tab:green",
    "spiral": "tab:blue",
    "spiral-repulsion": "tab:red",
    "extrema": "tab:orange",
    "filling-rate": "tab:purple",
}


def render_filling_curves(records: list[RunRecord], path: str) -> None:
    """One subplot per image: filling rate versus propagation count.

    Every run contributes one curve, colored by strategy; seeds of the same
    strategy share a color and a single legend entry.
    """
    labels = sorted({rec.image for rec in records})
    if not labels:
        raise ValueError("no runs to plot")
    fig, axes = plt.subplots(
        1, len(labels), figsize=(5.2 * len(labels), 4.2), squeeze=False
    )
    for ax, label in zip(axes[0], labels):
        seen = set()
        for rec in sorted(
            (r for r in records if r.image == label),
            key=lambda r: (r.strategy, r.seed),
        ):
            xs = [s[0] for s in rec.samples]
            ys = [float(s[2]) for s in rec.samples]
            color = _COLORS.get(rec.strategy, "tab:gray")
            kwargs = {"color": color, "linewidth": 1.0, "alpha": 0.55}
            if rec.strategy not in seen:
                seen.add(rec.strategy)
                kwargs["label"] = rec.strategy
            ax.plot(xs, ys, **kwargs)
        ax.set_title(label)
        ax.set_xlabel("propagations")
        ax.set_ylabel("filling rate")
        ax.set_ylim(0.0, 1.02)
        ax.grid(True, linestyle=":", linewidth=0.5)
        ax.legend(loc="lower right", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
