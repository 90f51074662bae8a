"""Figures for the CLI: Cayley tables of endomorphism monoids and search counts.

Everything renders with the Agg backend straight to a file, so no display is
needed.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
from matplotlib.patches import Rectangle  # noqa: E402

from .monoid import FiniteMonoid, idempotents  # noqa: E402


def cayley_figure(M: FiniteMonoid, title: str | None = None):
    """Heatmap of the multiplication table, idempotent rows and columns outlined."""
    n = M.order
    names = [M.name(i) for i in range(n)]
    side = max(3.0, 0.45 * n + 1.5)
    fig, ax = plt.subplots(figsize=(side, side))
    ax.imshow(M.array, cmap="viridis", vmin=0, vmax=max(n - 1, 1))
    if n <= 16:
        for i in range(n):
            for j in range(n):
                ax.text(j, i, names[M.mul(i, j)], ha="center", va="center",
                        fontsize=7 if n > 8 else 9, color="w")
    for e in idempotents(M):
        ax.add_patch(Rectangle((e - 0.5, e - 0.5), 1, 1, fill=False, edgecolor="red", linewidth=2))
    ticks = np.arange(n)
    ax.set_xticks(ticks)
    ax.set_yticks(ticks)
    ax.set_xticklabels(names, rotation=90 if n > 8 else 0)
    ax.set_yticklabels(names)
    ax.set_xlabel("right factor")
    ax.set_ylabel("left factor")
    ax.set_title(title or f"monoid of order {n} (idempotents outlined)")
    fig.tight_layout()
    return fig


def search_figure(stats: dict, title: str | None = None):
    """Bars of monoids per order with counterexample counts overlaid."""
    orders = sorted(int(k) for k in stats)
    total = [stats[k]["monoids"] for k in orders]
    hits = [stats[k]["counterexamples"] for k in orders]
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.bar(orders, total, color="0.75", label="monoids")
    ax.bar(orders, hits, color="tab:red", label="counterexamples")
    ax.set_yscale("log")
    ax.set_xticks(orders)
    ax.set_xlabel("order")
    ax.set_ylabel("count")
    ax.set_title(title or "monoids up to isomorphism")
    ax.legend(frameon=False)
    fig.tight_layout()
    return fig


def save(fig, path) -> None:
    fig.savefig(path, dpi=120)
    plt.close(fig)
