"""Matplotlib figures written next to the CSV/JSON reports.

PNG metadata is stripped so repeated runs produce identical files.
"""

from __future__ import annotations

from pathlib import Path
from typing import TYPE_CHECKING

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .lsi import is_similar  # noqa: E402

if TYPE_CHECKING:
    from .lsi import SimilarityMatrix  # noqa: F401
    from .pipeline import Analysis

_SAVE = dict(dpi=100, metadata={"Software": None})

plt.rcParams.update({
    "font.size": 8,
    "axes.titlesize": 10,
    "figure.facecolor": "white",
})


def similarity_heatmap(sim: SimilarityMatrix, path: str | Path,
                       threshold: float | None = None, title: str = "") -> Path:
    """Heatmap of a similarity matrix; cells at or above *threshold* are outlined."""
    rows, cols = sim.values.shape
    fig, ax = plt.subplots(figsize=(1.2 + 0.6 * cols, 1.0 + 0.4 * rows))
    im = ax.imshow(sim.values, vmin=-1, vmax=1, cmap="RdBu_r", aspect="auto")
    ax.set_xticks(range(cols), sim.col_labels, rotation=45, ha="right")
    ax.set_yticks(range(rows), sim.row_labels)
    for i in range(rows):
        for j in range(cols):
            v = sim.values[i, j]
            ax.text(j, i, f"{round(float(v), 2) + 0.0:.2f}", ha="center", va="center", fontsize=7,
                    color="white" if abs(v) > 0.6 else "black")
            if threshold is not None and is_similar(float(v), threshold):
                ax.add_patch(plt.Rectangle((j - 0.5, i - 0.5), 1, 1, fill=False,
                                           edgecolor="black", linewidth=1.5))
    fig.colorbar(im, ax=ax, fraction=0.046, pad=0.04)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, **_SAVE)
    plt.close(fig)
    return Path(path)


def feature_matrix(analysis: Analysis, path: str | Path) -> Path:
    """Variants x features occurrence grid, mandatory features first."""
    fm = analysis.feature_model
    names = [f.name for f in fm.features] + list(fm.unmatched)
    variants = analysis.family.variant_ids
    ctx = analysis.context
    col = {a: j for j, a in enumerate(ctx.attributes)}
    grid = np.array([[ctx.incidence[i, col[n]] for n in names]
                     for i in range(len(variants))], dtype=float)
    n_mand = len(fm.mandatory)

    fig, ax = plt.subplots(figsize=(1.5 + 0.3 * len(names), 1.0 + 0.3 * len(variants)))
    ax.imshow(grid, cmap="Greys", vmin=0, vmax=1.6, aspect="auto")
    ax.set_xticks(range(len(names)), names, rotation=60, ha="right")
    ax.set_yticks(range(len(variants)), variants)
    if 0 < n_mand < len(names):
        ax.axvline(n_mand - 0.5, color="tab:red", linewidth=1)
    ax.set_title(f"{fm.root}: {n_mand} mandatory, {len(fm.optional)} optional")
    fig.tight_layout()
    fig.savefig(path, **_SAVE)
    plt.close(fig)
    return Path(path)


def render_figures(analysis: Analysis, out_dir: str | Path) -> list[Path]:
    out_dir = Path(out_dir)
    paths = [feature_matrix(analysis, out_dir / "features.png")]
    for a in analysis.blocks:
        paths.append(similarity_heatmap(a.similarity, out_dir / f"sim-{a.block_id}.png",
                                        analysis.config.threshold, a.block_id))
    return paths
