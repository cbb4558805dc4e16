"""Plan-view figure rendering for scene groups.

Draws the projection of every cell onto two axes as a filled rectangle and
writes the figure to a file.  Meant for the CLI report paths, next to their
delimited output; cells must be bounded in the chosen axes (clip first).
"""

from __future__ import annotations

from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.patches import Patch, Rectangle

from .x3d import SceneGroup


def render_plan(
    groups: Sequence[SceneGroup],
    path: str,
    axes: tuple[str, str] = ("X", "Y"),
    dpi: int = 150,
) -> None:
    """Write a plan-view PNG/PDF of the groups' cells projected onto `axes`."""
    fig, ax = plt.subplots(figsize=(6, 6))
    handles = []
    for g in groups:
        alpha = max(0.15, 1.0 - g.transparency)
        for s in g.shapes:
            for cell in s.cells:
                spans = {}
                for d in axes:
                    lo, hi = cell.interval(d)
                    if lo is None or hi is None:
                        raise ValueError(
                            f"cell unbounded in {d}; clip to an envelope before rendering"
                        )
                    spans[d] = (float(lo.value), float(hi.value))
                (x0, x1), (y0, y1) = spans[axes[0]], spans[axes[1]]
                ax.add_patch(
                    Rectangle(
                        (x0, y0),
                        x1 - x0,
                        y1 - y0,
                        facecolor=g.color,
                        alpha=alpha,
                        edgecolor="black",
                        linewidth=0.4,
                    )
                )
        handles.append(Patch(facecolor=g.color, alpha=alpha, label=g.name))
    if handles:
        ax.legend(handles=handles, loc="upper right", fontsize=8)
    ax.relim()
    ax.autoscale_view()
    ax.set_aspect("equal")
    ax.set_xlabel(axes[0])
    ax.set_ylabel(axes[1])
    fig.tight_layout()
    fig.savefig(path, dpi=dpi)
    plt.close(fig)
