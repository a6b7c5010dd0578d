"""PNG rendering of a classified grid."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from tutteplane.atlas import RegionClass, Tag  # noqa: E402

TAG_COLOURS = {
    Tag.FP_EXACT: "#000000",
    Tag.NO_FPRAS_UNLESS_RP_SHARP_P: "#7b1fa2",
    Tag.NO_FPRAS_UNLESS_RP_NP: "#d32f2f",
    Tag.EQUIV_PERFECT_MATCHINGS: "#1976d2",
    Tag.FPRAS_KNOWN: "#388e3c",
    Tag.UNKNOWN: "#bdbdbd",
}


def render_atlas(cells: Sequence[RegionClass], path: str | Path, title: str = "Tutte plane atlas") -> Path:
    """Scatter the cells coloured by tag, with the hyperbolas q = 1 and q = 2 overlaid."""
    fig, ax = plt.subplots(figsize=(7, 7), dpi=110)
    for tag, colour in TAG_COLOURS.items():
        pts = [(float(c.point.x), float(c.point.y)) for c in cells if c.tag is tag]
        if pts:
            xs, ys = zip(*pts)
            ax.scatter(xs, ys, s=6, c=colour, label=f"{tag.value} ({len(pts)})", marker="s", linewidths=0)
    if cells:
        lo_x = min(float(c.point.x) for c in cells)
        hi_x = max(float(c.point.x) for c in cells)
        lo_y = min(float(c.point.y) for c in cells)
        hi_y = max(float(c.point.y) for c in cells)
        for q, style in ((1, "-"), (2, "--")):
            for start, stop in ((lo_x, 1 - 1e-3), (1 + 1e-3, hi_x)):
                if start >= stop:
                    continue
                branch = np.linspace(start, stop, 400)
                ys = q / (branch - 1) + 1
                keep = (ys >= lo_y) & (ys <= hi_y)
                ax.plot(branch[keep], ys[keep], style, color="#424242", linewidth=0.7)
        ax.set_xlim(lo_x, hi_x)
        ax.set_ylim(lo_y, hi_y)
    ax.axhline(0, color="#9e9e9e", linewidth=0.5)
    ax.axvline(0, color="#9e9e9e", linewidth=0.5)
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_title(title)
    ax.legend(loc="upper right", fontsize=6, markerscale=2)
    path = Path(path)
    fig.savefig(path, bbox_inches="tight")
    plt.close(fig)
    return path
