"""Matplotlib rendering of Ext charts and splitting-range tables.

All layout constants live in ``STYLE``.  SVG output is made byte-stable by
fixing the hash salt and dropping the date stamp.
"""

from __future__ import annotations

from pathlib import Path
from typing import Optional, Sequence, Union

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .lines import VanishingLine  # noqa: E402
from .resolution import ExtChart  # noqa: E402

STYLE = {
    "cell": 0.32,  # inches per unit on both axes
    "margin": 0.9,
    "dot_radius": 0.09,
    "dot_gap": 0.22,  # horizontal offset between classes in one bidegree
    "dot_color": "#000000",
    "h0_color": "#1f4e9c",
    "line_color": "#c0392b",
    "violation_color": "#e67e22",
    "font_size": 8,
    "line_width": 1.0,
}

_RC = {
    "svg.hashsalt": "adamsline",
    "svg.fonttype": "none",
    "font.family": "DejaVu Sans",
    "font.size": STYLE["font_size"],
    "axes.linewidth": 0.6,
    "path.simplify": False,
}

PathLike = Union[str, Path]


def _save(fig, path: PathLike) -> None:
    path = Path(path)
    fmt = path.suffix.lstrip(".") or "svg"
    metadata = {"Date": None} if fmt == "svg" else None
    fig.savefig(path, format=fmt, metadata=metadata)
    plt.close(fig)


def chart_figure(
    chart: ExtChart,
    line: Optional[VanishingLine] = None,
    exceptions: Sequence[int] = (),
    violations: Sequence[tuple[int, int, int]] = (),
    title: Optional[str] = None,
):
    """Dots at ``(t - s, s)``, vertical segments for nonzero h0 products,
    optional vanishing line and highlighted violations."""
    with plt.rc_context(_RC):
        x_max = max(chart.t_max, 1)
        y_max = max(chart.s_max, 1)
        w = STYLE["cell"] * (x_max + 1) + 2 * STYLE["margin"]
        h = STYLE["cell"] * (y_max + 1) + 2 * STYLE["margin"]
        fig, ax = plt.subplots(figsize=(w, h))
        pos: dict[tuple[int, int], list[float]] = {}
        for s, t, d in chart.nonzero():
            x = t - s
            xs = [x + STYLE["dot_gap"] * (j - (d - 1) / 2) for j in range(d)]
            pos[(s, t)] = xs
        for (s, t), rows in sorted(chart.h0.items()):
            src = pos.get((s, t))
            dst = pos.get((s + 1, t + 1))
            if not src or not dst:
                continue
            for q, row in enumerate(rows):
                for p, bit in enumerate(row):
                    if bit:
                        ax.plot([src[p], dst[q]], [s, s + 1], color=STYLE["h0_color"],
                                linewidth=STYLE["line_width"], zorder=1)
        for (s, t), xs in sorted(pos.items()):
            ax.scatter(xs, [s] * len(xs), s=(STYLE["dot_radius"] * 72) ** 2,
                       color=STYLE["dot_color"], zorder=2, linewidths=0)
        for s, t, _ in violations:
            ax.scatter([t - s], [s], s=(STYLE["dot_radius"] * 144) ** 2, facecolors="none",
                       edgecolors=STYLE["violation_color"], zorder=3)
        if line is not None:
            # boundary m*s = (t - s) + c
            xs = [0, x_max]
            ax.plot(xs, [(x + line.c) / line.m for x in xs], color=STYLE["line_color"],
                    linewidth=STYLE["line_width"], linestyle="--", zorder=0)
        for stem in exceptions:
            ax.axvline(stem, color=STYLE["line_color"], linewidth=0.5, linestyle=":", zorder=0)
        ax.set_xlim(-0.5, x_max + 0.5)
        ax.set_ylim(-0.5, y_max + 0.5)
        ax.set_xticks(range(0, x_max + 1, 2))
        ax.set_yticks(range(0, y_max + 1))
        ax.set_xlabel("t - s")
        ax.set_ylabel("s")
        ax.grid(True, linewidth=0.3, color="#dddddd")
        ax.set_title(title if title is not None else chart.name)
        fig.tight_layout()
    return fig


def save_chart(chart: ExtChart, path: PathLike, **kwargs) -> None:
    with plt.rc_context(_RC):
        _save(chart_figure(chart, **kwargs), path)


def splitrange_figure(ns: Sequence[int], ells: Sequence[int], closed: Sequence[int],
                      reference: Sequence[Optional[int]], label: str):
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(6.0, 3.6))
        ax.plot(ns, ells, marker="o", markersize=3, linewidth=STYLE["line_width"], label=f"optimum ({label})")
        ax.plot(ns, closed, linestyle="--", linewidth=STYLE["line_width"], label="2n + floor(n/2) - 5")
        ref = [(n, r) for n, r in zip(ns, reference) if r is not None]
        if ref:
            ax.scatter([n for n, _ in ref], [r for _, r in ref], marker="x",
                       color=STYLE["line_color"], zorder=3, label="reference table")
        ax.set_xlabel("n")
        ax.set_ylabel("splitting range")
        ax.legend(loc="upper left", frameon=False)
        fig.tight_layout()
    return fig


def save_splitrange(path: PathLike, *args, **kwargs) -> None:
    with plt.rc_context(_RC):
        _save(splitrange_figure(*args, **kwargs), path)
