"""Concurrence-versus-time figures rendered to files."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")  # file output only; never require a display

import matplotlib.pyplot as plt


def save_concurrence_plot(records, path, title: str = "concurrence vs time") -> None:
    """Render the concurrence column as a line chart.

    The file format follows the path suffix; the CLI defaults to SVG.
    """
    ts = [rec.t for rec in records]
    cs = [rec.concurrence for rec in records]
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    ax.plot(ts, cs, color="tab:blue", lw=1.5)
    ax.set_xlabel("time")
    ax.set_ylabel("concurrence")
    ax.set_ylim(-0.02, 1.02)
    ax.grid(True, alpha=0.3)
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
