"""Figures for census reports."""

from __future__ import annotations

from pathlib import Path

from .census import CensusReport


def census_figure(report: CensusReport, path: str | Path) -> Path:
    """Plot realizable cyclic orders against the 4g+2 bound and write to ``path``."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    g = report.genus
    orders = list(report.realizable_orders)
    hs = [report.witness[n].h if n in report.witness else 0 for n in orders]
    fig, ax = plt.subplots(figsize=(7, 3.2))
    sc = ax.scatter(orders, hs, c=hs, cmap="viridis", s=28, zorder=3)
    ax.axvline(4 * g + 2, color="tab:red", ls="--", lw=1, label=f"4g+2 = {4 * g + 2}")
    ax.axvline(4 * g + 1, color="tab:gray", ls=":", lw=1, label=f"4g+1 = {4 * g + 1}")
    ax.set_xlabel("order n")
    ax.set_ylabel("quotient genus of witness")
    ax.set_title(f"cyclic orders in Mod_{g}")
    ax.legend(loc="upper right", fontsize=8)
    if len(set(hs)) > 1:
        fig.colorbar(sc, ax=ax, label="h")
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path)
    plt.close(fig)
    return path
