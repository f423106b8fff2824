"""Figure rendering for audit reports.

All figures go through save_figure so output bytes are reproducible: the
SVG id hash salt is pinned and the writers' timestamp metadata is stripped.
"""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .distributions import DensityCurve
from .errors import InputError
from .importance import ImportanceReport
from .models import ObservationTable, OlsFit

matplotlib.rcParams["svg.hashsalt"] = "regaudit"

# Each writer stamps a timestamp unless told otherwise.
_SAVE_META = {".svg": {"Date": None}, ".png": {"Software": None}}


def save_figure(figure, path: str) -> str:
    ext = os.path.splitext(path)[1].lower()
    if ext not in _SAVE_META:
        raise InputError(f"unsupported figure format {ext!r}; use .svg or .png")
    figure.savefig(path, metadata=_SAVE_META[ext])
    plt.close(figure)
    return path


def importance_figure(report: ImportanceReport, title: str = "Relative importance"):
    """Horizontal interval per predictor spanning its share bounds.

    Rows are sorted by point estimate, largest on top; a marker sits at the
    point estimate and predictors with negative coefficients are annotated.
    """
    rows = sorted(report.rows, key=lambda r: r.point)
    fig, ax = plt.subplots(figsize=(7.0, 0.6 * len(rows) + 1.4))
    ys = np.arange(len(rows))
    for y, row in zip(ys, rows):
        ax.hlines(y, row.lower, row.upper, color="#31688e", linewidth=6, alpha=0.6)
        ax.plot([row.point], [y], marker="D", color="#1f1f1f", markersize=6)
        if row.sign < 0:
            ax.annotate(
                "anti-correlated",
                (row.upper, y),
                textcoords="offset points",
                xytext=(6, -4),
                fontsize=8,
                color="#7a1f1f",
            )
    ax.set_yticks(ys)
    ax.set_yticklabels([r.name for r in rows])
    ax.set_xlabel(f"share of explained spread (point at p={report.p_point:g})")
    ax.set_xlim(left=0)
    ax.set_title(title)
    fig.tight_layout()
    return fig


def density_figure(curves: dict[str, DensityCurve], title: str = "Reconstructed densities"):
    """Overlay labeled density curves on a single axis."""
    if not curves:
        raise InputError("at least one density curve is required")
    fig, ax = plt.subplots(figsize=(7.0, 4.2))
    for label, curve in curves.items():
        ax.plot(curve.grid, curve.density, label=label, linewidth=1.6)
        ax.fill_between(curve.grid, curve.density, alpha=0.15)
    ax.set_xlabel("score")
    ax.set_ylabel("density")
    ax.legend()
    ax.set_title(title)
    fig.tight_layout()
    return fig


def anscombe_figure(sets: dict[str, ObservationTable], fits: dict[str, OlsFit]):
    """2x2 scatter grid with the shared fitted line drawn through each panel."""
    fig, axes = plt.subplots(2, 2, figsize=(8.0, 6.0), sharex=False, sharey=False)
    for ax, (label, table) in zip(axes.flat, sorted(sets.items())):
        x = table.column("x")
        y = table.column("y")
        fit = fits[label]
        ax.scatter(x, y, s=28, color="#31688e")
        span = np.linspace(float(x.min()) - 1, float(x.max()) + 1, 50)
        ax.plot(span, fit.intercept + fit.slopes[0] * span, color="#b34700", linewidth=1.4)
        ax.set_title(f"set {label} (r2={fit.r2:.3f})", fontsize=10)
    fig.tight_layout()
    return fig
