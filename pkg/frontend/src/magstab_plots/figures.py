"""Figure specifications and the CSV-to-image renderer.

Each named figure maps CSV columns to plot roles: one x-axis column, one
series-grouping column, and the two critical-stretch columns as y values
(compression solid, tension dashed so the branches are distinguishable).
Rows without a critical stretch are skipped.  Styles come from a fixed cycle,
so re-rendering identical input yields an identical plot specification.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

COMPRESSION_COLUMN = "lambda_cr_compression"
TENSION_COLUMN = "lambda_cr_tension"

_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
           "#8c564b", "#17becf", "#7f7f7f")
_MARKERS = ("o", "s", "^", "v", "D", "p", "*", "x")


class FigureConfigError(ValueError):
    """Bad figure request: unknown name, missing column, empty data."""


@dataclass(frozen=True)
class FigureSpec:
    """How one figure reads the CSV."""

    name: str
    x_column: str
    series_column: str
    log_x: bool = False
    x_label: str = ""
    y_label: str = "critical stretch"


_LABELS = {
    "k": "wavenumber k",
    "b_bar": "dimensionless induction",
    "mu_ratio": "stiffness ratio (upper/substrate)",
    "beta_u": "upper-layer beta",
}

FIGURES: dict[str, FigureSpec] = {
    "fig2": FigureSpec("fig2", "k", "mu_ratio", log_x=True, x_label=_LABELS["k"]),
    "fig3": FigureSpec("fig3", "b_bar", "beta_u", x_label=_LABELS["b_bar"]),
    "fig4": FigureSpec("fig4", "b_bar", "beta_u", x_label=_LABELS["b_bar"]),
    "fig5": FigureSpec("fig5", "b_bar", "beta_u", x_label=_LABELS["b_bar"]),
    "fig6": FigureSpec("fig6", "mu_ratio", "b_bar", log_x=True,
                       x_label=_LABELS["mu_ratio"]),
    "fig7": FigureSpec("fig7", "b_bar", "mu_ratio", x_label=_LABELS["b_bar"]),
    "fig8": FigureSpec("fig8", "b_bar", "mu_ratio", x_label=_LABELS["b_bar"]),
    "fig9": FigureSpec("fig9", "mu_ratio", "b_bar", log_x=True,
                       x_label=_LABELS["mu_ratio"]),
}


def spec_for(name: str) -> FigureSpec:
    try:
        return FIGURES[name]
    except KeyError:
        raise FigureConfigError(
            f"unknown figure {name!r}; valid: {', '.join(sorted(FIGURES))}") from None


@dataclass(frozen=True)
class RenderResult:
    """What was drawn: enough to verify a rendering without reopening it."""

    path: str
    series: tuple[str, ...]
    n_rows: int
    n_points_drawn: int
    log_x: bool
    legend: tuple[str, ...] = field(default_factory=tuple)


def _load_rows(csv_path: str, spec: FigureSpec) -> list[dict]:
    with open(csv_path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        for column in (spec.x_column, spec.series_column,
                       COMPRESSION_COLUMN, TENSION_COLUMN):
            if column not in header:
                raise FigureConfigError(
                    f"column {column!r} missing from {csv_path} (header: {header})")
        rows = list(reader)
    if not rows:
        raise FigureConfigError(f"no data rows in {csv_path}")
    return rows


def render(spec: FigureSpec, csv_path: str, out_path: str) -> RenderResult:
    """Draw one figure from a sweep CSV and write the image file.

    One curve per distinct value of the series column; compression branch
    solid with markers, tension branch dashed in the same color.  Rows whose
    critical-stretch field is empty are skipped.
    """
    rows = _load_rows(csv_path, spec)
    series_values: list[str] = []
    for row in rows:
        if row[spec.series_column] not in series_values:
            series_values.append(row[spec.series_column])

    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    drawn = 0
    legend: list[str] = []
    for idx, value in enumerate(series_values):
        color = _COLORS[idx % len(_COLORS)]
        marker = _MARKERS[idx % len(_MARKERS)]
        group = [r for r in rows if r[spec.series_column] == value]
        for column, style, suffix in ((COMPRESSION_COLUMN, "-", ""),
                                      (TENSION_COLUMN, "--", " (tension)")):
            pts = [(float(r[spec.x_column]), float(r[column]))
                   for r in group if r[column] != ""]
            if not pts:
                continue
            pts.sort()
            xs, ys = zip(*pts)
            label = f"{spec.series_column}={value}{suffix}"
            ax.plot(xs, ys, style, color=color, marker=marker, markersize=4,
                    label=label)
            legend.append(label)
            drawn += len(pts)
    if spec.log_x:
        ax.set_xscale("log")
    ax.set_xlabel(spec.x_label or spec.x_column)
    ax.set_ylabel(spec.y_label)
    ax.set_title(spec.name)
    if legend:
        ax.legend(fontsize=8)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(out_path)
    x_scale = ax.get_xscale()
    plt.close(fig)
    return RenderResult(path=out_path, series=tuple(series_values), n_rows=len(rows),
                        n_points_drawn=drawn, log_x=x_scale == "log",
                        legend=tuple(legend))
