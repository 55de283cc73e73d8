"""Deterministic table output and figure rendering for experiment reports.

Tables are comma-separated with a header row, LF line endings, and floats
printed with 15 significant digits, so identical experiment configurations
produce byte-identical files.  Figures are rendered with the Agg backend next
to the table they illustrate.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Sequence

import numpy as np

__all__ = [
    "figure_path",
    "format_value",
    "read_table",
    "render_bar_figure",
    "render_curve_figure",
    "render_matrix_figure",
    "render_set_figure",
    "render_sweep_figure",
    "write_json",
    "write_table",
]


def format_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        x = float(value)
        if x == 0.0:
            x = 0.0  # normalize -0.0
        return format(x, ".15g")
    return str(value)


def write_table(path: str | Path, header: Sequence[str], rows: Sequence[Sequence]) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(format_value(v) for v in row))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def table_text(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    lines = [",".join(header)]
    lines += [",".join(format_value(v) for v in row) for row in rows]
    return "\n".join(lines) + "\n"


def _parse_cell(text: str):
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text


def read_table(path: str | Path) -> tuple[list[str], list[list]]:
    """Reload a table written by `write_table`; numeric cells are parsed back."""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines:
        raise ValueError(f"{path} is empty")
    header = lines[0].split(",")
    rows = [[_parse_cell(cell) for cell in line.split(",")] for line in lines[1:]]
    return header, rows


def write_json(path: str | Path, payload) -> None:
    Path(path).write_text(
        json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


def figure_path(out: str | Path) -> Path:
    return Path(out).with_suffix(".png")


def _pyplot():
    import matplotlib

    matplotlib.use("Agg", force=False)
    import matplotlib.pyplot as plt

    return plt


def render_curve_figure(
    path: str | Path,
    series: dict[str, tuple[Sequence[float], Sequence[float]]],
    xlabel: str,
    ylabel: str,
    title: str = "",
) -> None:
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.0, 3.6))
    for label, (xs, ys) in series.items():
        ax.plot(xs, ys, lw=1.2, label=label)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    if title:
        ax.set_title(title)
    if len(series) > 1:
        ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_bar_figure(
    path: str | Path,
    xs: Sequence[float],
    heights: Sequence[float],
    xlabel: str,
    ylabel: str,
    title: str = "",
) -> None:
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.0, 3.6))
    width = 0.8 * (min(np.diff(sorted(xs))) if len(xs) > 1 else 1.0)
    ax.bar(xs, heights, width=width)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_set_figure(
    path: str | Path,
    groups: dict[str, Sequence[int]],
    xlabel: str,
    title: str = "",
) -> None:
    """One horizontal row of markers per integer set."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.0, 2.4))
    for row, (label, values) in enumerate(groups.items()):
        ax.plot(list(values), [row] * len(values), "|", markersize=14, label=label)
    ax.set_yticks(range(len(groups)), list(groups))
    ax.set_ylim(-0.5, len(groups) - 0.5)
    ax.set_xlabel(xlabel)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_matrix_figure(
    path: str | Path,
    matrix: np.ndarray,
    xlabel: str,
    ylabel: str,
    title: str = "",
) -> None:
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(4.8, 4.0))
    im = ax.imshow(matrix, origin="lower", aspect="auto", cmap="viridis")
    fig.colorbar(im, ax=ax, shrink=0.85)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_sweep_figure(
    path: str | Path,
    xs: Sequence[float],
    series: dict[str, Sequence[float]],
    xlabel: str,
    ylabel: str,
    title: str = "",
) -> None:
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.0, 3.6))
    markers = ["o", "s", "^", "d"]
    for i, (label, ys) in enumerate(series.items()):
        ax.plot(xs, ys, marker=markers[i % len(markers)], lw=1.0, label=label)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.legend(frameon=False)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
