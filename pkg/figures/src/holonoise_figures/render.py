"""Figure builders for the simulation's CSV outputs.

Supported figure ids map onto the study's plots: fidelity-vs-extraction
curves (fig1a, fig1b, fig4, fig5, fig6, fig11, fig12), control-sphere
loop trajectories (fig2, fig3), terminal leakage populations (fig9) and
the dual-axis holonomic/dynamical comparison (fig10).  Renderers never
modify or reorder the input: the returned checksum is computed from the
series handed to matplotlib and must equal the checksum of the same
columns read straight from the CSV.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")  # batch tool: render without a display
import matplotlib.pyplot as plt
import numpy as np

from .schema import (read_compare, read_sweep, read_trajectory,
                     series_checksum)

#: dynamical gates are ~100x faster; fig10's two time axes differ by this
GATING_TIME_RATIO = 100

FIDELITY_FIGURES = {
    "fig1a": ("strong intensity noise, slow side", False),
    "fig1b": ("strong intensity noise, fast side", True),
    "fig4": ("weak vs strong intensity noise", True),
    "fig5": ("phase vs intensity noise", True),
    "fig6": ("combined vs intensity noise", True),
    "fig11": ("phase-shift gate, intensity noise", True),
    "fig12": ("two-qubit phase gate, intensity noise", True),
}
TRAJECTORY_FIGURES = {"fig2", "fig3"}
SUPPORTED_FIGURES = sorted(FIDELITY_FIGURES) + sorted(TRAJECTORY_FIGURES) \
    + ["fig9", "fig10"]


@dataclass(frozen=True)
class FigureSpec:
    """What to render: figure id, input CSVs, output image path."""

    figure_id: str
    input_csvs: tuple[Path, ...]
    output_path: Path
    labels: tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.figure_id not in SUPPORTED_FIGURES:
            raise ValueError(f"unknown figure id {self.figure_id!r}; "
                             f"supported: {', '.join(SUPPORTED_FIGURES)}")
        if not self.input_csvs:
            raise ValueError("at least one input CSV is required")


@dataclass(frozen=True)
class RenderResult:
    output_path: Path
    series_checksum: str


def _label(spec: FigureSpec, i: int) -> str:
    if i < len(spec.labels):
        return spec.labels[i]
    return Path(spec.input_csvs[i]).stem


def _fidelity_axes(ax, log_x: bool):
    ax.set_xlabel("number of extractions  t_ad / t_n")
    ax.set_ylabel("fidelity")
    ax.set_ylim(0.0, 1.0)
    if log_x:
        ax.set_xscale("log")


def _build_fidelity(spec: FigureSpec):
    title, log_x = FIDELITY_FIGURES[spec.figure_id]
    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    series = []
    for i, path in enumerate(spec.input_csvs):
        table = read_sweep(path)
        x, y = table["n_r"], table["mean_fidelity"]
        ax.errorbar(x, y, yerr=table["std_fidelity"], marker="o", ms=3.5,
                    capsize=2, label=_label(spec, i))
        series += [x, y]
    _fidelity_axes(ax, log_x)
    ax.set_title(title)
    if len(spec.input_csvs) > 1:
        ax.legend()
    return fig, series


def _build_leakage(spec: FigureSpec):
    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    series = []
    for i, path in enumerate(spec.input_csvs):
        table = read_sweep(path)
        x = table["n_r"]
        ax.plot(x, table["leakage_G"], marker="o", ms=3.5,
                label=f"ground population ({_label(spec, i)})")
        ax.plot(x, table["leakage_E0"], marker="s", ms=3.5,
                label=f"ancilla population ({_label(spec, i)})")
        series += [x, table["leakage_G"], table["leakage_E0"]]
    ax.set_xscale("log")
    ax.set_xlabel("number of extractions  t_ad / t_n")
    ax.set_ylabel("terminal non-logical population")
    ax.set_title("leakage out of the logical pair")
    ax.legend()
    return fig, series


def _draw_sphere(ax):
    theta = np.linspace(0.0, np.pi, 25)
    phi = np.linspace(0.0, 2.0 * np.pi, 49)
    tt, pp = np.meshgrid(theta, phi)
    ax.plot_wireframe(np.sin(tt) * np.cos(pp), np.sin(tt) * np.sin(pp),
                      np.cos(tt), color="0.85", linewidth=0.3)


def _build_trajectory(spec: FigureSpec):
    n = len(spec.input_csvs)
    fig = plt.figure(figsize=(5.2 * n, 4.8))
    series = []
    for i, path in enumerate(spec.input_csvs):
        table = read_trajectory(path)
        ax = fig.add_subplot(1, n, i + 1, projection="3d")
        _draw_sphere(ax)
        ax.plot(table["noisy_x"], table["noisy_y"], table["noisy_z"],
                "-", color="C0", linewidth=0.8, label="with noise")
        ax.plot(table["clean_x"], table["clean_y"], table["clean_z"],
                "--", color="C3", linewidth=1.6, label="without noise")
        ax.set_title(_label(spec, i))
        ax.set_box_aspect((1, 1, 1))
        ax.legend(loc="upper left", fontsize=8)
        series += [table["noisy_x"], table["noisy_y"], table["noisy_z"],
                   table["clean_x"], table["clean_y"], table["clean_z"]]
    return fig, series


def _build_compare(spec: FigureSpec):
    if len(spec.input_csvs) != 1:
        raise ValueError("fig10 takes exactly one comparison CSV")
    table = read_compare(spec.input_csvs[0])
    fig, ax = plt.subplots(figsize=(6.0, 4.4))
    x = table["n_r_ad"]
    ax.plot(x, table["holo_mean_fidelity"], "-o", ms=3.5, label="holonomic")
    ax.plot(x, table["dyn_mean_fidelity"], "--s", ms=3.5, label="dynamical")
    ax.set_xscale("log")
    ax.set_ylim(0.0, 1.0)
    ax.set_ylabel("fidelity")
    ax.set_xlabel("t_ad / t_n (holonomic gate)")
    ax.xaxis.set_label_position("top")
    ax.xaxis.tick_top()
    # the pulse is ~100x shorter, so its extraction axis is scaled down
    lower = ax.secondary_xaxis(
        "bottom", functions=(lambda v: v / GATING_TIME_RATIO,
                             lambda v: v * GATING_TIME_RATIO))
    lower.set_xlabel("t_dyn / t_n (dynamical gate)")
    lower.set_xscale("log")
    ax.legend()
    series = [x, table["holo_mean_fidelity"], table["dyn_mean_fidelity"]]
    return fig, series


def build_figure(spec: FigureSpec):
    """Build the matplotlib figure; returns (figure, plotted series)."""
    if spec.figure_id in FIDELITY_FIGURES:
        return _build_fidelity(spec)
    if spec.figure_id in TRAJECTORY_FIGURES:
        return _build_trajectory(spec)
    if spec.figure_id == "fig9":
        return _build_leakage(spec)
    return _build_compare(spec)


def render_figure(spec: FigureSpec) -> RenderResult:
    """Validate inputs, render and save; vector or raster by extension.

    Inputs are read and validated before the output file is created, so a
    schema error never leaves a partial image behind.
    """
    fig, series = build_figure(spec)
    try:
        out = Path(spec.output_path)
        out.parent.mkdir(parents=True, exist_ok=True)
        fig.tight_layout()
        fig.savefig(out)
    finally:
        plt.close(fig)
    return RenderResult(output_path=out, series_checksum=series_checksum(series))
