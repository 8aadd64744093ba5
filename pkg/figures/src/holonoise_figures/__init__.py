"""Plotting front end for the holonomic-gate noise study.

Reads the simulation's versioned CSV outputs (sweeps, control-sphere
trajectories, gate comparisons) and renders the study's figures.  Never
recomputes or reorders data: what lands in the image is exactly what the
files contain, checksummed.
"""

__version__ = "0.1.0"

from .render import (FigureSpec, GATING_TIME_RATIO, RenderResult,
                     SUPPORTED_FIGURES, build_figure, render_figure)
from .schema import (SchemaError, read_compare, read_sweep, read_trajectory,
                     series_checksum)

__all__ = [
    "FigureSpec", "GATING_TIME_RATIO", "RenderResult", "SUPPORTED_FIGURES",
    "build_figure", "render_figure",
    "SchemaError", "read_compare", "read_sweep", "read_trajectory",
    "series_checksum", "__version__",
]
