"""Headless figure rendering for the bias-series CSV exports.

Strictly read-only over the CSVs: nothing here recomputes mathematics, it
only draws columns the compute tool already wrote.
"""

from .render import PlotError, PlotSpec, load_series, main, render

__all__ = ["PlotError", "PlotSpec", "load_series", "main", "render"]
