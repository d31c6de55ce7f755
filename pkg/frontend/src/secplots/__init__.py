"""Batch figure rendering for the secrecy-experiment CSVs.

This package consumes only the CSV contract of the simulation CLI: pick
the layout a scenario calls for, keep that scenario's non-skipped rows,
draw analytic series as lines and Monte Carlo series as error-bar markers
in matching colors, and write one SVG plus one PNG.  No display server is
needed and no simulation code is imported.
"""

from .layouts import LAYOUTS, PlotSpec, layout_for
from .render import RenderSummary, render, render_csv
from .schema import CSV_COLUMNS, SchemaError, load_rows, numeric

__all__ = [
    "CSV_COLUMNS",
    "LAYOUTS",
    "PlotSpec",
    "RenderSummary",
    "SchemaError",
    "layout_for",
    "load_rows",
    "numeric",
    "render",
    "render_csv",
]
