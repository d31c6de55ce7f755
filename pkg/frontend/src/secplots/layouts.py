"""Per-scenario axis choices.

The CSV stores whatever quantity a scenario sweeps in the same fixed
columns, so each layout records which column carries the y value and how
to label the axes:

* fig5 is the feasibility frontier: the tolerable eavesdropper antenna
  ratio rides in the R_sec column (analytic rows only).
* fig9 is a complexity sweep: GFLOP counts ride in gamma_linear, drawn on
  a log axis because the precoder families differ by orders of magnitude.
* fig6/fig7 sweep the pilot energy over two decades, hence the log x axis.
"""

from __future__ import annotations

from dataclasses import dataclass

from .schema import CSV_COLUMNS

RATE_LABEL = "ergodic secrecy rate [bits/channel use]"


@dataclass(frozen=True)
class PlotSpec:
    """Column and axis selection for one scenario figure."""

    scenario: str
    x: str
    y: str
    xlabel: str
    ylabel: str
    title: str
    logx: bool = False
    logy: bool = False

    def __post_init__(self):
        for column in (self.x, self.y):
            if column not in CSV_COLUMNS:
                raise ValueError(f"unknown CSV column {column!r}")


LAYOUTS = {
    "fig0": PlotSpec(
        "fig0", "sweep_value", "C_eve", "normalized user load K / N_T",
        "eavesdropper capacity [bits/channel use]",
        "eavesdropper capacity vs user load, SZF data",
    ),
    "fig1": PlotSpec(
        "fig1", "sweep_value", "R_sec", "transmit antennas N_T", RATE_LABEL,
        "secrecy rate vs antenna count, light load",
    ),
    "fig2": PlotSpec(
        "fig2", "sweep_value", "R_sec", "transmit antennas N_T", RATE_LABEL,
        "secrecy rate vs antenna count, dense network",
    ),
    "fig3": PlotSpec(
        "fig3", "sweep_value", "R_sec", "data power fraction phi", RATE_LABEL,
        "secrecy rate vs power split, selfish data precoders",
    ),
    "fig4": PlotSpec(
        "fig4", "sweep_value", "R_sec", "data power fraction phi", RATE_LABEL,
        "secrecy rate vs power split, collaborative variants",
    ),
    "fig5": PlotSpec(
        "fig5", "sweep_value", "R_sec", "normalized user load K / N_T",
        "tolerable eavesdropper antenna ratio alpha_s",
        "secrecy feasibility frontier vs user load",
    ),
    "fig6": PlotSpec(
        "fig6", "sweep_value", "R_sec", "pilot energy", RATE_LABEL,
        "secrecy rate vs pilot energy, data precoders", logx=True,
    ),
    "fig7": PlotSpec(
        "fig7", "sweep_value", "R_sec", "pilot energy", RATE_LABEL,
        "secrecy rate vs pilot energy, AN precoders", logx=True,
    ),
    "fig8": PlotSpec(
        "fig8", "sweep_value", "R_sec", "users per cell K", RATE_LABEL,
        "secrecy rate vs users per cell, all data precoders",
    ),
    "fig9": PlotSpec(
        "fig9", "sweep_value", "gamma_linear", "users per cell K",
        "AN precoding cost [GFLOPs]",
        "AN precoder complexity vs users per cell", logy=True,
    ),
}


def layout_for(scenario: str) -> PlotSpec:
    try:
        return LAYOUTS[scenario]
    except KeyError:
        known = ", ".join(sorted(LAYOUTS))
        raise ValueError(f"unknown scenario {scenario!r}; known: {known}") from None
