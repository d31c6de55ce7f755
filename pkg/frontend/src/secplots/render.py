"""Matplotlib rendering of experiment CSVs, one figure per scenario.

A series is one (scenario variant, data precoder, AN precoder, evaluator)
combination.  The analytic and Monte Carlo halves of the same precoder
pair share a color: the closed form draws as a line, the simulation as
markers with standard-error bars, so agreement shows up directly as
markers sitting on the line.  Output is one SVG plus one PNG per call,
written only after the input has fully validated.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .layouts import PlotSpec, layout_for
from .schema import SchemaError, load_rows, numeric


@dataclass(frozen=True)
class RenderSummary:
    """What a render call drew: per-series point counts and row accounting."""

    scenario: str
    series: dict[str, int]
    rows_used: int
    rows_skipped: int
    images: tuple[Path, Path]


def _family(scenario_field: str) -> str:
    # Sub-variants ride in the scenario column as "name/key=value".
    return scenario_field.split("/", 1)[0]


def _series_label(variant: str, data: str, an: str) -> str:
    label = f"{data}+{an}"
    if "/" in variant:
        label += f" ({variant.split('/', 1)[1]})"
    return label


def render(csv_path: str | Path, spec: PlotSpec, out_dir: str | Path) -> RenderSummary:
    """Draw one scenario figure from ``csv_path`` into ``out_dir``.

    Rows whose scenario family differs from ``spec.scenario`` are rejected
    (a CSV from another scenario is a user error, not an empty plot), and
    SKIPPED rows are excluded from every series.
    """
    rows = load_rows(csv_path)
    mine = [row for row in rows if _family(row["scenario"]) == spec.scenario]
    if not mine:
        families = ", ".join(sorted({_family(row["scenario"]) for row in rows}))
        raise SchemaError(
            f"{csv_path}: no rows for scenario {spec.scenario!r}; file holds: {families}"
        )
    ok = [row for row in mine if row["status"] == "OK"]
    if not ok:
        raise SchemaError(f"{csv_path}: every {spec.scenario} row is SKIPPED")

    groups: dict[tuple[str, str, str, str], list[dict[str, str]]] = {}
    for row in ok:
        key = (row["scenario"], row["data_precoder"], row["an_precoder"], row["evaluator"])
        groups.setdefault(key, []).append(row)

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    fig, ax = plt.subplots(figsize=(7.5, 5.0))
    palette = plt.rcParams["axes.prop_cycle"].by_key()["color"]
    pair_color: dict[tuple[str, str, str], str] = {}
    labeled: set[tuple[str, str, str]] = set()
    series: dict[str, int] = {}

    # Sorted keys put "analytic" before "monte_carlo", so the line of a pair
    # claims the legend entry and its markers reuse the color silently.
    for key in sorted(groups):
        variant, data, an, evaluator = key
        points = sorted(
            (numeric(row, spec.x), numeric(row, spec.y), numeric(row, "stderr_R_sec"))
            for row in groups[key]
        )
        xs = [p[0] for p in points]
        ys = [p[1] for p in points]
        pair = (variant, data, an)
        color = pair_color.setdefault(pair, palette[len(pair_color) % len(palette)])
        label = _series_label(variant, data, an) if pair not in labeled else None
        labeled.add(pair)
        if evaluator == "monte_carlo":
            # The schema carries one error column; it measures the secrecy
            # rate, so bars appear only when that is the plotted quantity.
            bars = [p[2] for p in points] if spec.y == "R_sec" else None
            ax.errorbar(
                xs, ys, yerr=bars, color=color, linestyle="none",
                marker="o", markersize=4, capsize=2, label=label,
            )
        else:
            ax.plot(xs, ys, color=color, label=label)
        series["|".join(key)] = len(xs)

    if spec.logx:
        ax.set_xscale("log")
    if spec.logy:
        ax.set_yscale("log")
    ax.set_xlabel(spec.xlabel)
    ax.set_ylabel(spec.ylabel)
    ax.set_title(spec.title)
    ax.grid(alpha=0.3)
    ax.legend(fontsize=8, ncols=1 + (len(pair_color) > 8))
    fig.tight_layout()

    svg = out_dir / f"{spec.scenario}.svg"
    png = out_dir / f"{spec.scenario}.png"
    fig.savefig(svg)
    fig.savefig(png, dpi=160)
    plt.close(fig)
    return RenderSummary(
        scenario=spec.scenario,
        series=series,
        rows_used=len(ok),
        rows_skipped=len(mine) - len(ok),
        images=(svg, png),
    )


def render_csv(csv_path: str | Path, scenario: str, out_dir: str | Path) -> RenderSummary:
    """Render with the catalog layout for ``scenario``."""
    return render(csv_path, layout_for(scenario), out_dir)
