"""Rendering: series identity, evaluator pairing, exclusions, output files."""

from __future__ import annotations

import pytest

from secplots import LAYOUTS, PlotSpec, SchemaError, layout_for, render_csv


def test_layouts_cover_the_whole_catalog():
    assert sorted(LAYOUTS) == [f"fig{i}" for i in range(10)]
    for name, spec in LAYOUTS.items():
        assert spec.scenario == name


def test_unknown_scenario_lists_the_catalog():
    with pytest.raises(ValueError) as err:
        layout_for("fig42")
    assert "fig0" in str(err.value) and "fig9" in str(err.value)


def test_plot_spec_rejects_columns_outside_the_schema():
    with pytest.raises(ValueError, match="payload"):
        PlotSpec("fig0", "sweep_value", "payload", "x", "y", "t")


def test_phi_sweep_renders_one_series_per_variant_pair(write_csv, csv_row, tmp_path):
    rows = [
        csv_row(
            scenario=f"fig3/beta={beta}", sweep_value=str(phi), phi=str(phi),
            data_precoder=data,
        )
        for beta in (0.1, 0.5)
        for data in ("MF", "SZF", "SRCI")
        for phi in (0.2, 0.5, 0.8)
    ]
    summary = render_csv(write_csv(rows), "fig3", tmp_path / "out")
    assert len(summary.series) == 6
    assert summary.rows_used == 18
    assert summary.rows_skipped == 0
    assert all(count == 3 for count in summary.series.values())
    for image in summary.images:
        assert image.exists() and image.stat().st_size > 0
    assert {image.suffix for image in summary.images} == {".svg", ".png"}


def test_monte_carlo_rows_form_their_own_series(write_csv, csv_row, tmp_path):
    rows = []
    for data in ("MF", "SZF"):
        for n_t in (64, 128):
            shared = dict(
                scenario="fig1", sweep_var="N_T", sweep_value=str(n_t),
                data_precoder=data, phi="0.75",
            )
            rows.append(csv_row(**shared))
            rows.append(csv_row(
                evaluator="monte_carlo", stderr_R_sec="0.05", n_realizations="500",
                **shared,
            ))
    summary = render_csv(write_csv(rows), "fig1", tmp_path / "out")
    assert len(summary.series) == 4
    assert summary.rows_used == 8
    evaluators = {key.split("|")[-1] for key in summary.series}
    assert evaluators == {"analytic", "monte_carlo"}


def test_skipped_rows_are_not_drawn(write_csv, csv_row, skipped_row, tmp_path):
    rows = [
        csv_row(sweep_value="0.2", phi="0.2"),
        csv_row(sweep_value="0.5", phi="0.5"),
        skipped_row(sweep_value="0.2", an_precoder="CNS"),
        skipped_row(sweep_value="0.5", an_precoder="CNS"),
    ]
    summary = render_csv(write_csv(rows), "fig3", tmp_path / "out")
    assert summary.rows_used == 2
    assert summary.rows_skipped == 2
    assert sum(summary.series.values()) == 2
    assert len(summary.series) == 1


def test_empty_csv_is_an_error_and_writes_nothing(write_csv, tmp_path):
    out = tmp_path / "out"
    with pytest.raises(SchemaError, match="no data rows"):
        render_csv(write_csv([]), "fig3", out)
    assert not out.exists()


def test_foreign_scenario_is_an_error_not_an_empty_plot(write_csv, csv_row, tmp_path):
    out = tmp_path / "out"
    with pytest.raises(SchemaError) as err:
        render_csv(write_csv([csv_row()]), "fig8", out)
    assert "fig3" in str(err.value)
    assert not out.exists()


def test_fully_skipped_scenario_is_an_error(write_csv, skipped_row, tmp_path):
    with pytest.raises(SchemaError, match="SKIPPED"):
        render_csv(write_csv([skipped_row()]), "fig3", tmp_path / "out")


def test_complexity_sweep_draws_on_log_axis(write_csv, csv_row, tmp_path):
    rows = [
        csv_row(
            scenario="fig9", sweep_var="K", sweep_value=str(k), evaluator="analytic",
            an_precoder=an, gamma_linear=gflops, R_sec="0", phi="0",
        )
        for k in (8, 16, 32)
        for an, gflops in (("SNS", "0.4"), ("POLY_J1", "0.002"))
    ]
    summary = render_csv(write_csv(rows), "fig9", tmp_path / "out")
    assert len(summary.series) == 2
    assert summary.rows_used == 6
    svg = (tmp_path / "out" / "fig9.svg").read_text()
    assert "GFLOPs" in svg
