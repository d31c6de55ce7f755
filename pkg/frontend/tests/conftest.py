"""Hand-built CSV fixtures in the experiment schema.

The builders return plain comma-joined lines so a test can drop columns,
blank out fields, or append extras without fighting a writer library.
"""

from __future__ import annotations

import pytest

from secplots import CSV_COLUMNS

_BLANKABLE = (
    "phi", "R_mt", "C_eve", "R_sec", "gamma_linear",
    "stderr_R_sec", "n_realizations", "singular_X_count",
)


@pytest.fixture
def csv_row():
    """One OK analytic row of a fig3-like sweep; override any column."""

    def _row(**overrides) -> str:
        values = {
            "scenario": "fig3/beta=0.1",
            "sweep_var": "phi",
            "sweep_value": "0.2",
            "data_precoder": "SZF",
            "an_precoder": "SNS",
            "evaluator": "analytic",
            "phi": "0.2",
            "R_mt": "2.5",
            "C_eve": "0.4",
            "R_sec": "2.1",
            "gamma_linear": "4.66",
            "stderr_R_sec": "0",
            "n_realizations": "0",
            "singular_X_count": "0",
            "status": "OK",
        }
        values.update(overrides)
        return ",".join(values[column] for column in CSV_COLUMNS)

    return _row


@pytest.fixture
def skipped_row(csv_row):
    """Row for an infeasible point: empty numerics, SKIPPED status."""

    def _row(**overrides) -> str:
        blanks = {column: "" for column in _BLANKABLE}
        blanks["status"] = "SKIPPED(CNS needs N_T > M K)"
        blanks.update(overrides)
        return csv_row(**blanks)

    return _row


@pytest.fixture
def write_csv(tmp_path):
    """Write CSV lines to a temp file, optionally mangling the header."""

    def _write(rows, name="run.csv", header=",".join(CSV_COLUMNS),
               comment="# generated 2026-01-01T00:00:00+00:00"):
        lines = ([comment] if comment else []) + [header] + list(rows)
        path = tmp_path / name
        path.write_text("\n".join(lines) + "\n")
        return path

    return _write
