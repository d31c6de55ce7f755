"""The one CSV contract this package reads.

The experiment CLI writes one row per (sweep value, precoder pair,
evaluator) with a fixed column set.  Everything here is read-only: the
renderer never computes new quantities, it only arranges what the CSV
already carries.  Infeasible combinations arrive as status=SKIPPED(...)
rows with empty numeric fields; they must survive parsing because a valid
run may legitimately contain them (they are simply not drawn).
"""

from __future__ import annotations

import csv
import io
from pathlib import Path

CSV_COLUMNS = (
    "scenario",
    "sweep_var",
    "sweep_value",
    "data_precoder",
    "an_precoder",
    "evaluator",
    "phi",
    "R_mt",
    "C_eve",
    "R_sec",
    "gamma_linear",
    "stderr_R_sec",
    "n_realizations",
    "singular_X_count",
    "status",
)


class SchemaError(ValueError):
    """Raised when a file does not carry the experiment CSV schema."""


def load_rows(path: str | Path) -> list[dict[str, str]]:
    """Read all rows of ``path``, tolerating '#' comment lines above the header.

    Raises :class:`SchemaError` naming every missing column, and again for a
    file with a valid header but no data rows: an empty run must fail loudly
    rather than produce an empty figure.
    """
    path = Path(path)
    with path.open(newline="") as handle:
        payload = [line for line in handle if not line.startswith("#")]
    reader = csv.DictReader(io.StringIO("".join(payload)))
    fields = reader.fieldnames or ()
    missing = [column for column in CSV_COLUMNS if column not in fields]
    if missing:
        raise SchemaError(f"{path}: missing column(s): {', '.join(missing)}")
    rows = list(reader)
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    return rows


def numeric(row: dict[str, str], column: str) -> float | None:
    """Float value of a field, or None when it is empty (SKIPPED rows).

    'inf' parses to an infinite float, matching the writer's convention for
    an unbounded eavesdropper.
    """
    text = (row[column] or "").strip()
    return float(text) if text else None
