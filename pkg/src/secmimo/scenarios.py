"""Experiment catalog: named parameter sweeps emitting a fixed CSV schema.

Ten scenarios (fig0..fig9) cover the rate, secrecy, feasibility, and
complexity sweeps of the study at desk scale.  Each scenario materializes
into a list of cells, one per (variant, sweep value); every cell carries a
fully validated configuration, so an infeasible precoder pair at one sweep
point degrades into a SKIPPED row instead of aborting the run.

Determinism: the seed of every Monte Carlo run is derived from
(master_seed, cell index, pair index), so CSV bytes do not depend on --jobs.
"""

from __future__ import annotations

import csv
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from datetime import datetime, timezone

import numpy as np

from . import analytics
from .config import ConfigError, InfeasibleError, SimplifiedPathLoss, SystemConfig
from .montecarlo import ergodic_secrecy_rate, optimize_phi, parse_an_kind, parse_data_kind

__all__ = [
    "CSV_COLUMNS",
    "RunCell",
    "Scenario",
    "SCENARIO_NAMES",
    "build_scenario",
    "list_scenarios",
    "run_scenario",
    "write_csv",
]

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


@dataclass(frozen=True)
class RunCell:
    """One sweep point of one scenario variant."""

    variant: str  # "" or a key=value tag appended to the scenario name
    sweep_value: float
    cfg: SystemConfig
    pairs: tuple[tuple[str, str], ...]
    evaluators: tuple[str, ...]
    quantity: str = "secrecy"  # secrecy | alpha_s | gflops
    optimize_phi_first: bool = False


@dataclass(frozen=True)
class Scenario:
    name: str
    description: str
    sweep_var: str
    n_realizations: int
    master_seed: int
    cells: tuple[RunCell, ...]

    def __post_init__(self):
        seen: dict[str, float] = {}
        for cell in self.cells:
            prev = seen.get(cell.variant)
            if prev is not None and cell.sweep_value <= prev:
                raise ConfigError(
                    f"sweep values must be strictly increasing, got {cell.sweep_value} "
                    f"after {prev} in {self.name}/{cell.variant or '-'}"
                )
            seen[cell.variant] = cell.sweep_value


def _cfg(
    m: int,
    k: int,
    n_t: int,
    n_e: int,
    phi: float,
    rho: float,
    p_t: float = 10.0,
    p_tau: float | None = None,
    tau: int | None = None,
    t: int | None = None,
) -> SystemConfig:
    tau = k if tau is None else tau
    p_tau = p_t / k if p_tau is None else p_tau
    t = tau + 100 if t is None else t
    return SystemConfig(
        M=m, K=k, N_T=n_t, N_E=n_e, P_T=p_t, phi=phi, tau=tau, p_tau=p_tau, T=t,
        path_loss=SimplifiedPathLoss(rho),
    )


def _cap(value: int, nt: int | None) -> int:
    return value if nt is None else min(value, nt)


PHI_GRID = tuple(round(i / 25, 4) for i in range(1, 26))
DATA_FIVE = ("MF", "SZF", "SRCI", "CZF", "CRCI")
N_T_GRID = (64, 128, 192, 256)
K_GRID = (8, 16, 32, 64)
PILOT_ENERGIES = (0.1, 0.316, 1.0, 3.16, 10.0, 31.6)
POLY_NETWORKS = (("network=m2", 2, 0.10, 0.1), ("network=m7", 7, 0.15, 0.3))


def _fig0(nt, n, seed):
    n_t = _cap(200, nt)
    cells = []
    for beta in (0.1, 0.2, 0.3, 0.4, 0.5):
        cfg = _cfg(2, round(beta * n_t), n_t, round(0.2 * n_t), 0.75, 0.3)
        cells.append(RunCell(
            "", beta, cfg,
            (("SZF", "SNS"), ("SZF", "CNS"), ("SZF", "RANDOM")),
            ("analytic", "monte_carlo"),
        ))
    return Scenario(
        "fig0", "eavesdropper capacity vs normalized user load, SZF data with each AN kind",
        "beta", n or 500, seed, tuple(cells),
    )


def _nt_sweep(name, description, k, m, rho, nt, n, seed):
    values = [v for v in N_T_GRID if nt is None or v <= nt] or [nt]
    cells = []
    for n_t in values:
        cfg = _cfg(m, k, n_t, round(0.1 * n_t), 0.75, rho)
        cells.append(RunCell(
            "", float(n_t), cfg,
            tuple((d, "SNS") for d in DATA_FIVE),
            ("analytic", "monte_carlo"),
        ))
    return Scenario(name, description, "N_T", n or 500, seed, tuple(cells))


def _fig1(nt, n, seed):
    return _nt_sweep(
        "fig1", "secrecy rate vs antenna count, lightly loaded network, all data precoders",
        10, 2, 0.1, nt, n, seed,
    )


def _fig2(nt, n, seed):
    return _nt_sweep(
        "fig2", "secrecy rate vs antenna count, dense network, all data precoders",
        20, 7, 0.3, nt, n, seed,
    )


def _fig3(nt, n, seed):
    n_t = _cap(100, nt)
    cells = []
    for beta in (0.1, 0.5):
        for phi in PHI_GRID:
            cfg = _cfg(7, round(beta * n_t), n_t, round(0.1 * n_t), phi, 0.1)
            cells.append(RunCell(
                f"beta={beta}", phi, cfg,
                (("MF", "SNS"), ("SZF", "SNS"), ("SRCI", "SNS")),
                ("analytic",),
            ))
    return Scenario(
        "fig3", "secrecy rate vs power split for the selfish data precoders",
        "phi", n or 500, seed, tuple(cells),
    )


def _fig4(nt, n, seed):
    n_t = _cap(100, nt)
    cells = []
    for m in (2, 7):
        pairs = (("SZF", "SNS"), ("CZF", "SNS"), ("CRCI", "SNS"))
        for phi in PHI_GRID:
            cfg = _cfg(m, round(0.1 * n_t), n_t, round(0.1 * n_t), phi, 0.1)
            cells.append(RunCell(f"family=data,M={m}", phi, cfg, pairs, ("analytic",)))
    for beta in (0.2, 0.4):
        pairs = (("SZF", "SNS"), ("SZF", "CNS"), ("SZF", "RANDOM"))
        for phi in PHI_GRID:
            cfg = _cfg(2, round(beta * n_t), n_t, round(0.1 * n_t), phi, 0.1)
            cells.append(RunCell(f"family=an,beta={beta}", phi, cfg, pairs, ("analytic",)))
    return Scenario(
        "fig4", "secrecy rate vs power split for collaborative data and AN variants",
        "phi", n or 500, seed, tuple(cells),
    )


def _fig5(nt, n, seed):
    n_t = _cap(100, nt)
    betas = tuple(round(0.05 * i, 2) for i in range(1, 10))
    cells = []
    for variant, pairs in (
        ("family=data", (("MF", "SNS"), ("SZF", "SNS"), ("CZF", "SNS"))),
        ("family=an", (("SZF", "SNS"), ("SZF", "CNS"), ("SZF", "RANDOM"))),
    ):
        for beta in betas:
            cfg = _cfg(2, max(round(beta * n_t), 1), n_t, 0, 0.5, 0.3)
            cells.append(RunCell(variant, beta, cfg, pairs, ("analytic",), quantity="alpha_s"))
    return Scenario(
        "fig5", "tolerable eavesdropper antenna ratio vs user load",
        "beta", n or 500, seed, tuple(cells),
    )


def _pilot_energy_sweep(name, description, pairs, nt, n, seed):
    n_t = _cap(200, nt)
    cells = []
    for variant, m, beta, rho in POLY_NETWORKS:
        k = round(beta * n_t)
        for energy in PILOT_ENERGIES:
            cfg = _cfg(m, k, n_t, round(0.1 * n_t), 0.5, rho, p_tau=energy / k)
            cells.append(RunCell(
                variant, energy, cfg, pairs, ("monte_carlo",), optimize_phi_first=True,
            ))
    return Scenario(name, description, "pilot_energy", n or 250, seed, tuple(cells))


def _fig6(nt, n, seed):
    pairs = tuple(
        (d, "SNS") for d in ("MF", "SZF", "SRCI", "POLY_I1", "POLY_I2", "POLY_I3")
    )
    return _pilot_energy_sweep(
        "fig6", "secrecy rate vs pilot energy at the per-point optimal split, data precoders",
        pairs, nt, n, seed,
    )


def _fig7(nt, n, seed):
    pairs = tuple(
        ("SZF", a) for a in ("SNS", "RANDOM", "POLY_J1", "POLY_J2", "POLY_J5")
    )
    return _pilot_energy_sweep(
        "fig7", "secrecy rate vs pilot energy at the per-point optimal split, AN precoders",
        pairs, nt, n, seed,
    )


def _k_sweep_cells(nt, pairs, quantity, evaluators):
    n_t = _cap(256, nt)
    cells = []
    for k in K_GRID:
        if k > n_t:
            continue
        cfg = _cfg(2, k, n_t, round(0.1 * n_t), 0.75, 0.1)
        cells.append(RunCell("", float(k), cfg, pairs, evaluators, quantity=quantity))
    return tuple(cells)


def _fig8(nt, n, seed):
    pairs = tuple(
        (d, "SNS") for d in ("MF", "SZF", "SRCI", "CZF", "CRCI", "POLY_I1", "POLY_I3")
    )
    return Scenario(
        "fig8", "secrecy rate vs users per cell for all data precoders",
        "K", n or 300, seed, _k_sweep_cells(nt, pairs, "secrecy", ("monte_carlo",)),
    )


def _fig9(nt, n, seed):
    pairs = tuple(
        ("SZF", a) for a in ("SNS", "CNS", "RANDOM", "POLY_J1", "POLY_J5")
    )
    return Scenario(
        "fig9", "AN precoder complexity in GFLOPs vs users per cell",
        "K", n or 300, seed, _k_sweep_cells(nt, pairs, "gflops", ("analytic",)),
    )


_BUILDERS = {
    "fig0": _fig0, "fig1": _fig1, "fig2": _fig2, "fig3": _fig3, "fig4": _fig4,
    "fig5": _fig5, "fig6": _fig6, "fig7": _fig7, "fig8": _fig8, "fig9": _fig9,
}
SCENARIO_NAMES = tuple(_BUILDERS)


def build_scenario(
    name: str,
    nt: int | None = None,
    realizations: int | None = None,
    seed: int = 0,
) -> Scenario:
    """Materialize a catalog scenario, optionally capping N_T and realizations."""
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise ConfigError(
            f"unknown scenario {name!r}; known: {', '.join(SCENARIO_NAMES)}"
        ) from None
    return builder(nt, realizations, seed)


def list_scenarios() -> list[tuple[str, str]]:
    return [(name, _BUILDERS[name](None, None, 0).description) for name in SCENARIO_NAMES]


def _infeasible_reason(cfg: SystemConfig, data_base: str, an_base: str) -> str | None:
    if an_base == "CNS" and cfg.M * cfg.K >= cfg.N_T:
        return "CNS needs N_T > M K"
    if data_base in ("CZF", "CRCI") and cfg.M * cfg.K >= cfg.N_T:
        return f"{data_base} needs N_T > M K"
    return None


def _blank_row(sc_name: str, sweep_var: str, cell: RunCell, data_label: str,
               an_label: str, evaluator: str) -> dict:
    scenario = f"{sc_name}/{cell.variant}" if cell.variant else sc_name
    return {
        "scenario": scenario,
        "sweep_var": sweep_var,
        "sweep_value": cell.sweep_value,
        "data_precoder": data_label,
        "an_precoder": an_label,
        "evaluator": evaluator,
        "phi": None, "R_mt": None, "C_eve": None, "R_sec": None,
        "gamma_linear": None, "stderr_R_sec": None, "n_realizations": None,
        "singular_X_count": None, "status": "OK",
    }


def _run_cell(sc_name: str, sweep_var: str, cell: RunCell, cell_idx: int,
              master_seed: int, n_real: int) -> list[dict]:
    rows = []
    for pair_idx, (data_label, an_label) in enumerate(cell.pairs):
        data_base, data_order = parse_data_kind(data_label)
        an_base, an_order = parse_an_kind(an_label)
        reason = _infeasible_reason(cell.cfg, data_base, an_base)
        run_cfg = cell.cfg
        if reason is None and cell.optimize_phi_first:
            # Closed forms pick the split; the POLY kinds borrow the split of
            # the precoder they approximate.
            proxy_data = "SRCI" if data_base == "POLY" else data_base
            proxy_an = "SNS" if an_base == "POLY" else an_base
            opt = optimize_phi(cell.cfg, proxy_data, proxy_an, grid_size=32)
            run_cfg = replace(cell.cfg, phi=opt.phi_opt)
        for evaluator in cell.evaluators:
            row = _blank_row(sc_name, sweep_var, cell, data_label, an_label, evaluator)
            if reason is not None:
                row["status"] = f"SKIPPED({reason})"
                rows.append(row)
                continue
            if evaluator == "analytic" and cell.quantity == "secrecy" and (
                data_base == "POLY" or an_base == "POLY"
            ):
                row["status"] = "SKIPPED(no closed form for POLY kinds)"
                rows.append(row)
                continue
            try:
                if evaluator == "analytic":
                    _fill_analytic(row, cell, run_cfg, data_label, an_label,
                                   data_base, an_base, data_order, an_order)
                else:
                    seed_seq = np.random.SeedSequence([master_seed, cell_idx, pair_idx])
                    run_seed = int(seed_seq.generate_state(1)[0])
                    report = ergodic_secrecy_rate(
                        run_cfg, data_label, an_label,
                        n_realizations=n_real, seed=run_seed,
                    )
                    row.update(
                        phi=run_cfg.phi, R_mt=report.R_mt_mc, C_eve=report.C_eve_mc,
                        R_sec=report.R_sec_mc, gamma_linear=report.gamma_mc,
                        stderr_R_sec=report.stderr_R_sec,
                        n_realizations=report.n_realizations,
                        singular_X_count=report.singular_X_count,
                    )
            except InfeasibleError as exc:
                row["status"] = f"SKIPPED({exc})"
            rows.append(row)
    return rows


def _fill_analytic(row, cell, run_cfg, data_label, an_label,
                   data_base, an_base, data_order, an_order) -> None:
    if cell.quantity == "alpha_s":
        value = analytics.alpha_s(data_base, an_base, run_cfg)
        row.update(phi=0.0, R_mt=0.0, C_eve=0.0, R_sec=value, gamma_linear=0.0,
                   stderr_R_sec=0.0, n_realizations=0, singular_X_count=0)
        return
    if cell.quantity == "gflops":
        flops = analytics.flops_an(
            an_base, run_cfg.K, run_cfg.M, run_cfg.N_T, run_cfg.T, run_cfg.tau,
            order=an_order,
        )
        row.update(phi=0.0, R_mt=0.0, C_eve=0.0, R_sec=0.0, gamma_linear=flops / 1e9,
                   stderr_R_sec=0.0, n_realizations=0, singular_X_count=0)
        return
    sa = analytics.secrecy_lower_bound(data_base, an_base, run_cfg)
    row.update(phi=run_cfg.phi, R_mt=sa.R_mt, C_eve=sa.C_eve_bound, R_sec=sa.R_sec,
               gamma_linear=sa.gamma, stderr_R_sec=0.0, n_realizations=0,
               singular_X_count=0)


def run_scenario(sc: Scenario, jobs: int = 1) -> list[dict]:
    """Run every cell and return CSV-ready rows in catalog order."""
    tasks = [
        (sc.name, sc.sweep_var, cell, idx, sc.master_seed, sc.n_realizations)
        for idx, cell in enumerate(sc.cells)
    ]
    if jobs <= 1:
        chunks = [_run_cell(*task) for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_run_cell_star, tasks))
    return [row for chunk in chunks for row in chunk]


def _run_cell_star(task):
    return _run_cell(*task)


def _format_field(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, float) and math.isinf(value):
        return "inf"
    return f"{value:.10g}"


def write_csv(rows: list[dict], path, include_timestamp: bool = True) -> None:
    """Write rows in the fixed column order, optionally with a stamp comment."""
    with open(path, "w", newline="") as fh:
        if include_timestamp:
            stamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
            fh.write(f"# generated {stamp}\n")
        writer = csv.DictWriter(fh, fieldnames=list(CSV_COLUMNS))
        writer.writeheader()
        for row in rows:
            writer.writerow({key: _format_field(row[key]) for key in CSV_COLUMNS})
