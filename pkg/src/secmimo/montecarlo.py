"""Monte Carlo evaluation of user rates and eavesdropper capacity.

The estimator averages the interference terms of the downlink SINR over
channel realizations and plugs the averages into the rate expression, which
matches the deterministic-equivalent analysis the closed forms come from.
Every realization draws its own generator from one spawned seed sequence, so
results are reproducible regardless of how sweeps are distributed.

The eavesdropper is noise free (worst case): its capacity per realization is
log2(1 + p v^H X^{-1} v) with v the precoded target-user channel at the
eavesdropper and X the received AN covariance.  Realizations where X is
numerically singular are counted; any such realization marks the capacity
unbounded, which clamps the secrecy rate of the run to zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from . import analytics
from .an_precoders import cns_precoder, poly_an_precoder, random_an_precoder, sns_precoder
from .asymptotics import poly_an_coefficients, poly_data_coefficients
from .channel import estimate_channels, sample_small_scale
from .config import SystemConfig, derived_powers
from .data_precoders import (
    crci_precoder,
    czf_precoder,
    mf_precoder,
    poly_data_precoder,
    srci_precoder,
    szf_precoder,
)

__all__ = [
    "SecrecyReport",
    "PhiOptimum",
    "parse_data_kind",
    "parse_an_kind",
    "estimate_mt_sinr",
    "estimate_eve_capacity",
    "ergodic_secrecy_rate",
    "optimize_phi",
]

COND_LIMIT = 1e12


@dataclass(frozen=True)
class SecrecyReport:
    data_kind: str
    an_kind: str
    gamma_mc: float
    R_mt_mc: float
    C_eve_mc: float
    R_sec_mc: float
    stderr_R_mt: float
    stderr_C_eve: float
    stderr_R_sec: float
    n_realizations: int
    singular_X_count: int
    components: dict[str, float]


@dataclass(frozen=True)
class PhiOptimum:
    phi_opt: float
    R_sec_opt: float
    curve: list[tuple[float, float]]
    unimodal: bool
    n_violations: int
    # True when no grid point achieved a positive rate (leakage dominates
    # everywhere), in which case phi_opt is just the least-bad grid point.
    all_zero: bool = False


def parse_data_kind(label: str) -> tuple[str, int | None]:
    """Split a data precoder label such as ``POLY_I2`` into kind and order."""
    label = label.upper()
    if label.startswith("POLY"):
        suffix = label.removeprefix("POLY").lstrip("_")
        if suffix.startswith("I"):
            suffix = suffix[1:]
        return "POLY", int(suffix) if suffix else 2
    if label in analytics.DATA_KINDS:
        return label, None
    raise ValueError(f"unknown data precoder label {label!r}")


def parse_an_kind(label: str) -> tuple[str, int | None]:
    """Split an AN precoder label such as ``POLY_J5`` into kind and order."""
    label = label.upper()
    if label.startswith("POLY"):
        suffix = label.removeprefix("POLY").lstrip("_")
        if suffix.startswith("J"):
            suffix = suffix[1:]
        return "POLY", int(suffix) if suffix else 2
    if label in analytics.AN_KINDS:
        return label, None
    raise ValueError(f"unknown AN precoder label {label!r}")


def _resolve_run(cfg: SystemConfig, data_kind: str, an_kind: str, kappa: float | None):
    """Precompute everything shared across realizations for one run."""
    data_base, data_order = parse_data_kind(data_kind)
    an_base, an_order = parse_an_kind(an_kind)
    l_dim = analytics.an_dimension(an_base, cfg)
    p, q = derived_powers(cfg, l_dim)
    analytic_an = an_base if an_base in analytics.AN_KINDS else "SNS"
    if data_base in ("SRCI", "CRCI") and kappa is None:
        kappa = analytics.sinr_analytic(data_base, analytic_an, cfg).kappa_used
    mu = nu = None
    if data_base == "POLY":
        mu = poly_data_coefficients(
            cfg, data_order, p_an=analytics.p_an(an_base, cfg)
        ).mu
    if an_base == "POLY":
        nu = poly_an_coefficients(cfg, an_order).nu
    return data_base, an_base, p, q, kappa, mu, nu


def _cell_precoders(cfg, real, est, rng, data_base, an_base, kappa, mu, nu):
    gains_sqrt = np.sqrt(cfg.gain_table())
    m_cells, k_users = cfg.M, cfg.K
    precoders, an_precoders = [], []
    for n in range(m_cells):
        ghat_own = gains_sqrt[n, n, :, None] * est.Hhat[n, n]
        stack = None
        if data_base in ("CZF", "CRCI") or an_base == "CNS":
            blocks = [ghat_own if m == n else gains_sqrt[n, m, :, None] * est.Hhat_collab[n, m]
                      for m in [n] + [m for m in range(m_cells) if m != n]]
            stack = np.concatenate(blocks, axis=0)
        if data_base == "MF":
            pre = mf_precoder(ghat_own)
        elif data_base == "SZF":
            pre = szf_precoder(ghat_own)
        elif data_base == "SRCI":
            pre = srci_precoder(ghat_own, kappa)
        elif data_base == "CZF":
            pre = czf_precoder(stack, k_users)
        elif data_base == "CRCI":
            pre = crci_precoder(stack, kappa, k_users)
        elif data_base == "POLY":
            pre = poly_data_precoder(ghat_own, mu)
        else:
            raise ValueError(f"unknown data precoder kind {data_base!r}")
        precoders.append(pre)

        if an_base == "SNS":
            an = sns_precoder(ghat_own)
        elif an_base == "CNS":
            an = cns_precoder(stack)
        elif an_base == "RANDOM":
            an = random_an_precoder(rng, cfg.N_T)
        elif an_base == "POLY":
            an = poly_an_precoder(ghat_own, nu)
        else:
            raise ValueError(f"unknown AN precoder kind {an_base!r}")
        an_precoders.append(an)
    return precoders, an_precoders


def _simulate(
    cfg: SystemConfig,
    data_kind: str,
    an_kind: str,
    n_realizations: int,
    seed: int,
    kappa: float | None,
    want_eve: bool,
):
    if n_realizations < 1:
        raise ValueError("need at least one realization")
    data_base, an_base, p, q, kappa, mu, nu = _resolve_run(cfg, data_kind, an_kind, kappa)
    gains = cfg.gain_table()
    eve_gains = cfg.eve_gains()
    m_cells = cfg.M
    want_eve = want_eve and cfg.N_E > 0

    desired = np.zeros(n_realizations, dtype=complex)
    desired_sq = np.zeros(n_realizations)
    interference = np.zeros(n_realizations)
    an_leak = np.zeros(n_realizations)
    own_an_quad = np.zeros(n_realizations)
    eve_caps = np.full(n_realizations, np.nan)
    singular = 0

    children = np.random.SeedSequence(seed).spawn(n_realizations)
    for r in range(n_realizations):
        rng = np.random.default_rng(children[r])
        real = sample_small_scale(rng, cfg)
        est = estimate_channels(real, cfg, rng)
        precoders, an_precoders = _cell_precoders(
            cfg, real, est, rng, data_base, an_base, kappa, mu, nu
        )

        g_rows = [np.sqrt(gains[m, 0, 0]) * real.H[m, 0, 0, :] for m in range(m_cells)]
        d = g_rows[0] @ precoders[0].F[:, 0]
        desired[r] = d
        desired_sq[r] = abs(d) ** 2
        interf = 0.0
        for m in range(m_cells):
            beams = g_rows[m] @ precoders[m].F  # (K,)
            power = np.abs(beams) ** 2
            if m == 0:
                power[0] = 0.0
            interf += float(power.sum())
        interference[r] = interf
        own_an_quad[r] = float(np.linalg.norm(g_rows[0] @ an_precoders[0].A) ** 2)
        an_leak[r] = sum(
            float(np.linalg.norm(g_rows[m] @ an_precoders[m].A) ** 2) for m in range(m_cells)
        )

        if not want_eve:
            continue
        x = np.zeros((cfg.N_E, cfg.N_E), dtype=complex)
        for m in range(m_cells):
            ge_a = (np.sqrt(eve_gains[m]) * real.H_E[m]) @ an_precoders[m].A
            x += q * (ge_a @ ge_a.conj().T)
        v = (np.sqrt(eve_gains[0]) * real.H_E[0]) @ precoders[0].F[:, 0]
        cond = np.linalg.cond(x)
        if not np.isfinite(cond) or cond > COND_LIMIT:
            singular += 1
            continue
        snr = p * float(np.real(v.conj() @ np.linalg.solve(x, v)))
        eve_caps[r] = math.log2(1.0 + max(snr, 0.0))

    components = {
        "signal": p * float(abs(desired.mean())) ** 2,
        "gain_variance": p * float(desired_sq.mean() - abs(desired.mean()) ** 2),
        "an_leakage": q * float(an_leak.mean()),
        "interference": p * float(interference.mean()),
        "noise": 1.0,
        "own_cell_an_quadratic": float(own_an_quad.mean()),
    }
    return {
        "p": p,
        "q": q,
        "desired": desired,
        "desired_sq": desired_sq,
        "interference": interference,
        "an_leak": an_leak,
        "eve_caps": eve_caps,
        "singular": singular,
        "components": components,
        "labels": (data_kind.upper(), an_kind.upper()),
    }


def _gamma_from_means(p, q, d_mean, d2_mean, i_mean, an_mean) -> float:
    signal = p * abs(d_mean) ** 2
    variance = p * max(d2_mean - abs(d_mean) ** 2, 0.0)
    return signal / (variance + q * an_mean + p * i_mean + 1.0)


def _mt_rate_stats(sim, n: int) -> tuple[float, float, float]:
    p, q = sim["p"], sim["q"]
    gamma = _gamma_from_means(
        p, q,
        sim["desired"].mean(), sim["desired_sq"].mean(),
        sim["interference"].mean(), sim["an_leak"].mean(),
    )
    r_mt = math.log2(1.0 + gamma)
    n_batches = min(10, n)
    if n_batches < 2:
        return gamma, r_mt, 0.0
    rates = []
    for chunk in np.array_split(np.arange(n), n_batches):
        g = _gamma_from_means(
            p, q,
            sim["desired"][chunk].mean(), sim["desired_sq"][chunk].mean(),
            sim["interference"][chunk].mean(), sim["an_leak"][chunk].mean(),
        )
        rates.append(math.log2(1.0 + g))
    stderr = float(np.std(rates, ddof=1) / math.sqrt(n_batches))
    return gamma, r_mt, stderr


def _eve_stats(sim, cfg: SystemConfig) -> tuple[float, float, int]:
    if cfg.N_E == 0:
        return 0.0, 0.0, 0
    caps = sim["eve_caps"]
    finite = caps[np.isfinite(caps)]
    singular = int(sim["singular"])
    if singular > 0 or finite.size == 0:
        return math.inf, 0.0, max(singular, len(caps) - finite.size)
    stderr = float(np.std(finite, ddof=1) / math.sqrt(finite.size)) if finite.size > 1 else 0.0
    return float(finite.mean()), stderr, 0


def estimate_mt_sinr(
    cfg: SystemConfig,
    data_kind: str,
    an_kind: str,
    n_realizations: int = 500,
    seed: int = 0,
    kappa: float | None = None,
) -> tuple[float, dict[str, float]]:
    """Simulated downlink SINR of the reference user, with its power breakdown."""
    sim = _simulate(cfg, data_kind, an_kind, n_realizations, seed, kappa, want_eve=False)
    gamma, _, _ = _mt_rate_stats(sim, n_realizations)
    return gamma, sim["components"]


def estimate_eve_capacity(
    cfg: SystemConfig,
    data_kind: str,
    an_kind: str,
    n_realizations: int = 500,
    seed: int = 0,
    kappa: float | None = None,
) -> tuple[float, float, int]:
    """Simulated eavesdropper capacity: (mean, standard error, singular count)."""
    sim = _simulate(cfg, data_kind, an_kind, n_realizations, seed, kappa, want_eve=True)
    return _eve_stats(sim, cfg)


def ergodic_secrecy_rate(
    cfg: SystemConfig,
    data_kind: str,
    an_kind: str,
    n_realizations: int = 500,
    seed: int = 0,
    kappa: float | None = None,
) -> SecrecyReport:
    """Full simulated secrecy evaluation sharing one set of channel draws."""
    sim = _simulate(cfg, data_kind, an_kind, n_realizations, seed, kappa, want_eve=True)
    gamma, r_mt, se_mt = _mt_rate_stats(sim, n_realizations)
    c_eve, se_eve, singular = _eve_stats(sim, cfg)
    r_sec = max(r_mt - c_eve, 0.0) if math.isfinite(c_eve) else 0.0
    se_sec = math.sqrt(se_mt**2 + se_eve**2) if math.isfinite(c_eve) else 0.0
    data_label, an_label = sim["labels"]
    return SecrecyReport(
        data_kind=data_label,
        an_kind=an_label,
        gamma_mc=gamma,
        R_mt_mc=r_mt,
        C_eve_mc=c_eve,
        R_sec_mc=r_sec,
        stderr_R_mt=se_mt,
        stderr_C_eve=se_eve,
        stderr_R_sec=se_sec,
        n_realizations=n_realizations,
        singular_X_count=singular,
        components=sim["components"],
    )


def _phi_objective(cfg, data_kind, an_kind, evaluator, n_realizations, seed):
    if evaluator == "analytic":
        def evaluate(phi: float) -> float:
            return analytics.secrecy_lower_bound(
                data_kind, an_kind, replace(cfg, phi=phi)
            ).R_sec
        return evaluate
    if evaluator == "monte_carlo":
        def evaluate(phi: float) -> float:
            report = ergodic_secrecy_rate(
                replace(cfg, phi=phi), data_kind, an_kind,
                n_realizations=n_realizations, seed=seed,
            )
            return report.R_sec_mc
        return evaluate
    raise ValueError(f"unknown evaluator {evaluator!r}")


def optimize_phi(
    cfg: SystemConfig,
    data_kind: str,
    an_kind: str,
    evaluator: str = "analytic",
    grid_size: int = 32,
    n_realizations: int = 200,
    seed: int = 0,
) -> PhiOptimum:
    """Scan the power split and refine the best grid point by golden section.

    The Monte Carlo evaluator reuses one seed for every split value, so the
    sweep sees common random numbers and stays comparable across points.
    Unimodality violations (rises after the peak or dips before it, beyond
    numerical noise) are counted, not fixed.
    """
    if grid_size < 3:
        raise ValueError("grid must have at least 3 points")
    evaluate = _phi_objective(cfg, data_kind, an_kind, evaluator, n_realizations, seed)
    phis = np.linspace(0.0, 1.0, grid_size + 2)[1:-1]
    values = np.array([evaluate(p) for p in phis])
    best = int(np.argmax(values))

    tol = 1e-12 if evaluator == "analytic" else 1e-3
    peak = best
    n_violations = int(
        np.sum(np.diff(values[: peak + 1]) < -tol) + np.sum(np.diff(values[peak:]) > tol)
    )

    lo = phis[best - 1] if best > 0 else phis[best] / 2.0
    hi = phis[best + 1] if best < len(phis) - 1 else (phis[best] + 1.0) / 2.0
    phi_opt, r_opt = phis[best], values[best]
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = hi - invphi * (hi - lo)
    x2 = lo + invphi * (hi - lo)
    f1, f2 = evaluate(x1), evaluate(x2)
    iterations = 24 if evaluator == "analytic" else 6
    for _ in range(iterations):
        if f1 >= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - invphi * (hi - lo)
            f1 = evaluate(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + invphi * (hi - lo)
            f2 = evaluate(x2)
    for x, f in ((x1, f1), (x2, f2)):
        if f > r_opt:
            phi_opt, r_opt = x, f
    curve = [(float(p), float(v)) for p, v in zip(phis, values)]
    all_zero = bool(np.max(values) <= 0.0)
    return PhiOptimum(
        float(phi_opt), float(r_opt), curve, n_violations == 0, n_violations, all_zero
    )
