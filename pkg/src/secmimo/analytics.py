"""Closed-form rate analysis: SINRs, secrecy bounds, crossovers, and FLOP counts.

Two evaluation routes exist for the downlink SINR.  The fast route uses the
symmetric-network closed forms (valid for :class:`SimplifiedPathLoss` only);
the general route evaluates the underlying propositions from the per-link
gain table for the reference user (cell 0, user 0).  On simplified inputs
both routes agree to floating-point accuracy, which the test suite pins.

All rates are in bits per channel use; the eavesdropper bound assumes the
noise-free worst case, which is why it diverges once the AN split or the
antenna ratio leaves its validity region.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .asymptotics import g_function
from .channel import estimation_stats
from .config import (
    ConfigError,
    InfeasibleError,
    SimplifiedPathLoss,
    SystemConfig,
    interference_factors,
)

__all__ = [
    "AnalyticSINR",
    "EveBound",
    "SecrecyAnalytics",
    "CrossoverThresholds",
    "an_dimension",
    "an_leakage_Q",
    "p_an",
    "sinr_analytic",
    "sinr_relations",
    "crossover_thresholds",
    "eve_capacity_bound",
    "secrecy_lower_bound",
    "alpha_s",
    "flops_data",
    "flops_an",
]

DATA_KINDS = ("MF", "SZF", "SRCI", "CZF", "CRCI")
AN_KINDS = ("SNS", "CNS", "RANDOM")


@dataclass(frozen=True)
class AnalyticSINR:
    """Asymptotic SINR with the denominator split into named loss terms.

    For the ZF/MF rows ``components`` holds the four additive denominator
    terms (the SINR is the signal coefficient over their sum).  For the RCI
    rows the first three entries decompose the denominator of the effective
    SNR Gamma, while ``pilot_contamination`` adds to the inverted bracket
    directly.
    """

    kind: str
    gamma: float
    kappa_used: float | None
    gamma_hat: float | None = None  # effective-SNR constant behind the RCI forms
    components: dict[str, float] | None = None


@dataclass(frozen=True)
class EveBound:
    """Worst-case eavesdropper capacity bound and its validity edge."""

    value: float  # bits/use; inf when the bound does not apply
    valid: bool
    alpha_limit: float  # largest antenna ratio the bound can certify


@dataclass(frozen=True)
class SecrecyAnalytics:
    """Secrecy rate lower bound and the quantities it is assembled from.

    ``chi`` is the auxiliary a beta/alpha - beta c N_T/(a L) behind the
    eavesdropper bound; ``alpha_s`` is the antenna-ratio frontier for the
    data precoders that admit one (None otherwise).
    """

    data_kind: str
    an_kind: str
    gamma: float
    R_mt: float
    C_eve_bound: float
    R_sec: float
    bound_valid: bool
    chi: float = math.inf
    alpha_s: float | None = None


@dataclass(frozen=True)
class CrossoverThresholds:
    """Operating-point thresholds separating the data precoder regimes.

    Thresholds that never bind are reported as ``inf`` together with a reason
    string in ``never`` keyed by field name.
    """

    k_szf_gt_mf: float
    k_czf_gt_szf: float
    pe_szf_gt_mf: float
    pe_czf_gt_szf: float
    beta_mf: float
    beta_szf: float
    never: dict[str, str]


def _require_simplified(cfg: SystemConfig) -> SimplifiedPathLoss:
    if not isinstance(cfg.path_loss, SimplifiedPathLoss):
        raise ConfigError("closed-form route needs the symmetric path-loss model")
    return cfg.path_loss


def _simplified_constants(cfg: SystemConfig) -> tuple[float, float, float, float]:
    rho = _require_simplified(cfg).rho
    a = 1.0 + (cfg.M - 1) * rho
    c = 1.0 + (cfg.M - 1) * rho**2
    energy = cfg.pilot_energy
    theta = energy / (1.0 + a * energy)
    vartheta = (1.0 + (cfg.M - 1) * rho * energy) / (1.0 + a * energy)
    return a, c, theta, vartheta


def an_dimension(an_kind: str, cfg: SystemConfig) -> int:
    """Effective AN dimension L of the given precoder kind."""
    kind = an_kind.upper()
    if kind in ("SNS", "POLY"):
        return cfg.N_T - cfg.K
    if kind == "CNS":
        l_dim = cfg.N_T - cfg.M * cfg.K
        if l_dim <= 0:
            raise InfeasibleError(
                f"CNS needs N_T > M K, got N_T = {cfg.N_T}, M K = {cfg.M * cfg.K}"
            )
        return l_dim
    if kind == "RANDOM":
        return cfg.N_T
    raise ValueError(f"unknown AN kind {an_kind!r}")


def an_leakage_Q(an_kind: str, cfg: SystemConfig) -> float:
    """Per-user AN leakage factor Q~ of the given AN precoder kind.

    The AN power received by a user equals (1 - phi) P_T Q~ in the large
    system limit.  Cross-cell AN always leaks with the full link gain; the
    own-cell (SNS) or all-cell (CNS) components are suppressed down to the
    channel estimation residual.
    """
    kind = an_kind.upper()
    stats = estimation_stats(cfg, 0)
    gains = cfg.gain_table()
    beta_links = gains[:, 0, :]  # (M, K): BS m to the users of cell 0
    own = beta_links[0]
    cross = beta_links.sum(axis=0) - own
    if kind in ("SNS", "POLY"):
        return float(np.mean(cross + stats.vartheta[0]))
    if kind == "CNS":
        return float(np.mean(stats.vartheta.sum(axis=0)))
    if kind == "RANDOM":
        return float(np.mean(beta_links.sum(axis=0)))
    raise ValueError(f"unknown AN kind {an_kind!r}")


def p_an(an_kind: str, cfg: SystemConfig) -> float:
    """AN power leaked into the own-cell users, (1 - phi) P_T times the residual."""
    kind = an_kind.upper()
    stats = estimation_stats(cfg, 0)
    if kind in ("SNS", "CNS", "POLY"):
        scale = float(np.mean(stats.vartheta[0]))
    elif kind == "RANDOM":
        scale = float(np.mean(cfg.gain_table()[0, 0, :]))
    else:
        raise ValueError(f"unknown AN kind {an_kind!r}")
    return (1.0 - cfg.phi) * cfg.P_T * scale


def _rci_sinr(gamma_hat: float, load: float, kappa: float, ic: float) -> float:
    g = g_function(load, kappa)
    bracket = (gamma_hat + (1.0 + g) ** 2) / (
        g * gamma_hat * (1.0 + kappa * (1.0 + g) ** 2 / load)
    )
    return 1.0 / (bracket + ic)


def _fast_sinr(data_kind: str, an_kind: str, cfg: SystemConfig, kappa: float | None) -> AnalyticSINR:
    a, _, theta, vartheta = _simplified_constants(cfg)
    rho = _require_simplified(cfg).rho
    beta, phi, m_cells = cfg.beta, cfg.phi, cfg.M
    q_tilde = an_leakage_Q(an_kind, cfg)
    d0 = (1.0 - phi) * beta * q_tilde + beta / cfg.P_T
    ic = (m_cells - 1) * rho**2
    kind = data_kind.upper()

    an_leak = (1.0 - phi) * beta * q_tilde
    noise = beta / cfg.P_T

    if kind == "MF":
        parts = {
            "an_leakage": an_leak,
            "noise": noise,
            "interference": beta * phi * a,
            "pilot_contamination": ic * theta * phi,
        }
        gamma = theta * phi / sum(parts.values())
        return AnalyticSINR(kind, gamma, None, components=parts)
    if kind == "SZF":
        parts = {
            "an_leakage": an_leak,
            "noise": noise,
            "interference": beta * phi * (a - theta),
            "pilot_contamination": ic * theta * phi * (1.0 - beta),
        }
        return AnalyticSINR(
            kind, theta * phi * (1.0 - beta) / sum(parts.values()), 0.0, components=parts
        )
    if kind == "CZF":
        if m_cells * beta >= 1.0:
            raise InfeasibleError(f"CZF needs M K < N_T, got M beta = {m_cells * beta:.3f}")
        parts = {
            "an_leakage": an_leak,
            "noise": noise,
            "interference": beta * phi * a * (1.0 - theta),
            "pilot_contamination": ic * theta * phi * (1.0 - m_cells * beta),
        }
        return AnalyticSINR(
            kind,
            theta * phi * (1.0 - m_cells * beta) / sum(parts.values()),
            0.0,
            components=parts,
        )
    if kind == "SRCI":
        inter = beta * phi * rho * (m_cells - 1)
        big_gamma = beta * phi / (inter + d0)
        gamma_hat = big_gamma * theta / (big_gamma * vartheta + 1.0)
        kappa_opt = beta / gamma_hat
        kappa_used = kappa_opt if kappa is None else kappa
        parts = {
            "an_leakage": an_leak,
            "noise": noise,
            "inter_cell": inter,
            "pilot_contamination": ic,
        }
        return AnalyticSINR(
            kind, _rci_sinr(gamma_hat, beta, kappa_used, ic), kappa_used, gamma_hat, parts
        )
    if kind == "CRCI":
        big_gamma = beta * phi / d0
        gamma_hat = big_gamma * theta / (big_gamma * vartheta + 1.0)
        load = a * beta
        kappa_opt = load / gamma_hat
        kappa_used = kappa_opt if kappa is None else kappa
        parts = {
            "an_leakage": an_leak,
            "noise": noise,
            "inter_cell": 0.0,
            "pilot_contamination": ic,
        }
        return AnalyticSINR(
            kind, _rci_sinr(gamma_hat, load, kappa_used, ic), kappa_used, gamma_hat, parts
        )
    raise ValueError(f"no closed-form SINR for data precoder {data_kind!r}")


def _general_sinr(
    data_kind: str, an_kind: str, cfg: SystemConfig, kappa: float | None
) -> AnalyticSINR:
    stats = estimation_stats(cfg, 0)
    gains = cfg.gain_table()
    theta_m = stats.theta[:, 0]
    vartheta_m = stats.vartheta[:, 0]
    beta_m = gains[:, 0, 0]
    beta_load, phi, m_cells = cfg.beta, cfg.phi, cfg.M
    q_tilde = an_leakage_Q(an_kind, cfg)
    ic = float(np.sum(theta_m[1:]) / theta_m[0])
    cross_gain = float(np.sum(beta_m[1:]))
    kind = data_kind.upper()

    if kind == "MF":
        num = theta_m[0] * phi
        parts = {
            "an_leakage": beta_load * (1.0 - phi) * q_tilde,
            "noise": beta_load / cfg.P_T,
            "interference": beta_load * phi * float(np.sum(beta_m)),
            "pilot_contamination": phi * float(np.sum(theta_m[1:])),
        }
        return AnalyticSINR(kind, num / sum(parts.values()), None, components=parts)

    if kind in ("SRCI", "SZF"):
        parts = {
            "an_leakage": (1.0 - phi) * q_tilde,
            "noise": 1.0 / cfg.P_T,
            "inter_cell": phi * cross_gain,
            "pilot_contamination": ic,
        }
        big_gamma = beta_m[0] * phi / (
            phi * cross_gain + (1.0 - phi) * q_tilde + 1.0 / cfg.P_T
        )
        gamma_hat = big_gamma * theta_m[0] / (big_gamma * vartheta_m[0] + 1.0)
        if kind == "SZF":
            gamma = 1.0 / (beta_load / ((1.0 - beta_load) * gamma_hat) + ic)
            return AnalyticSINR(kind, gamma, 0.0, gamma_hat, parts)
        kappa_opt = beta_load / gamma_hat
        kappa_used = kappa_opt if kappa is None else kappa
        gamma = _rci_sinr(gamma_hat, beta_load, kappa_used, ic)
        return AnalyticSINR(kind, gamma, kappa_used, gamma_hat, parts)

    if kind in ("CRCI", "CZF"):
        parts = {
            "an_leakage": (1.0 - phi) * q_tilde,
            "noise": 1.0 / cfg.P_T,
            "inter_cell": 0.0,
            "pilot_contamination": ic,
        }
        big_gamma = beta_m[0] * phi / ((1.0 - phi) * q_tilde + 1.0 / cfg.P_T)
        b_factor = float(np.sum(beta_m)) / beta_m[0]
        load = b_factor * beta_load
        if kind == "CRCI":
            gamma_hat = big_gamma * theta_m[0] / (big_gamma * vartheta_m[0] + 1.0)
            kappa_opt = load / gamma_hat
            kappa_used = kappa_opt if kappa is None else kappa
            gamma = _rci_sinr(gamma_hat, load, kappa_used, ic)
            return AnalyticSINR(kind, gamma, kappa_used, gamma_hat, parts)
        if m_cells * beta_load >= 1.0:
            raise InfeasibleError(
                f"CZF needs M K < N_T, got M beta = {m_cells * beta_load:.3f}"
            )
        gamma_hat = (
            m_cells
            * big_gamma
            * theta_m[0]
            / (big_gamma * b_factor * vartheta_m[0] + 1.0)
        )
        load_zf = m_cells * beta_load
        gamma = 1.0 / (load_zf / ((1.0 - load_zf) * gamma_hat) + ic)
        return AnalyticSINR(kind, gamma, 0.0, gamma_hat, parts)

    raise ValueError(f"no closed-form SINR for data precoder {data_kind!r}")


def sinr_analytic(
    data_kind: str,
    an_kind: str,
    cfg: SystemConfig,
    kappa: float | None = None,
    method: str = "auto",
) -> AnalyticSINR:
    """Asymptotic downlink SINR of the reference user.

    ``method`` picks the evaluation route: ``"fast"`` (symmetric closed
    forms), ``"general"`` (per-link propositions), or ``"auto"`` which uses
    the fast route whenever the path-loss model allows it.
    """
    an_dimension(an_kind, cfg)  # surfaces infeasible AN kinds early
    if method == "auto":
        method = "fast" if isinstance(cfg.path_loss, SimplifiedPathLoss) else "general"
    if method == "fast":
        return _fast_sinr(data_kind, an_kind, cfg, kappa)
    if method == "general":
        return _general_sinr(data_kind, an_kind, cfg, kappa)
    raise ValueError(f"unknown method {method!r}")


def sinr_relations(cfg: SystemConfig, an_kind: str = "SNS") -> dict[str, float]:
    """Residuals of the exact SINR coupling identities between the ZF family.

    Returns zero (to rounding) for any symmetric network::

        gamma_SZF / gamma_MF  == 1 + beta (c gamma_SZF - 1)
        gamma_CZF / gamma_SZF == (1 - M beta)/(1 - beta)
                                  + a (a - 1) beta / (1 - beta) gamma_CZF
    """
    a, c, _, _ = _simplified_constants(cfg)
    beta, m_cells = cfg.beta, cfg.M
    g_mf = sinr_analytic("MF", an_kind, cfg).gamma
    g_szf = sinr_analytic("SZF", an_kind, cfg).gamma
    out = {"szf_over_mf": g_szf / g_mf - (1.0 + beta * (c * g_szf - 1.0))}
    if m_cells * beta < 1.0:
        g_czf = sinr_analytic("CZF", an_kind, cfg).gamma
        out["czf_over_szf"] = g_czf / g_szf - (
            (1.0 - m_cells * beta) / (1.0 - beta)
            + a * (a - 1.0) * beta / (1.0 - beta) * g_czf
        )
    return out


def crossover_thresholds(cfg: SystemConfig, an_kind: str = "SNS") -> CrossoverThresholds:
    """Regime boundaries between MF, SZF, and CZF data precoding.

    The user-count thresholds hold the pilot energy fixed at the configured
    value; the pilot-energy thresholds assume SNS AN leakage, which is the
    assumption under which their closed forms were derived.
    """
    a, _, theta, _ = _simplified_constants(cfg)
    rho = _require_simplified(cfg).rho
    phi, beta = cfg.phi, cfg.beta
    q_tilde = an_leakage_Q(an_kind, cfg)
    never: dict[str, str] = {}

    k_szf = theta * phi * cfg.N_T / ((1.0 - phi) * q_tilde + a * phi + 1.0 / cfg.P_T)
    k_czf = (
        rho * phi * theta * cfg.N_T
        / ((1.0 - phi) * q_tilde + (a * (1.0 - theta) + rho * theta * cfg.M) * phi + 1.0 / cfg.P_T)
    )

    def pe_threshold(scale: float, label: str) -> float:
        den = (scale * phi * (1.0 - beta) / beta + 1.0) / (a + 1.0 / cfg.P_T) - a
        if den <= 0.0:
            never[label] = "load too high: threshold unreachable for any pilot energy"
            return math.inf
        return 1.0 / den

    pe_szf = pe_threshold(1.0, "pe_szf_gt_mf")
    pe_czf = pe_threshold(rho, "pe_czf_gt_szf")

    def beta_limit(scale: float, label: str) -> float:
        den = a**2 + a / cfg.P_T + scale * phi - 1.0
        if den <= 0.0:
            never[label] = "interference too weak: no load limit below 1"
            return math.inf
        return scale * phi / den

    b_mf = beta_limit(1.0, "beta_mf")
    b_szf = beta_limit(rho, "beta_szf")
    return CrossoverThresholds(k_szf, k_czf, pe_szf, pe_czf, b_mf, b_szf, never)


def eve_capacity_bound(cfg: SystemConfig, L: int) -> EveBound:
    """Upper bound on the eavesdropper capacity for AN dimension L.

    Assumes the noise-free worst case.  The bound requires both AN power
    (phi < 1) and an antenna ratio below a^2 L / (c N_T); outside that region
    it is reported as unbounded.
    """
    a, c = interference_factors(cfg)
    if L <= 0:
        raise InfeasibleError(f"AN dimension must be positive, got L = {L}")
    alpha = cfg.alpha
    alpha_limit = a**2 * L / (c * cfg.N_T)
    if alpha == 0.0:
        return EveBound(0.0, True, alpha_limit)
    if cfg.phi >= 1.0:
        return EveBound(math.inf, False, alpha_limit)
    if alpha >= alpha_limit:
        return EveBound(math.inf, False, alpha_limit)
    beta = cfg.beta
    inner = alpha * cfg.phi / (
        beta * (1.0 - cfg.phi) * (a - c * alpha * cfg.N_T / (L * a))
    )
    return EveBound(math.log2(1.0 + inner), True, alpha_limit)


def secrecy_lower_bound(
    data_kind: str,
    an_kind: str,
    cfg: SystemConfig,
    kappa: float | None = None,
    method: str = "auto",
) -> SecrecyAnalytics:
    """Ergodic secrecy rate lower bound: user rate minus the eavesdropper bound."""
    sinr = sinr_analytic(data_kind, an_kind, cfg, kappa=kappa, method=method)
    r_mt = math.log2(1.0 + sinr.gamma)
    l_dim = an_dimension(an_kind, cfg)
    bound = eve_capacity_bound(cfg, l_dim)
    r_sec = max(r_mt - bound.value, 0.0) if math.isfinite(bound.value) else 0.0
    a, c = interference_factors(cfg)
    chi = math.inf
    if cfg.alpha > 0.0:
        chi = a * cfg.beta / cfg.alpha - cfg.beta * c * cfg.N_T / (a * l_dim)
    try:
        frontier = alpha_s(data_kind, an_kind, cfg)
    except (ValueError, ConfigError, InfeasibleError):
        frontier = None
    return SecrecyAnalytics(
        data_kind.upper(),
        an_kind.upper(),
        sinr.gamma,
        r_mt,
        bound.value,
        r_sec,
        bound.valid,
        chi,
        frontier,
    )


def alpha_s(data_kind: str, an_kind: str, cfg: SystemConfig) -> float:
    """Largest eavesdropper antenna ratio with a positive secrecy rate.

    Evaluated in the limit of a vanishing AN power split, where the secrecy
    rate is maximized with respect to the eavesdropper's capability.
    """
    a, c, theta, _ = _simplified_constants(cfg)
    l_dim = an_dimension(an_kind, cfg)
    q_tilde = an_leakage_Q(an_kind, cfg)
    beta = cfg.beta
    kind = data_kind.upper()
    if kind == "MF":
        factor = 1.0
    elif kind == "SZF":
        factor = 1.0 - beta
    elif kind == "CZF":
        if cfg.M * beta >= 1.0:
            raise InfeasibleError(f"CZF needs M K < N_T, got M beta = {cfg.M * beta:.3f}")
        factor = 1.0 - cfg.M * beta
    else:
        raise ValueError(f"alpha_s has no closed form for data precoder {data_kind!r}")
    return (
        factor * a**2 * theta
        / (q_tilde * a + c * theta * factor * cfg.N_T / l_dim + a / cfg.P_T)
    )


def _check_horizon(t: int, tau: int) -> int:
    if t <= tau:
        raise ValueError(f"coherence interval T = {t} leaves no data phase after tau = {tau}")
    return t - tau


def flops_data(
    kind: str, k: int, m: int, n_t: int, t: int, tau: int, order: int | None = None
) -> int:
    """Exact FLOP count per coherence interval for a data precoder."""
    data_len = _check_horizon(t, tau)
    kind = kind.upper()
    if kind == "MF":
        return (2 * k - 1) * n_t * data_len
    if kind in ("SZF", "SRCI"):
        solve = (k * k + k) * (2 * n_t - 1) // 2 + k**3 + k**2 + k + n_t * k * (2 * k - 1)
        return solve + (2 * k - 1) * n_t * data_len
    if kind in ("CZF", "CRCI"):
        mk = m * k
        solve = (mk * mk + mk) * (2 * n_t - 1) // 2 + mk**3 + mk**2 + mk
        solve += n_t * mk * (2 * mk - 1)
        return solve + (2 * k - 1) * n_t * data_len
    if kind == "POLY":
        if order is None:
            raise ValueError("POLY FLOP count needs the polynomial order")
        return data_len * ((order + 1) * (2 * k - 1) * n_t + order * (2 * n_t - 1) * k)
    raise ValueError(f"unknown data precoder kind {kind!r}")


def flops_an(
    kind: str, k: int, m: int, n_t: int, t: int, tau: int, order: int | None = None
) -> int:
    """Exact FLOP count per coherence interval for an AN precoder."""
    data_len = _check_horizon(t, tau)
    kind = kind.upper()
    if kind == "SNS":
        build = (k * k + k) * (2 * n_t - 1) // 2 + k**3 + k**2 + k
        build += n_t * (n_t + k) * (2 * k - 1)
        return build + (2 * n_t - 1) * n_t * data_len
    if kind == "CNS":
        mk = m * k
        build = (mk * mk + mk) * (2 * n_t - 1) // 2 + mk**3 + mk**2 + mk
        build += n_t * (n_t + mk) * (2 * mk - 1)
        return build + (2 * n_t - 1) * n_t * data_len
    if kind == "RANDOM":
        return (2 * n_t - 1) * n_t * data_len
    if kind == "POLY":
        if order is None:
            raise ValueError("POLY FLOP count needs the polynomial order")
        return (order + 1) * ((2 * k - 1) * n_t + (2 * n_t - 1) * k) * data_len
    raise ValueError(f"unknown AN precoder kind {kind!r}")
