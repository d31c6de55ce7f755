"""Large-system spectral tools and the offline polynomial coefficient solves.

The limiting spectrum of ``W = Hhat Hhat^H / N_T`` for a K x N_T estimate
matrix with i.i.d. entries of variance ``t`` is the Marchenko-Pastur law with
ratio ``beta = K / N_T`` stretched by ``t``; its moments are ``t^l`` times the
unit-variance moments.  All moment-form expressions here carry that scale so
the coefficients can be applied to physical (unnormalized) estimates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import linalg as sla
from scipy import optimize as sopt

from .channel import estimation_stats
from .config import NumericalError, SystemConfig

__all__ = [
    "mp_moment",
    "MomentTable",
    "g_function",
    "g_derivative",
    "PolyCoefficients",
    "poly_data_coefficients",
    "poly_an_coefficients",
]


def mp_moment(order: int, beta: float) -> float:
    """Moment E[lambda^order] of the Marchenko-Pastur law with ratio beta.

    Closed form: sum_{i=0}^{order-1} C(order, i) C(order, i+1) beta^i / order.
    The zeroth moment is 1 by normalization.
    """
    if order < 0 or int(order) != order:
        raise ValueError(f"moment order must be a nonnegative integer, got {order}")
    if not 0.0 < beta <= 1.0:
        raise ValueError(f"beta must lie in (0, 1], got {beta}")
    if order == 0:
        return 1.0
    order = int(order)
    return sum(
        math.comb(order, i) * math.comb(order, i + 1) * beta**i for i in range(order)
    ) / float(order)


@dataclass(frozen=True)
class MomentTable:
    """Precomputed moments zeta[l], l = 0..lmax, of a scaled MP spectrum."""

    beta: float
    scale: float
    zeta: np.ndarray

    @classmethod
    def build(cls, beta: float, lmax: int, scale: float = 1.0) -> "MomentTable":
        z = np.array([scale**ell * mp_moment(ell, beta) for ell in range(lmax + 1)])
        return cls(beta=beta, scale=scale, zeta=z)


def g_function(beta: float, kappa: float) -> float:
    """Limiting normalized resolvent trace of the MP spectrum at ridge kappa.

    Equals lim (1/N_T) tr (Hbar^H Hbar + kappa I)^{-1}; diverges like
    (1 - beta) / kappa as kappa -> 0, so kappa must be positive.
    """
    if kappa <= 0:
        raise ValueError(f"kappa must be positive, got {kappa}")
    if not 0.0 < beta <= 1.0:
        raise ValueError(f"beta must lie in (0, 1], got {beta}")
    root = math.sqrt((1.0 - beta) ** 2 / kappa**2 + 2.0 * (1.0 + beta) / kappa + 1.0)
    return 0.5 * (root + (1.0 - beta) / kappa - 1.0)


def g_derivative(beta: float, kappa: float) -> float:
    """d g_function / d kappa, in the algebraic form used by the SINR results."""
    g = g_function(beta, kappa)
    return -g * (1.0 + g) ** 2 / (beta + kappa * (1.0 + g) ** 2)


@dataclass(frozen=True)
class PolyCoefficients:
    """Offline coefficients for the polynomial data and AN precoders."""

    mu: np.ndarray | None = None
    nu: np.ndarray | None = None
    gamma3: float | None = None
    epsilon: float | None = None
    trace_residual: float | None = None


def _own_cell_stats(cfg: SystemConfig) -> tuple[float, float, float, float]:
    """(trace D, trace D Delta, own estimate variance, own gain), per-user averages."""
    stats = estimation_stats(cfg, 0)
    gains = cfg.gain_table()
    own_gain = float(np.mean(gains[0, 0, :]))
    tr_d = own_gain
    tr_d_delta = float(np.mean(stats.vartheta[0]))
    est_var = float(np.mean(stats.theta[0]))  # physical per-entry estimate variance
    return tr_d, tr_d_delta, est_var, own_gain


def default_interference_trace(cfg: SystemConfig) -> float:
    """Per-user covariance trace of noise plus all inter-cell transmit power."""
    gains = cfg.gain_table()
    cross = gains.sum(axis=0) - gains[0]  # (M, K) minus BS-0 row, evaluated for cell 0
    return 1.0 + cfg.P_T * float(np.mean(cross[0]))


def default_an_power(cfg: SystemConfig, an_kind: str = "SNS") -> float:
    """Per-cell AN power leaked into the own-cell users' directions."""
    stats = estimation_stats(cfg, 0)
    gains = cfg.gain_table()
    residual = float(np.mean(stats.vartheta[0]))
    own = float(np.mean(gains[0, 0, :]))
    scale = own if an_kind.upper() == "RANDOM" else residual
    return (1.0 - cfg.phi) * cfg.P_T * scale


def poly_data_coefficients(
    cfg: SystemConfig,
    order: int,
    p_an: float | None = None,
    tr_sigma_n: float | None = None,
) -> PolyCoefficients:
    """Coefficients of the polynomial data precoder of the given order.

    Solves the moment-domain normal equations of the asymptotic per-user MSE
    and rescales so the materialized precoder meets tr{F^H F} = K in the
    limit.  ``p_an`` and ``tr_sigma_n`` default to an SNS-precoded AN budget
    and the closed-form inter-cell interference trace.
    """
    if order < 0:
        raise ValueError(f"order must be >= 0, got {order}")
    tr_d, tr_d_delta, est_var, _ = _own_cell_stats(cfg)
    if est_var <= 0.0:
        raise NumericalError("estimates carry no signal: polynomial solve is undefined")
    if p_an is None:
        p_an = default_an_power(cfg, "SNS")
    if tr_sigma_n is None:
        tr_sigma_n = default_interference_trace(cfg)
    p = cfg.phi * cfg.P_T / cfg.K
    # Solve against unit-variance moments and rescale afterwards: the physical
    # system is D Pi_unit D with D = diag(est_var^(i+1)), which at low pilot
    # energy is numerically singular even though the problem is benign.
    table = MomentTable.build(cfg.beta, 2 * order + 3)
    z = table.zeta
    idx = np.arange(order + 1)
    const = (tr_d_delta + (tr_sigma_n + p_an) / (cfg.N_T * p)) / est_var
    pi = tr_d * z[idx[:, None] + idx[None, :] + 2] + const * z[idx[:, None] + idx[None, :] + 1]
    psi = z[idx + 1]
    try:
        mu_unit = sla.cho_solve(sla.cho_factor(pi), psi)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(
            f"moment system of order {order} is numerically singular; lower the order"
        ) from exc
    norm = float(mu_unit @ (z[idx[:, None] + idx[None, :] + 1] @ mu_unit)) / est_var
    if norm <= 0.0:
        raise NumericalError("polynomial normalization collapsed; lower the order")
    gamma3 = math.sqrt(cfg.N_T / norm)
    mu = mu_unit / est_var ** (idx + 1.0)
    return PolyCoefficients(mu=gamma3 * mu, gamma3=gamma3)


def _an_system(z: np.ndarray, order: int, eps: float) -> np.ndarray:
    idx = np.arange(order + 1)
    sigma = z[idx[:, None] + idx[None, :] + 3] + eps * z[idx[:, None] + idx[None, :] + 2]
    omega = z[idx + 2] + eps * z[idx + 1]
    return np.linalg.solve(sigma, omega)


def _an_trace_residual(z: np.ndarray, nu: np.ndarray) -> float:
    """Moment-form (1/K) tr{A^H A} constraint gap, target 0."""
    idx = np.arange(len(nu))
    linear = 2.0 * float(nu @ z[idx + 1])
    quad = float(nu @ (z[idx[:, None] + idx[None, :] + 2] @ nu))
    return linear - quad - 1.0


def poly_an_coefficients(cfg: SystemConfig, order: int) -> PolyCoefficients:
    """Coefficients of the polynomial AN precoder of the given order.

    The trace constraint (1/K) tr{A^H A} = 1/beta - 1, expressed through the
    limiting moments, has no exact multiplier solution at finite order: the
    moment form of the constraint gap equals minus the mean squared deviation
    of lambda P(lambda) from 1 and is therefore strictly negative.  The
    multiplier is chosen to make that gap as small as possible; the residual
    gap (normalized by the AN budget 1/beta - 1) is reported in
    ``trace_residual`` and vanishes as the order grows.
    """
    if order < 0:
        raise ValueError(f"order must be >= 0, got {order}")
    _, _, est_var, _ = _own_cell_stats(cfg)
    if est_var <= 0.0:
        raise NumericalError("estimates carry no signal: polynomial solve is undefined")
    # Same unit-domain trick as the data solve; the multiplier scales with
    # est_var and the coefficients with est_var^(j+1).
    table = MomentTable.build(cfg.beta, 2 * order + 3)
    z = table.zeta
    target = 1.0 / cfg.beta - 1.0

    def gap(eps: float) -> float:
        try:
            nu = _an_system(z, order, eps)
        except np.linalg.LinAlgError:
            return np.inf
        return abs(_an_trace_residual(z, nu))

    # Scan magnitudes on a log grid, then polish around the best point.
    grid = np.concatenate(([0.0], np.geomspace(1e-6, 1e6, 49)))
    values = [gap(e) for e in grid]
    best = int(np.argmin(values))
    lo = grid[max(best - 1, 0)]
    hi = grid[min(best + 1, len(grid) - 1)]
    if hi > lo:
        result = sopt.minimize_scalar(gap, bounds=(lo, hi), method="bounded")
        eps_opt = float(result.x) if result.fun <= values[best] else float(grid[best])
    else:
        eps_opt = float(grid[best])
    nu_unit = _an_system(z, order, eps_opt)
    residual = _an_trace_residual(z, nu_unit) / target
    idx = np.arange(order + 1)
    nu = nu_unit / est_var ** (idx + 1.0)
    return PolyCoefficients(
        nu=nu, epsilon=eps_opt * est_var, trace_residual=float(residual)
    )
