"""Small-scale channel sampling and pilot-based MMSE channel estimation.

Index conventions used throughout the package:

* ``H[m, n, k, :]`` is the unit-variance small-scale channel row from BS ``m``
  to user ``k`` of cell ``n``; the physical channel is ``sqrt(beta[m, n, k]) * H``.
* ``Hhat[n, m, k, :]`` is BS ``n``'s estimate of its small-scale channel to
  user ``k`` of cell ``m``, i.e. an estimate of ``H[n, m, k, :]``.

Uplink pilots are orthogonal across the K users of a cell and reused in every
cell, so each BS forms one shared observation per pilot slot and all its
cross-cell estimates for that slot are collinear with it.  ``Hhat_collab``
carries a second view in which each cross-cell estimate is refreshed from the
shared-view residual; it has the same per-entry variance but is uncorrelated
with the own-cell rows, which keeps stacked Gram matrices well conditioned.
Collaborative precoders consume ``Hhat_collab``, everything else ``Hhat``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .config import SystemConfig

__all__ = [
    "ChannelRealization",
    "ChannelEstimate",
    "EstimationStats",
    "sample_small_scale",
    "estimate_channels",
    "estimation_stats",
]


def crandn(rng: np.random.Generator, *shape: int) -> np.ndarray:
    """CN(0, 1) entries: unit total variance split between the parts."""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


@dataclass(frozen=True)
class ChannelRealization:
    """One draw of all small-scale channels in the network."""

    H: np.ndarray  # (M, M, K, N_T)
    H_E: np.ndarray  # (M, N_E, N_T)
    rng_seed: int | None = None


@dataclass(frozen=True)
class ChannelEstimate:
    """Per-BS channel estimates and the statistics of the target cell.

    ``theta`` and ``vartheta`` are quoted for cell 0 (the reference cell of
    the analysis); use :func:`estimation_stats` for any other cell.
    ``Delta[n, k]`` is the residual variance of BS n's own-cell estimate,
    normalized to the unit-variance small-scale channel.
    """

    Hhat: np.ndarray  # (M, M, K, N_T), shared-observation view
    Hhat_collab: np.ndarray  # (M, M, K, N_T), decorrelated cross-cell view
    theta: np.ndarray  # (M, K)
    vartheta: np.ndarray  # (M, K)
    Delta: np.ndarray  # (M, K)
    degenerate: bool = False


@dataclass(frozen=True)
class EstimationStats:
    theta: np.ndarray  # (M, K)
    vartheta: np.ndarray  # (M, K)
    delta: np.ndarray  # (K,)


def sample_small_scale(rng: np.random.Generator, cfg: SystemConfig) -> ChannelRealization:
    """Draw all user and eavesdropper channels for one coherence interval."""
    h = crandn(rng, cfg.M, cfg.M, cfg.K, cfg.N_T)
    h_eve = crandn(rng, cfg.M, cfg.N_E, cfg.N_T)
    return ChannelRealization(H=h, H_E=h_eve)


def _normalized_estimate_variance(cfg: SystemConfig) -> np.ndarray:
    """t[n, m, k]: variance of BS n's estimate of the unit-variance H[n, m, k]."""
    gains = cfg.gain_table()
    energy = cfg.pilot_energy
    denom = 1.0 + energy * gains.sum(axis=1)  # (M, K), one shared observation per slot
    return energy * gains / denom[:, None, :]


def estimate_channels(
    real: ChannelRealization, cfg: SystemConfig, rng: np.random.Generator | None = None
) -> ChannelEstimate:
    """MMSE-estimate every channel from the shared pilot observations.

    ``rng`` drives the pilot noise and the residual refresh of the
    collaborative view; pass a seeded generator for reproducible runs.
    """
    if rng is None:
        rng = np.random.default_rng()
    m_cells, k_users, n_tx = cfg.M, cfg.K, cfg.N_T
    gains = cfg.gain_table()
    energy = cfg.pilot_energy

    hhat = np.zeros_like(real.H)
    if energy == 0.0:
        warnings.warn("pilot energy is zero: all channel estimates degenerate to 0", stacklevel=2)
        stats = estimation_stats(cfg, 0)
        delta = np.ones((m_cells, k_users))
        return ChannelEstimate(hhat, hhat.copy(), stats.theta, stats.vartheta, delta, True)

    t = _normalized_estimate_variance(cfg)
    denom = 1.0 + energy * gains.sum(axis=1)  # (M, K)
    noise = crandn(rng, m_cells, k_users, n_tx)
    for n in range(m_cells):
        for k in range(k_users):
            y = np.sqrt(energy) * np.tensordot(np.sqrt(gains[n, :, k]), real.H[n, :, k, :], 1)
            y += noise[n, k]
            hhat[n, :, k, :] = (np.sqrt(energy * gains[n, :, k]) / denom[n, k])[:, None] * y

    # Cross-cell refresh: estimate the shared-view residual u = h - hhat from a
    # noisy side observation tuned so the refreshed estimate keeps variance t.
    hhat_collab = hhat.copy()
    refresh = crandn(rng, m_cells, m_cells, k_users, n_tx)
    for n in range(m_cells):
        for m in range(m_cells):
            if m == n:
                continue
            for k in range(k_users):
                t_nm = t[n, m, k]
                if t_nm == 0.0:
                    hhat_collab[n, m, k, :] = 0.0
                    continue
                var_u = 1.0 - t_nm
                sigma2 = max(var_u * (var_u - t_nm) / t_nm, 0.0)
                residual = real.H[n, m, k, :] - hhat[n, m, k, :]
                side = residual + np.sqrt(sigma2) * refresh[n, m, k, :]
                hhat_collab[n, m, k, :] = var_u / (var_u + sigma2) * side

    stats = estimation_stats(cfg, 0)
    delta_all = np.stack([estimation_stats(cfg, i).delta for i in range(m_cells)])
    return ChannelEstimate(hhat, hhat_collab, stats.theta, stats.vartheta, delta_all)


def estimation_stats(cfg: SystemConfig, n: int) -> EstimationStats:
    """Closed-form estimation statistics for the users of cell ``n``.

    ``theta[m, k]`` is the variance of BS m's estimate of its physical channel
    to user k of cell n, ``vartheta[m, k]`` the complementary residual factor
    entering AN leakage, and ``delta[k]`` the normalized own-cell estimation
    error variance at BS n.
    """
    if not 0 <= n < cfg.M:
        raise ValueError(f"cell index {n} outside 0..{cfg.M - 1}")
    gains = cfg.gain_table()
    energy = cfg.pilot_energy
    denom = 1.0 + energy * gains.sum(axis=1)  # (M, K)
    target = gains[:, n, :]  # (M, K)
    theta = energy * target**2 / denom
    own_idx = np.arange(cfg.M)
    without_own = gains.sum(axis=1) - gains[own_idx, own_idx, :]
    vartheta = target * (1.0 + energy * without_own) / denom
    delta = (1.0 + energy * without_own[n]) / denom[n]
    return EstimationStats(theta=theta, vartheta=vartheta, delta=delta)
