"""Linear downlink data precoders built from channel estimates.

Every constructor takes physical channel estimates (large-scale gain already
applied), returns an ``F`` of shape (N_T, K) rescaled so that
``tr{F^H F} == K`` holds exactly, and records the rescale factor in
``gamma``.  Collaborative variants consume the stacked estimates of all M
cells with the serving cell's K rows first; their zero-forcing direction is
the serving cell's users.

Regularizers are quoted in the normalized Gram domain ``W = Hhat Hhat^H / N_T``
so that the same ``kappa`` is meaningful for every antenna count: the solve
applies ``kappa * N_T`` to the unnormalized Gram.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .config import InfeasibleError

__all__ = [
    "DataPrecoder",
    "mf_precoder",
    "szf_precoder",
    "srci_precoder",
    "czf_precoder",
    "crci_precoder",
    "poly_data_precoder",
    "apply_data_precoder",
]

COND_LIMIT = 1e12


@dataclass(frozen=True)
class DataPrecoder:
    kind: str
    F: np.ndarray  # (N_T, K)
    gamma: float
    kappa: float | None = None
    mu: np.ndarray | None = None
    raw_trace: float | None = None  # trace of F^H F before the exact rescale
    hbar: np.ndarray | None = field(default=None, repr=False)  # POLY fast-apply state


def _normalize(kind: str, f0: np.ndarray, k_users: int, **extra) -> DataPrecoder:
    raw = float(np.linalg.norm(f0, "fro") ** 2)
    if not np.isfinite(raw) or raw <= 0.0:
        raise InfeasibleError(f"{kind} precoder has no usable signal space (trace {raw})")
    gamma = float(np.sqrt(k_users / raw))
    return DataPrecoder(kind=kind, F=gamma * f0, gamma=gamma, raw_trace=raw, **extra)


def mf_precoder(Hhat_nn: np.ndarray) -> DataPrecoder:
    """Matched filter: conjugate beamforming on the own-cell estimates."""
    k_users = Hhat_nn.shape[0]
    return _normalize("MF", Hhat_nn.conj().T, k_users)


def _gram_solve(kind: str, hhat: np.ndarray, kappa: float) -> np.ndarray:
    """Right inverse through the row Gram, regularized by kappa * N_T."""
    rows, n_tx = hhat.shape
    gram = hhat @ hhat.conj().T + kappa * n_tx * np.eye(rows)
    cond = np.linalg.cond(gram)
    if not np.isfinite(cond) or cond > COND_LIMIT:
        raise InfeasibleError(f"{kind} Gram matrix is too ill conditioned (cond {cond:.3g})")
    return hhat.conj().T @ np.linalg.inv(gram)


def szf_precoder(Hhat_nn: np.ndarray) -> DataPrecoder:
    """Selfish zero forcing: right pseudo-inverse of the own-cell estimates."""
    k_users = Hhat_nn.shape[0]
    pre = _normalize("SZF", _gram_solve("SZF", Hhat_nn, 0.0), k_users)
    return replace(pre, kappa=0.0)


def srci_precoder(Hhat_nn: np.ndarray, kappa: float) -> DataPrecoder:
    """Selfish regularized channel inversion with explicit regularizer."""
    if kappa < 0:
        raise ValueError(f"kappa must be >= 0, got {kappa}")
    k_users = Hhat_nn.shape[0]
    pre = _normalize("SRCI", _gram_solve("SRCI", Hhat_nn, kappa), k_users)
    return replace(pre, kappa=kappa)


def czf_precoder(Hhat_stacked: np.ndarray, k_users: int | None = None) -> DataPrecoder:
    """Collaborative zero forcing across all stacked user channels.

    The precoder nulls every stacked row but only carries data towards the
    first ``k_users`` of them (the serving cell).  Omitting ``k_users`` serves
    all rows, which reduces CZF to SZF for a single-cell stack.
    """
    rows, n_tx = Hhat_stacked.shape
    if rows > n_tx:
        raise InfeasibleError(f"cannot null {rows} user channels with {n_tx} antennas")
    k_users = rows if k_users is None else k_users
    inv = _gram_solve("CZF", Hhat_stacked, 0.0)
    pre = _normalize("CZF", inv[:, :k_users], k_users)
    return replace(pre, kappa=0.0)


def crci_precoder(
    Hhat_stacked: np.ndarray, kappa: float, k_users: int | None = None
) -> DataPrecoder:
    """Collaborative regularized channel inversion serving the first rows."""
    if kappa < 0:
        raise ValueError(f"kappa must be >= 0, got {kappa}")
    rows, _ = Hhat_stacked.shape
    k_users = rows if k_users is None else k_users
    inv = _gram_solve("CRCI", Hhat_stacked, kappa)
    pre = _normalize("CRCI", inv[:, :k_users], k_users)
    return replace(pre, kappa=kappa)


def poly_data_precoder(Hhat_nn: np.ndarray, mu: np.ndarray) -> DataPrecoder:
    """Polynomial expansion precoder with fixed coefficient vector ``mu``."""
    mu = np.asarray(mu, dtype=float)
    if mu.ndim != 1 or mu.size == 0:
        raise ValueError("mu must be a nonempty coefficient vector")
    k_users, n_tx = Hhat_nn.shape
    hbar = Hhat_nn / np.sqrt(n_tx)
    w = hbar @ hbar.conj().T
    poly = mu[-1] * np.eye(k_users, dtype=complex)
    for c in mu[-2::-1]:
        poly = poly @ w + c * np.eye(k_users)
    f0 = hbar.conj().T @ poly / np.sqrt(n_tx)
    pre = _normalize("POLY", f0, k_users)
    return replace(pre, mu=mu, hbar=hbar)


def apply_data_precoder(pre: DataPrecoder, symbols: np.ndarray) -> np.ndarray:
    """Map K data symbols to N_T antennas.

    POLY precoders run Horner's scheme on the stored normalized estimates
    instead of touching the materialized matrix; the result agrees with
    ``pre.F @ symbols`` to floating-point accuracy.
    """
    if pre.kind != "POLY" or pre.hbar is None:
        return pre.F @ symbols
    hbar, mu = pre.hbar, pre.mu
    acc = mu[-1] * symbols
    for c in mu[-2::-1]:
        acc = hbar @ (hbar.conj().T @ acc) + c * symbols
    return pre.gamma * (hbar.conj().T @ acc) / np.sqrt(hbar.shape[1])
