"""Artificial-noise precoders.

``A`` always has shape (N_T, N_T) and ``L`` is the effective AN dimension
used for the power split: the AN vector transmitted is ``A z`` with
``z ~ CN(0, q I_{N_T})`` and ``tr{A^H A} == L`` (exactly for the null-space
and random kinds, within a small deviation for the polynomial kind, whose
coefficients are fixed offline and deliberately not rescaled per
realization).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import InfeasibleError

__all__ = [
    "ANPrecoder",
    "sns_precoder",
    "cns_precoder",
    "random_an_precoder",
    "poly_an_precoder",
    "apply_an_precoder",
]

COND_LIMIT = 1e12


@dataclass(frozen=True)
class ANPrecoder:
    kind: str
    A: np.ndarray  # (N_T, N_T)
    L: int
    nu: np.ndarray | None = None
    raw_trace: float | None = None
    hbar: np.ndarray | None = field(default=None, repr=False)  # POLY fast-apply state


def _null_space_projection(kind: str, hhat: np.ndarray) -> np.ndarray:
    rows, n_tx = hhat.shape
    if rows >= n_tx:
        raise InfeasibleError(f"{kind} needs N_T > {rows} stacked channels, got N_T = {n_tx}")
    gram = hhat @ hhat.conj().T
    cond = np.linalg.cond(gram)
    if not np.isfinite(cond) or cond > COND_LIMIT:
        raise InfeasibleError(f"{kind} Gram matrix is too ill conditioned (cond {cond:.3g})")
    return np.eye(n_tx) - hhat.conj().T @ np.linalg.solve(gram, hhat)


def sns_precoder(Hhat_nn: np.ndarray) -> ANPrecoder:
    """Project AN onto the null space of the own-cell channel estimates."""
    a = _null_space_projection("SNS", Hhat_nn)
    n_tx = Hhat_nn.shape[1]
    return ANPrecoder(kind="SNS", A=a, L=n_tx - Hhat_nn.shape[0], raw_trace=_fro2(a))


def cns_precoder(Hhat_stacked: np.ndarray) -> ANPrecoder:
    """Project AN onto the joint null space of all stacked estimates."""
    a = _null_space_projection("CNS", Hhat_stacked)
    n_tx = Hhat_stacked.shape[1]
    return ANPrecoder(kind="CNS", A=a, L=n_tx - Hhat_stacked.shape[0], raw_trace=_fro2(a))


def random_an_precoder(rng: np.random.Generator, n_t: int) -> ANPrecoder:
    """Isotropic AN: a random matrix rescaled to tr{A^H A} = N_T."""
    a = (rng.standard_normal((n_t, n_t)) + 1j * rng.standard_normal((n_t, n_t))) / np.sqrt(2.0)
    a *= np.sqrt(n_t / _fro2(a))
    return ANPrecoder(kind="RANDOM", A=a, L=n_t, raw_trace=float(n_t))


def poly_an_precoder(Hhat_nn: np.ndarray, nu: np.ndarray) -> ANPrecoder:
    """Polynomial approximation of the selfish null-space projection.

    ``nu`` comes from the asymptotic leakage minimization and is kept as is;
    the trace of A^H A therefore only approximates N_T - K.
    """
    nu = np.asarray(nu, dtype=float)
    if nu.ndim != 1 or nu.size == 0:
        raise ValueError("nu must be a nonempty coefficient vector")
    k_users, n_tx = Hhat_nn.shape
    hbar = Hhat_nn / np.sqrt(n_tx)
    w = hbar @ hbar.conj().T
    poly = nu[-1] * np.eye(k_users, dtype=complex)
    for c in nu[-2::-1]:
        poly = poly @ w + c * np.eye(k_users)
    a = np.eye(n_tx) - hbar.conj().T @ poly @ hbar
    return ANPrecoder(
        kind="POLY", A=a, L=n_tx - k_users, nu=nu, raw_trace=_fro2(a), hbar=hbar
    )


def apply_an_precoder(pre: ANPrecoder, z: np.ndarray) -> np.ndarray:
    """Shape a raw AN vector.

    The POLY kind never touches the materialized matrix: with all nu_j
    nonzero it runs the nested coefficient-ratio recursion, otherwise it
    falls back to accumulating the powers term by term.  Either path agrees
    with ``pre.A @ z`` to floating-point accuracy.
    """
    if pre.kind != "POLY" or pre.hbar is None:
        return pre.A @ z

    hbar, nu = pre.hbar, pre.nu

    def gram_apply(x: np.ndarray) -> np.ndarray:
        return hbar.conj().T @ (hbar @ x)

    if np.all(nu != 0.0):
        acc = z.astype(complex, copy=True)
        for j in range(len(nu) - 1, 0, -1):
            acc = z + (nu[j] / nu[j - 1]) * gram_apply(acc)
        return z - nu[0] * gram_apply(acc)

    term = gram_apply(z)
    shaped = nu[0] * term
    for j in range(1, len(nu)):
        term = gram_apply(term)
        shaped = shaped + nu[j] * term
    return z - shaped


def _fro2(a: np.ndarray) -> float:
    return float(np.linalg.norm(a, "fro") ** 2)
