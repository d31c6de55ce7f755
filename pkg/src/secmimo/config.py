"""System configuration, path-loss models, and derived power/interference factors.

All power quantities are linear scale.  The per-user data power and the
per-dimension artificial-noise power follow from the split factor ``phi``:

    p = phi * P_T / K,    q = (1 - phi) * P_T / L,

so that ``p * K + q * L == P_T`` holds exactly for every AN subspace
dimension ``L`` of the active AN precoder.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Union

import numpy as np

__all__ = [
    "ConfigError",
    "InfeasibleError",
    "NumericalError",
    "SimplifiedPathLoss",
    "GeneralPathLoss",
    "PathLossModel",
    "SystemConfig",
    "Diagnostic",
    "derived_powers",
    "interference_factors",
    "load_config",
    "validate_config_text",
]


class ConfigError(ValueError):
    """Invalid or mutually inconsistent system parameters."""


class InfeasibleError(RuntimeError):
    """The requested operating point cannot be realized (rank or power deficit)."""


class NumericalError(RuntimeError):
    """A numerical routine lost too much precision to produce a trustworthy result."""


@dataclass(frozen=True)
class SimplifiedPathLoss:
    """Symmetric model: unit own-cell gain, identical cross gain ``rho`` elsewhere."""

    rho: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.rho <= 1.0:
            raise ConfigError(f"rho must lie in [0, 1], got {self.rho}")

    def gain_table(self, m_cells: int, k_users: int) -> np.ndarray:
        """Link gains as an array g[m, n, k]: BS m to user k of cell n."""
        g = np.full((m_cells, m_cells, k_users), self.rho, dtype=float)
        idx = np.arange(m_cells)
        g[idx, idx, :] = 1.0
        return g

    def eve_gains(self, m_cells: int) -> np.ndarray:
        """Gains from each BS to the eavesdropper, which sits in cell 0."""
        g = np.full(m_cells, self.rho, dtype=float)
        g[0] = 1.0
        return g


@dataclass(frozen=True)
class GeneralPathLoss:
    """Arbitrary per-link gains.

    ``beta[m, n, k]`` is the gain from BS m to user k of cell n and
    ``beta_E[m]`` the gain from BS m to the eavesdropper (located in cell 0).
    Own-cell gains must be positive and the eavesdropper's own-cell gain must
    dominate its cross gains, otherwise the interference factors lose their
    ordering guarantees.
    """

    beta: np.ndarray
    beta_E: np.ndarray

    def __post_init__(self) -> None:
        b = np.asarray(self.beta, dtype=float)
        be = np.asarray(self.beta_E, dtype=float)
        if b.ndim != 3 or b.shape[0] != b.shape[1]:
            raise ConfigError(f"beta must have shape (M, M, K), got {b.shape}")
        if be.ndim != 1 or be.shape[0] != b.shape[0]:
            raise ConfigError(f"beta_E must have shape (M,), got {be.shape}")
        if np.any(b < 0) or np.any(be < 0):
            raise ConfigError("path-loss gains must be nonnegative")
        m = b.shape[0]
        own = b[np.arange(m), np.arange(m), :]
        if np.any(own <= 0):
            raise ConfigError("own-cell gains beta[n, n, k] must be positive")
        if be[0] <= 0 or np.any(be > be[0]):
            raise ConfigError("eavesdropper own-cell gain beta_E[0] must dominate")
        object.__setattr__(self, "beta", b)
        object.__setattr__(self, "beta_E", be)

    def gain_table(self, m_cells: int, k_users: int) -> np.ndarray:
        if self.beta.shape != (m_cells, m_cells, k_users):
            raise ConfigError(
                f"path-loss table shaped {self.beta.shape} does not match "
                f"(M, M, K) = ({m_cells}, {m_cells}, {k_users})"
            )
        return self.beta

    def eve_gains(self, m_cells: int) -> np.ndarray:
        return self.beta_E


PathLossModel = Union[SimplifiedPathLoss, GeneralPathLoss]


@dataclass(frozen=True)
class SystemConfig:
    """Immutable description of one multi-cell downlink operating point.

    Parameters
    ----------
    M, K, N_T, N_E:
        Number of cells, users per cell, BS transmit antennas, and
        eavesdropper receive antennas.
    P_T:
        Total per-BS transmit power budget (linear).
    phi:
        Fraction of ``P_T`` spent on data, the rest on artificial noise.
    tau, p_tau:
        Pilot sequence length and per-symbol pilot power.
    T:
        Coherence interval length in symbols.
    path_loss:
        Large-scale gain model shared by all cells.
    """

    M: int
    K: int
    N_T: int
    N_E: int
    P_T: float
    phi: float
    tau: int
    p_tau: float
    T: int
    path_loss: PathLossModel = field(default_factory=lambda: SimplifiedPathLoss(0.1))

    def __post_init__(self) -> None:
        if self.M < 1:
            raise ConfigError(f"M must be >= 1, got {self.M}")
        if self.K < 1:
            raise ConfigError(f"K must be >= 1, got {self.K}")
        if self.K > self.N_T:
            raise ConfigError(f"K = {self.K} exceeds N_T = {self.N_T}")
        if self.N_E < 0:
            raise ConfigError(f"N_E must be >= 0, got {self.N_E}")
        if not self.P_T > 0:
            raise ConfigError(f"P_T must be positive, got {self.P_T}")
        if not 0.0 < self.phi <= 1.0:
            raise ConfigError(f"phi must lie in (0, 1], got {self.phi}")
        if self.tau < self.K:
            raise ConfigError(f"tau = {self.tau} is below K = {self.K}: pilots must be orthogonal")
        if self.p_tau < 0:
            raise ConfigError(f"p_tau must be >= 0, got {self.p_tau}")
        if self.T < self.tau:
            raise ConfigError(f"T = {self.T} is shorter than the pilot phase tau = {self.tau}")
        # Fail early on a mismatched general gain table.
        self.path_loss.gain_table(self.M, self.K)

    @property
    def beta(self) -> float:
        """System load K / N_T."""
        return self.K / self.N_T

    @property
    def alpha(self) -> float:
        """Eavesdropper antenna ratio N_E / N_T."""
        return self.N_E / self.N_T

    @property
    def pilot_energy(self) -> float:
        return self.p_tau * self.tau

    def gain_table(self) -> np.ndarray:
        return self.path_loss.gain_table(self.M, self.K)

    def eve_gains(self) -> np.ndarray:
        return self.path_loss.eve_gains(self.M)


def derived_powers(cfg: SystemConfig, L: int) -> tuple[float, float]:
    """Per-user data power and per-dimension AN power for AN rank ``L``.

    With ``phi == 1`` no AN power is allocated and ``q = 0`` regardless of L.
    Otherwise ``L == 0`` leaves the AN budget with nowhere to go.
    """
    if L < 0:
        raise ConfigError(f"AN dimension L must be >= 0, got {L}")
    p = cfg.phi * cfg.P_T / cfg.K
    if cfg.phi == 1.0:
        return p, 0.0
    if L == 0:
        raise InfeasibleError("AN subspace has dimension 0 but phi < 1 allocates AN power")
    return p, (1.0 - cfg.phi) * cfg.P_T / L


def interference_factors(cfg: SystemConfig) -> tuple[float, float]:
    """Aggregate gain factors (a, c) seen by the eavesdropper.

    a = sum of gains from all BSs, normalized to the own-cell gain;
    c = same for squared gains.  Always 1 <= c <= a <= M and a^2 / c <= M.
    """
    g = cfg.eve_gains() / cfg.eve_gains()[0]
    a = float(np.sum(g))
    c = float(np.sum(g**2))
    return a, c


@dataclass(frozen=True)
class Diagnostic:
    """One problem found while validating a config file."""

    line: int  # 0 when the problem is not tied to a specific line
    message: str

    def __str__(self) -> str:
        where = f"line {self.line}: " if self.line else ""
        return f"{where}{self.message}"


_REQUIRED_KEYS = ("M", "K", "N_T", "N_E", "P_T_dB", "phi", "rho")
_OPTIONAL_KEYS = ("tau", "p_tau", "T")
_INT_KEYS = {"M", "K", "N_T", "N_E", "tau", "T"}


def _parse_lines(text: str) -> tuple[dict[str, tuple[int, str]], list[Diagnostic]]:
    entries: dict[str, tuple[int, str]] = {}
    problems: list[Diagnostic] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            problems.append(Diagnostic(lineno, f"expected key=value, got {line!r}"))
            continue
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _REQUIRED_KEYS and key not in _OPTIONAL_KEYS:
            problems.append(Diagnostic(lineno, f"unknown key {key!r}"))
            continue
        if key in entries:
            problems.append(Diagnostic(lineno, f"duplicate key {key!r}"))
            continue
        entries[key] = (lineno, value)
    return entries, problems


def validate_config_text(text: str) -> list[Diagnostic]:
    """Check a flat key=value config; returns all problems with line numbers."""
    entries, problems = _parse_lines(text)
    values: dict[str, float] = {}
    for key in _REQUIRED_KEYS:
        if key not in entries:
            problems.append(Diagnostic(0, f"missing required key {key!r}"))
    for key, (lineno, raw) in entries.items():
        try:
            values[key] = int(raw) if key in _INT_KEYS else float(raw)
        except ValueError:
            problems.append(Diagnostic(lineno, f"cannot parse value for {key!r}: {raw!r}"))
    if problems:
        return problems

    def line_of(key: str) -> int:
        return entries[key][0] if key in entries else 0

    # Check each invariant separately so one violation cannot mask another.
    k, n_t = int(values["K"]), int(values["N_T"])
    tau = int(values.get("tau", k))
    t_len = int(values.get("T", tau + 100))
    p_total = 10.0 ** (values["P_T_dB"] / 10.0)
    p_tau = values.get("p_tau", p_total / max(k, 1))
    rules = (
        ("M", values["M"] < 1, f"M must be >= 1, got {int(values['M'])}"),
        ("K", k < 1, f"K must be >= 1, got {k}"),
        ("K", k > n_t, f"K = {k} exceeds N_T = {n_t}"),
        ("N_E", values["N_E"] < 0, f"N_E must be >= 0, got {int(values['N_E'])}"),
        ("phi", not 0.0 < values["phi"] <= 1.0, f"phi must lie in (0, 1], got {values['phi']}"),
        ("rho", not 0.0 <= values["rho"] <= 1.0, f"rho must lie in [0, 1], got {values['rho']}"),
        ("tau", tau < k, f"tau = {tau} is below K = {k}: pilots must be orthogonal"),
        ("p_tau", p_tau < 0, f"p_tau must be >= 0, got {p_tau}"),
        ("T", t_len < tau, f"T = {t_len} is shorter than the pilot phase tau = {tau}"),
    )
    for key, violated, message in rules:
        if violated:
            problems.append(Diagnostic(line_of(key), message))
    if problems:
        return problems
    try:
        _config_from_values(values)
    except ConfigError as exc:
        problems.append(Diagnostic(0, str(exc)))
    return problems


def _config_from_values(values: dict[str, float]) -> SystemConfig:
    k = int(values["K"])
    p_total = 10.0 ** (values["P_T_dB"] / 10.0)
    tau = int(values.get("tau", k))
    return SystemConfig(
        M=int(values["M"]),
        K=k,
        N_T=int(values["N_T"]),
        N_E=int(values["N_E"]),
        P_T=p_total,
        phi=values["phi"],
        tau=tau,
        p_tau=values.get("p_tau", p_total / k),
        T=int(values.get("T", tau + 100)),
        path_loss=SimplifiedPathLoss(values["rho"]),
    )


def load_config(path: str | Path) -> SystemConfig:
    """Parse a config file; raises ConfigError listing every diagnostic."""
    text = Path(path).read_text()
    problems = validate_config_text(text)
    if problems:
        raise ConfigError("; ".join(str(p) for p in problems))
    entries, _ = _parse_lines(text)
    values = {
        key: (int(raw) if key in _INT_KEYS else float(raw)) for key, (_, raw) in entries.items()
    }
    return _config_from_values(values)
