"""Configuration invariants, the exact power split, and the config-file validator."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from factories import make_cfg
from secmimo import (
    ConfigError,
    GeneralPathLoss,
    InfeasibleError,
    SimplifiedPathLoss,
    SystemConfig,
    derived_powers,
    interference_factors,
    load_config,
    validate_config_text,
)


def test_rejects_more_users_than_antennas():
    with pytest.raises(ConfigError, match="exceeds N_T"):
        make_cfg(k=30, n_t=20)


@pytest.mark.parametrize("phi", [0.0, -0.1, 1.5])
def test_rejects_power_split_outside_unit_interval(phi):
    with pytest.raises(ConfigError, match="phi"):
        make_cfg(phi=phi)


def test_rejects_short_pilot_phase():
    # Orthogonal pilots need at least K symbols.
    with pytest.raises(ConfigError, match="pilots must be orthogonal"):
        make_cfg(k=10, tau=5)
    with pytest.raises(ConfigError, match="shorter than the pilot phase"):
        make_cfg(k=10, tau=10, t_len=9)


@pytest.mark.parametrize(
    "kwargs",
    [dict(m=0), dict(k=0), dict(n_e=-1), dict(p_t=0.0), dict(p_tau=-1.0), dict(rho=1.5)],
)
def test_rejects_nonsensical_scalars(kwargs):
    with pytest.raises(ConfigError):
        make_cfg(**kwargs)


def test_load_ratios_and_pilot_energy():
    cfg = make_cfg(k=25, n_t=100, n_e=10, p_t=10.0)
    assert cfg.beta == 0.25
    assert cfg.alpha == 0.10
    # tau = K and p_tau = P_T / K make the pilot energy equal P_T.
    assert cfg.pilot_energy == pytest.approx(10.0)


@given(
    phi=st.floats(0.01, 1.0),
    k=st.integers(1, 64),
    ell=st.integers(1, 512),
    p_t=st.floats(0.1, 1e3),
)
def test_power_split_budget_is_exact(phi, k, ell, p_t):
    cfg = make_cfg(k=k, n_t=max(k, 64), phi=phi, p_t=p_t)
    p, q = derived_powers(cfg, ell)
    assert p * cfg.K + q * ell == pytest.approx(cfg.P_T, rel=1e-12)
    assert p >= 0.0 and q >= 0.0


def test_full_data_allocation_needs_no_an_dimensions():
    cfg = make_cfg(phi=1.0)
    p, q = derived_powers(cfg, 0)
    assert q == 0.0
    assert p == pytest.approx(cfg.P_T / cfg.K)


def test_an_budget_with_no_subspace_is_infeasible():
    cfg = make_cfg(phi=0.5)
    with pytest.raises(InfeasibleError):
        derived_powers(cfg, 0)
    with pytest.raises(ConfigError):
        derived_powers(cfg, -1)


@given(rho=st.floats(0.0, 1.0), m=st.integers(1, 12))
def test_interference_factor_inequalities(rho, m):
    cfg = make_cfg(m=m, rho=rho, k=4, n_t=16)
    a, c = interference_factors(cfg)
    assert a == pytest.approx(1.0 + (m - 1) * rho)
    assert c == pytest.approx(1.0 + (m - 1) * rho**2)
    assert 1.0 <= c <= a + 1e-12 <= m + 1e-12
    assert a**2 / c <= m + 1e-9


def test_general_gains_reduce_to_symmetric_factors():
    rho = 0.3
    m, k = 3, 4
    beta = SimplifiedPathLoss(rho).gain_table(m, k)
    beta_e = SimplifiedPathLoss(rho).eve_gains(m)
    cfg = make_cfg(m=m, k=k, n_t=32, rho=rho)
    general = SystemConfig(
        M=m,
        K=k,
        N_T=32,
        N_E=0,
        P_T=10.0,
        phi=0.75,
        tau=k,
        p_tau=2.5,
        T=k + 100,
        path_loss=GeneralPathLoss(beta, beta_e),
    )
    assert interference_factors(general) == pytest.approx(interference_factors(cfg))


def test_general_gain_table_validation():
    good = np.ones((2, 2, 3))
    with pytest.raises(ConfigError, match="shape"):
        GeneralPathLoss(np.ones((2, 3, 3)), np.ones(2))
    with pytest.raises(ConfigError, match="nonnegative"):
        GeneralPathLoss(-good, np.ones(2))
    with pytest.raises(ConfigError, match="dominate"):
        GeneralPathLoss(good, np.array([0.5, 1.0]))
    # Shape must also match the cell/user counts at config construction.
    with pytest.raises(ConfigError):
        SystemConfig(
            M=3,
            K=3,
            N_T=16,
            N_E=0,
            P_T=10.0,
            phi=0.5,
            tau=3,
            p_tau=1.0,
            T=103,
            path_loss=GeneralPathLoss(good, np.ones(2)),
        )


GOOD_TEXT = """\
M = 2
K = 10
N_T = 100          # antennas
N_E = 10
P_T_dB = 10
phi = 0.75
rho = 0.1
"""


def test_validator_accepts_clean_text():
    assert validate_config_text(GOOD_TEXT) == []


def test_validator_reports_every_violation_with_its_line():
    text = "M = 2\nK = 30\nN_T = 20\nN_E = 10\nP_T_dB = 10\nphi = 1.5\nrho = 0.1\n"
    problems = validate_config_text(text)
    messages = {p.line: p.message for p in problems}
    assert any("exceeds N_T" in m for m in messages.values())
    assert any("phi" in m for m in messages.values())
    # Line attribution: K on line 2, phi on line 6.
    assert 2 in messages and 6 in messages


def test_validator_flags_unknown_duplicate_and_unparsable_keys():
    text = "M = 2\nM = 3\nbogus = 1\nK = ten\n"
    problems = validate_config_text(text)
    joined = " | ".join(str(p) for p in problems)
    assert "duplicate" in joined
    assert "unknown key" in joined
    assert "cannot parse" in joined


def test_validator_reports_missing_required_keys_without_line():
    problems = validate_config_text("M = 2\n")
    assert problems
    assert all(p.line == 0 for p in problems if "missing required" in p.message)


def test_load_config_round_trip(tmp_path):
    path = tmp_path / "point.cfg"
    path.write_text(GOOD_TEXT)
    cfg = load_config(path)
    assert (cfg.M, cfg.K, cfg.N_T, cfg.N_E) == (2, 10, 100, 10)
    # P_T is stored linear; the file quotes dB.
    assert cfg.P_T == pytest.approx(10.0)
    # Defaults: tau = K, p_tau = P_T / K, T = tau + 100.
    assert cfg.tau == 10
    assert cfg.p_tau == pytest.approx(1.0)
    assert cfg.T == 110


def test_load_config_raises_with_all_diagnostics(tmp_path):
    path = tmp_path / "broken.cfg"
    path.write_text("M = 2\nK = 30\nN_T = 20\nN_E = 10\nP_T_dB = 10\nphi = 1.5\nrho = 0.1\n")
    with pytest.raises(ConfigError) as err:
        load_config(path)
    assert "exceeds N_T" in str(err.value)
    assert "phi" in str(err.value)
