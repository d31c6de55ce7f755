"""Sampling-based secrecy evaluation: component bookkeeping, edge regimes,
determinism, error bars, and the power-split search."""

from __future__ import annotations

import math

import numpy as np
import pytest

from factories import make_cfg
from secmimo import (
    ergodic_secrecy_rate,
    estimate_mt_sinr,
    optimize_phi,
    secrecy_lower_bound,
    sinr_analytic,
)
from secmimo.montecarlo import parse_an_kind, parse_data_kind


def test_kind_labels_parse_with_optional_order():
    assert parse_data_kind("MF") == ("MF", None)
    assert parse_data_kind("POLY_I2") == ("POLY", 2)
    assert parse_data_kind("POLY") == ("POLY", 2)
    assert parse_an_kind("POLY_J5") == ("POLY", 5)
    assert parse_an_kind("sns") == ("SNS", None)
    assert parse_data_kind("POLY_I") == ("POLY", 2)
    for bad in ("POLY_X2", "ZF"):
        with pytest.raises(ValueError):
            parse_data_kind(bad)


def test_full_data_split_sends_no_an_and_has_no_secrecy():
    cfg = make_cfg(m=2, k=8, n_t=64, n_e=8, phi=1.0, rho=0.3)
    rep = ergodic_secrecy_rate(cfg, "SZF", "SNS", n_realizations=40, seed=0)
    assert rep.components["an_leakage"] == 0.0
    # Worst case: a noise-free eavesdropper without AN sees an open channel.
    assert math.isinf(rep.C_eve_mc)
    assert rep.R_sec_mc == 0.0
    assert rep.stderr_R_sec == 0.0
    assert rep.R_mt_mc > 0.0


def test_no_eavesdropper_means_no_secrecy_loss():
    cfg = make_cfg(m=2, k=8, n_t=64, n_e=0, rho=0.3)
    rep = ergodic_secrecy_rate(cfg, "MF", "SNS", n_realizations=40, seed=1)
    assert rep.C_eve_mc == 0.0
    assert rep.R_sec_mc == rep.R_mt_mc
    assert rep.singular_X_count == 0


def test_own_cell_an_quadratic_tracks_estimation_residual():
    # AN lives in the estimated null space, so the own-cell AN quadratic per
    # dimension equals the per-antenna estimation residual.
    cfg = make_cfg(m=2, k=16, n_t=128, rho=0.3)
    rep = ergodic_secrecy_rate(cfg, "SZF", "SNS", n_realizations=150, seed=3)
    per_dim = rep.components["own_cell_an_quadratic"] / (cfg.N_T - cfg.K)
    assert per_dim == pytest.approx(4.0 / 14.0, rel=0.05)


def test_oversized_eavesdropper_defeats_collaborative_an():
    # N_E above the total shaped-noise rank leaves X singular in every draw.
    cfg = make_cfg(m=2, k=12, n_t=32, n_e=24, rho=0.3)
    rep = ergodic_secrecy_rate(cfg, "SZF", "CNS", n_realizations=25, seed=4)
    assert rep.singular_X_count == 25
    assert math.isinf(rep.C_eve_mc)
    assert rep.R_sec_mc == 0.0


def test_reports_are_deterministic_in_the_seed():
    cfg = make_cfg(m=2, k=8, n_t=64, n_e=8, rho=0.3)
    a = ergodic_secrecy_rate(cfg, "SRCI", "SNS", n_realizations=30, seed=7)
    b = ergodic_secrecy_rate(cfg, "SRCI", "SNS", n_realizations=30, seed=7)
    c = ergodic_secrecy_rate(cfg, "SRCI", "SNS", n_realizations=30, seed=8)
    assert a == b
    assert a.R_sec_mc != c.R_sec_mc


def test_rate_and_sinr_bookkeeping_agree():
    cfg = make_cfg(m=2, k=8, n_t=64, n_e=0, rho=0.3)
    rep = ergodic_secrecy_rate(cfg, "SZF", "SNS", n_realizations=50, seed=2)
    gamma, comps = estimate_mt_sinr(cfg, "SZF", "SNS", n_realizations=50, seed=2)
    assert rep.gamma_mc == gamma
    assert rep.R_mt_mc == pytest.approx(math.log2(1.0 + gamma), rel=1e-12)
    for key in ("signal", "gain_variance", "an_leakage", "interference", "noise"):
        assert comps[key] >= 0.0


def test_error_bars_shrink_like_root_n():
    cfg = make_cfg(m=2, k=8, n_t=64, n_e=8, rho=0.3)
    small = ergodic_secrecy_rate(cfg, "MF", "SNS", n_realizations=100, seed=5)
    large = ergodic_secrecy_rate(cfg, "MF", "SNS", n_realizations=400, seed=5)
    assert small.stderr_C_eve > 0 and large.stderr_C_eve > 0
    ratio = small.stderr_C_eve / large.stderr_C_eve
    assert ratio == pytest.approx(2.0, rel=0.35)


def test_sampled_sinr_tracks_the_closed_form():
    cfg = make_cfg(m=2, k=16, n_t=128, rho=0.3)
    for kind in ("MF", "SRCI"):
        gamma, _ = estimate_mt_sinr(cfg, kind, "SNS", n_realizations=200, seed=6)
        ref = sinr_analytic(kind, "SNS", cfg).gamma
        assert gamma == pytest.approx(ref, rel=0.10)


def test_collaborative_kinds_rank_as_analysis_says_when_coupling_is_weak():
    # Lightly loaded two-cell network: collaboration pays off.
    cfg = make_cfg(m=2, k=10, n_t=256, n_e=26, rho=0.1)
    reports = {
        kind: ergodic_secrecy_rate(cfg, kind, "SNS", n_realizations=150, seed=9)
        for kind in ("SZF", "CZF", "CRCI")
    }
    for low, high in (("SZF", "CZF"), ("CZF", "CRCI")):
        gap = reports[high].R_sec_mc - reports[low].R_sec_mc
        spread = 2.0 * math.hypot(reports[high].stderr_R_sec, reports[low].stderr_R_sec)
        assert gap > -spread, (low, high, gap, spread)


def test_poly_kinds_run_end_to_end():
    cfg = make_cfg(m=2, k=8, n_t=80, n_e=8, rho=0.1)
    rep = ergodic_secrecy_rate(cfg, "POLY_I2", "POLY_J2", n_realizations=25, seed=10)
    assert np.isfinite(rep.R_mt_mc)
    assert rep.R_sec_mc >= 0.0


def test_phi_search_analytic_is_unimodal_and_load_shifts_it_up():
    opts = {}
    for beta in (0.1, 0.5):
        cfg = make_cfg(m=7, k=int(beta * 100), n_t=100, n_e=10, rho=0.1)
        opt = optimize_phi(cfg, "SRCI", "SNS", evaluator="analytic", grid_size=24)
        assert opt.unimodal and opt.n_violations == 0
        assert not opt.all_zero
        assert 0.0 < opt.phi_opt < 1.0
        assert opt.R_sec_opt > max(opt.curve[0][1], opt.curve[-1][1])
        opts[beta] = opt.phi_opt
    # Less power per user at high load: spend more of the budget on data.
    assert opts[0.5] > opts[0.1]


def test_phi_search_monte_carlo_agrees_with_analytic():
    cfg = make_cfg(m=2, k=25, n_t=250, n_e=25, rho=0.1)
    ana = optimize_phi(cfg, "SZF", "SNS", evaluator="analytic", grid_size=12)
    mc = optimize_phi(
        cfg, "SZF", "SNS", evaluator="monte_carlo", grid_size=12, n_realizations=150, seed=0
    )
    grid_step = 1.0 / 13.0
    assert abs(mc.phi_opt - ana.phi_opt) <= 1.5 * grid_step


def test_phi_search_flags_hopeless_operating_points():
    # Eavesdropper ratio beyond the feasibility edge: zero at every split.
    cfg = make_cfg(m=1, k=16, n_t=64, n_e=56)
    opt = optimize_phi(cfg, "SZF", "SNS", evaluator="analytic", grid_size=16)
    assert opt.all_zero
    assert opt.R_sec_opt == 0.0


def test_phi_search_argument_validation():
    cfg = make_cfg(n_e=10)
    with pytest.raises(ValueError):
        optimize_phi(cfg, "SZF", "SNS", grid_size=2)
    with pytest.raises(ValueError):
        optimize_phi(cfg, "SZF", "SNS", evaluator="exact")


def test_secrecy_report_brackets_the_analytic_bound():
    # The closed form is a lower bound in the large-system limit; at finite
    # size the sampled rate should not fall far below it.
    cfg = make_cfg(m=2, k=16, n_t=160, n_e=16, rho=0.3)
    rep = ergodic_secrecy_rate(cfg, "SZF", "SNS", n_realizations=200, seed=11)
    ana = secrecy_lower_bound("SZF", "SNS", cfg)
    assert rep.R_sec_mc >= ana.R_sec - 3.0 * max(rep.stderr_R_sec, 0.05)
