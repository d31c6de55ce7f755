"""Data precoder constructions: normalization, nulling, and the fast POLY apply."""

from __future__ import annotations

import numpy as np
import pytest

from secmimo import (
    InfeasibleError,
    apply_data_precoder,
    crci_precoder,
    czf_precoder,
    mf_precoder,
    poly_data_precoder,
    srci_precoder,
    szf_precoder,
)


def crandn(rng, *shape):
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


@pytest.fixture()
def hhat():
    return crandn(np.random.default_rng(0), 8, 48)


@pytest.fixture()
def stacked():
    # Two-cell stack, serving cell first.
    return crandn(np.random.default_rng(1), 16, 48)


def _constructors(hhat, stacked):
    mu = np.array([0.9, -0.3, 0.05])
    return [
        mf_precoder(hhat),
        szf_precoder(hhat),
        srci_precoder(hhat, 0.05),
        czf_precoder(stacked, k_users=8),
        crci_precoder(stacked, 0.05, k_users=8),
        poly_data_precoder(hhat, mu),
    ]


def test_trace_normalization_is_exact(hhat, stacked):
    for pre in _constructors(hhat, stacked):
        assert np.linalg.norm(pre.F, "fro") ** 2 == pytest.approx(8.0, rel=1e-12)
        assert pre.raw_trace * pre.gamma**2 == pytest.approx(8.0, rel=1e-12)
        assert pre.F.shape == (48, 8)


def test_matched_filter_is_conjugate_beamforming(hhat):
    pre = mf_precoder(hhat)
    np.testing.assert_allclose(pre.F, pre.gamma * hhat.conj().T, rtol=1e-12)


def test_selfish_zero_forcing_nulls_off_diagonals(hhat):
    pre = szf_precoder(hhat)
    cross = hhat @ pre.F
    off = cross - np.diag(np.diag(cross))
    assert np.max(np.abs(off)) < 1e-10 * np.max(np.abs(np.diag(cross)))


def test_collaborative_zero_forcing_nulls_other_cells_too(stacked):
    pre = czf_precoder(stacked, k_users=8)
    cross = stacked @ pre.F  # (16, 8)
    diag = np.abs(np.diag(cross[:8]))
    assert np.max(np.abs(cross[8:])) < 1e-10 * np.max(diag)
    assert pre.F.shape == (48, 8)


def test_collaborative_kinds_reduce_to_selfish_on_single_cell(hhat):
    np.testing.assert_allclose(czf_precoder(hhat).F, szf_precoder(hhat).F, rtol=1e-10)
    np.testing.assert_allclose(
        crci_precoder(hhat, 0.03).F, srci_precoder(hhat, 0.03).F, rtol=1e-10
    )


def test_regularizer_limits(hhat):
    # kappa -> 0 recovers ZF; large kappa turns the inverse into a scaled MF.
    np.testing.assert_allclose(srci_precoder(hhat, 0.0).F, szf_precoder(hhat).F, rtol=1e-10)
    rci = srci_precoder(hhat, 1e6).F
    mf = mf_precoder(hhat).F
    cos = abs(np.vdot(rci, mf)) / (np.linalg.norm(rci) * np.linalg.norm(mf))
    assert cos > 1.0 - 1e-6


def test_negative_regularizer_rejected(hhat):
    with pytest.raises(ValueError):
        srci_precoder(hhat, -0.1)
    with pytest.raises(ValueError):
        crci_precoder(hhat, -0.1)


def test_rank_deficient_estimates_are_infeasible():
    rng = np.random.default_rng(2)
    hhat = crandn(rng, 4, 24)
    hhat[3] = hhat[0]  # exactly repeated user row
    with pytest.raises(InfeasibleError, match="ill conditioned"):
        szf_precoder(hhat)


def test_more_stacked_rows_than_antennas_is_infeasible():
    rng = np.random.default_rng(3)
    with pytest.raises(InfeasibleError):
        czf_precoder(crandn(rng, 50, 48))


def test_poly_apply_matches_materialized_matrix(hhat):
    rng = np.random.default_rng(4)
    mu = np.array([1.1, -0.6, 0.21, -0.03])
    pre = poly_data_precoder(hhat, mu)
    for _ in range(3):
        s = crandn(rng, 8)
        direct = pre.F @ s
        fast = apply_data_precoder(pre, s)
        assert np.max(np.abs(fast - direct)) < 1e-10 * np.max(np.abs(direct))


def test_apply_falls_back_to_matrix_for_inverse_kinds(hhat):
    rng = np.random.default_rng(5)
    s = crandn(rng, 8)
    pre = szf_precoder(hhat)
    np.testing.assert_array_equal(apply_data_precoder(pre, s), pre.F @ s)


def test_poly_rejects_bad_coefficients(hhat):
    with pytest.raises(ValueError):
        poly_data_precoder(hhat, np.array([]))
    with pytest.raises(ValueError):
        poly_data_precoder(hhat, np.ones((2, 2)))
