"""Smoke tests for the ebrkit python module."""

import math

import numpy as np
import pytest

import ebrkit as ek


def test_version():
    assert ek.__version__


def test_weyl_matrices():
    u = ek.shift_matrix(2)
    assert np.allclose(u, [[0, 1], [1, 0]])
    v = ek.clock_matrix(2)
    assert np.allclose(v, [[1, 0], [0, -1]])
    w = ek.weyl_matrix(2, 1, 1)
    assert np.allclose(w, [[0, -1], [1, 0]])
    assert np.linalg.norm(ek.weyl_twirl_offdiag(3, 1, 0, 2)) < 1e-12


def test_channel_roundtrip():
    ch = ek.zee_channel(3)
    assert ek.is_trace_preserving(ch)
    assert ek.is_unital(ch)
    assert ek.is_cp(ch)
    assert ek.ppt_check(ch)
    assert ek.choi_rank(ch) == 9

    x = np.eye(3, dtype=complex)
    assert np.allclose(ek.apply(ch, x), x)


def test_classification():
    assert ek.classify_depolarizing(2, 1.0 / 3.0) == (True, True, True)
    assert ek.classify_depolarizing(2, 0.5) == (True, False, False)
    assert ek.classify_depolarizing_exact(2, 1, 3) == (True, True, True)
    assert ek.classify_depolarizing_exact(2, 1, 2) == (True, False, False)


def test_fiducial_verification():
    x, y = ek.d2_xy(1.0 / 3.0)
    assert np.allclose(x, y)
    orbit = ek.weyl_orbit(ek.Fiducial(2, x))
    report = ek.angle_report(orbit)
    assert abs(report.max_offdiag - 1.0 / 3.0) < 1e-9
    assert ek.verify_sic_povm(orbit).all_ok()
    assert ek.resolution_identity_check(orbit)
    assert ek.d2_family_check(1.0 / 3.0)
    assert ek.d3_family_check(0.25)
    assert abs(ek.d3_scalars(0.25)["rho"] + 0.25) < 1e-12


def test_mub():
    fam = ek.construct_mub(3)
    assert len(fam.bases) == 4
    assert ek.verify_unbiased(fam).ok(1e-10)
    res = ek.mub_channel(fam)
    assert len(res.witness.pairs) == 12
    zee = ek.zee_channel(3)
    assert ek.choi_distance(ek.choi(res.channel), ek.choi(zee)) < 1e-9
    with pytest.raises(ValueError):
        ek.construct_mub(4)


def test_decomposition_search():
    res = ek.rank_one_decompose(ek.zee_channel(2), 4, seed=9)
    assert res.converged
    assert res.residual <= 1e-8
    cand = ek.extract_equiangular(res.family, 1e-4)
    rep = ek.angle_report(cand)
    assert rep.max_angle_dev() <= 1e-6


def test_errors_surface_as_value_errors():
    with pytest.raises(ValueError):
        ek.weyl_matrix(1, 0, 0)
    with pytest.raises(ValueError):
        ek.depolarizing(2, 2.0)


def test_frame_potential_value():
    x, _ = ek.d2_xy(1.0 / 3.0)
    orbit = ek.weyl_orbit(ek.Fiducial(2, x))
    assert math.isclose(ek.frame_potential(orbit), 4.0 / 3.0, rel_tol=1e-9)
