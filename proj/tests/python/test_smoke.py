import math

import numpy as np
import pytest

import courbure


def test_modulus_closed_form():
    expected = math.log(math.tanh(1.0) / math.tanh(0.25))
    assert courbure.modulus_revolution("hyperbolic", 0.5, 2.0) == pytest.approx(
        expected, abs=1e-10
    )


def test_modulus_cylinder_segment():
    m = courbure.modulus_revolution("dr", 3.0, 3.0 + 3.0 * math.sinh(3.0), r=3.0)
    assert m == pytest.approx(3.0, abs=1e-10)


def test_uniformize_hyperbolic_plane():
    data = courbure.uniformize("hyperbolic")
    assert data["conformal_radius"] == pytest.approx(2.0, abs=1e-7)
    assert data["deriv_norm"] == pytest.approx(1.0, abs=1e-7)


def test_dr_sweep_radii():
    reports = courbure.dr_sweep([2.5, 3.5])
    assert len(reports) == 2
    for rep in reports:
        assert rep["inner_radius_Cr"] == pytest.approx(
            math.exp(-rep["r"]), abs=1e-9
        )
    assert reports[1]["deriv_norm"] > reports[0]["deriv_norm"]


def test_solve_cap_constant_target():
    out = courbure.solve_cap(3.0, 32, "4", tol=1e-11)
    assert out["converged"]
    assert out["bounds_ok"]
    u = np.asarray(out["u"])
    assert u.shape == (32, 32)
    assert np.max(np.abs(u - (-0.5 * math.log(4.0)))) < 1e-8


def test_solve_cap_wave_target():
    out = courbure.solve_cap(3.0, 48, "1 + 0.3*sin(theta)*sech(t)", tol=1e-10)
    assert out["converged"]
    assert out["roundtrip_sup_err"] < 0.05
    lo, hi = out["bounds"]
    assert lo < 0.0 < hi + 1e-12


def test_extremal_length_flat():
    rep = courbure.extremal_length(1.0, 96)
    assert rep["area"] == pytest.approx(2.0 * math.pi, rel=1e-10)
    assert rep["lhs"] <= rep["bound"] * 1.02


def test_quasimax_trials():
    passed, failed = courbure.quasimax_trials(trials=200, seed=7)
    assert failed == 0
    assert passed == 200
