"""Numerical permissibility checks: matrix tests, divided differences,
shape oracles, structure probes.

Counterexample witnesses are re-verified against the raw definitions here,
so the checks cannot drift away from what they claim to certify.
"""

import math

import numpy as np
import pytest

import variobern as vb
from variobern.errors import ParameterError


def abs_gamma(lags):
    return np.sqrt((np.asarray(lags) ** 2).sum(axis=-1))


def cubic_gamma(lags):
    return abs_gamma(lags) ** 3


@pytest.fixture
def pts012():
    return vb.PointSet(np.array([[0.0], [1.0], [2.0]]))


# ----------------------------------------------------------------------
# matrix machinery

def test_kernel_matrix_values(pts012):
    k = vb.kernel_matrix(abs_gamma, pts012)
    assert np.array_equal(k, [[0, 1, 2], [1, 0, 1], [2, 1, 0]])


def test_kernel_matrix_shape_gate(pts012):
    with pytest.raises(ParameterError, match="shape"):
        vb.kernel_matrix(lambda lags: np.zeros(3), pts012)


def test_contrast_basis_properties():
    b = vb.contrast_basis(6)
    assert b.shape == (6, 5)
    assert np.allclose(b.T @ b, np.eye(5), atol=1e-12)
    assert np.allclose(b.sum(axis=0), 0.0, atol=1e-12)
    with pytest.raises(ParameterError):
        vb.contrast_basis(1)


# ----------------------------------------------------------------------
# cnd / pd

def test_cnd_passes_absolute_value(pts012):
    rep = vb.cnd_check(abs_gamma, pts012)
    assert rep.passed
    assert rep.record("cnd").witness is None


def test_cnd_fails_cubic_with_verifiable_witness(pts012):
    rep = vb.cnd_check(cubic_gamma, pts012)
    assert rep.verdict == "fail"
    w = rep.record("cnd").witness
    a = np.array(w["contrast"])
    assert abs(a.sum()) < 1e-12
    g = vb.kernel_matrix(cubic_gamma, pts012)
    qf = float(a @ g @ a)
    assert qf == pytest.approx(w["quadratic_form"], rel=1e-10)
    assert qf > 0  # a genuine violation of conditional negative definiteness


def test_cnd_inconclusive_on_nonfinite(pts012):
    rep = vb.cnd_check(lambda lags: np.full(lags.shape[:-1], np.nan), pts012)
    assert rep.verdict == "inconclusive"
    assert "non-finite" in rep.record("cnd").detail


def test_cnd_tol_gate(pts012):
    with pytest.raises(ParameterError):
        vb.cnd_check(abs_gamma, pts012, tol=0.0)


def test_pd_passes_exponential(pts012):
    rep = vb.pd_check(lambda lags: np.exp(-abs_gamma(lags)), pts012)
    assert rep.passed


def test_pd_fails_parabola_with_witness(pts012):
    cov = lambda lags: 1.0 - abs_gamma(lags) ** 2
    rep = vb.pd_check(cov, pts012)
    assert rep.verdict == "fail"
    w = rep.record("pd").witness
    a = np.array(w["weights"])
    c = vb.kernel_matrix(cov, pts012)
    assert float(a @ c @ a) == pytest.approx(w["quadratic_form"], rel=1e-10)
    assert w["quadratic_form"] < 0


def test_variogram_axioms_records(pts012):
    rep = vb.variogram_axioms(abs_gamma, pts012)
    assert [c.name for c in rep.checks] == ["origin", "evenness", "cnd"]
    assert rep.passed


def test_variogram_axioms_catch_oddness(pts012):
    odd = lambda lags: np.asarray(lags)[..., 0] + abs_gamma(lags)
    rep = vb.variogram_axioms(odd, pts012)
    assert rep.record("evenness").verdict == "fail"
    assert "lag" in rep.record("evenness").witness


def test_variogram_axioms_catch_negative_origin(pts012):
    rep = vb.variogram_axioms(lambda lags: abs_gamma(lags) - 1.0, pts012)
    assert rep.record("origin").verdict == "fail"


# ----------------------------------------------------------------------
# divided-difference checks

GRID = np.logspace(-2, 2, 33)


def test_cm_accepts_exponential():
    rep = vb.cm_check(lambda x: np.exp(-x), GRID, max_order=8)
    assert rep.passed
    assert len(rep.checks) == 9  # orders 0..8


def test_cm_rejects_increasing():
    rep = vb.cm_check(lambda x: -np.expm1(-x), GRID)
    rec = rep.record("cm_order_1")
    assert rec.verdict == "fail"
    assert rec.witness["order"] == 1


def test_cm_rejects_wrong_sign_curvature():
    # 1/(1+x) is CM; its negative second derivative breaks order 2 only
    rep = vb.cm_check(lambda x: x / (1.0 + x), GRID)
    assert rep.record("cm_order_0").verdict == "pass"
    assert rep.record("cm_order_2").verdict == "fail"


def test_cm_gates():
    with pytest.raises(ParameterError, match="increasing"):
        vb.cm_check(np.exp, [2.0, 1.0])
    with pytest.raises(ParameterError, match="positive"):
        vb.cm_check(np.exp, [0.0, 1.0])
    with pytest.raises(ParameterError, match="max_order"):
        vb.cm_check(np.exp, [1.0, 2.0, 3.0], max_order=3)


def test_cm_inconclusive_on_evaluation_error():
    f = vb.catalog("log1p")
    bomb = lambda x: vb.evaluate(f, x - 5.0)  # negative arguments raise
    rep = vb.cm_check(bomb, GRID)
    assert rep.verdict == "inconclusive"


def test_cm_survives_roundoff_on_stiff_grid():
    """A dense grid makes high-order differences pure noise; the propagated
    roundoff allowance must keep a true CM function from failing."""
    grid = np.linspace(10.0, 10.001, 40)
    rep = vb.cm_check(lambda x: np.exp(-x), grid, max_order=8, tol=1e-9)
    assert rep.verdict != "fail"


def test_bernstein_accepts_log1p():
    rep = vb.bernstein_check(lambda x: np.log1p(x), GRID)
    assert rep.passed
    names = [c.name for c in rep.checks]
    assert names[0] == "nonnegative"
    assert names[1] == "derivative_cm_order_0"


def test_bernstein_rejects_decreasing():
    rep = vb.bernstein_check(lambda x: np.exp(-x), GRID)
    assert rep.record("nonnegative").verdict == "pass"
    assert rep.record("derivative_cm_order_0").verdict == "fail"


def test_bernstein_rejects_superlinear_power():
    rep = vb.bernstein_check(lambda x: x ** 1.8, GRID)
    assert rep.verdict == "fail"  # derivative is increasing


def test_bernstein_gate():
    with pytest.raises(ParameterError, match="max_order"):
        vb.bernstein_check(np.sqrt, [1.0, 2.0, 3.0], max_order=2)


# ----------------------------------------------------------------------
# shape checks

TGRID = np.linspace(0.05, 8.0, 64)


def test_polya_accepts_laplace():
    rep = vb.polya_check(lambda t: np.exp(-np.abs(t)), TGRID)
    assert rep.passed
    assert [c.name for c in rep.checks] == [
        "even", "nonnegative", "decreasing", "convex"]


def test_polya_rejects_gaussian_convexity():
    rep = vb.polya_check(lambda t: np.exp(-np.asarray(t) ** 2), TGRID)
    assert rep.record("convex").verdict == "fail"
    w = rep.record("convex").witness
    assert {"a", "b", "gap"} <= set(w)


def test_polya_rejects_odd_part():
    rep = vb.polya_check(lambda t: np.exp(-np.abs(t)) + 0.01 * np.asarray(t),
                         TGRID)
    assert rep.record("even").verdict == "fail"


def test_profile_shape_accepts_sqrt():
    rep = vb.profile_shape_check(np.sqrt, np.linspace(0.0, 8.0, 65))
    assert rep.passed
    assert [c.name for c in rep.checks] == ["increasing", "concave", "subadditive"]


def test_profile_shape_rejects_square():
    rep = vb.profile_shape_check(lambda x: np.asarray(x) ** 2,
                                 np.linspace(0.0, 8.0, 65))
    assert rep.record("increasing").verdict == "pass"
    assert rep.record("concave").verdict == "fail"
    rec = rep.record("subadditive")
    assert rec.verdict == "fail"
    w = rec.witness
    # witness reproduces f(a+b) > f(a) + f(b)
    assert (w["a"] + w["b"]) ** 2 - w["a"] ** 2 - w["b"] ** 2 == pytest.approx(
        w["excess"], rel=1e-12)


def test_sqrt_subadditivity_cubic_witness():
    pts = vb.PointSet(np.array([[0.0], [1.0]]))
    rep = vb.sqrt_subadditivity_check(cubic_gamma, pts)
    assert rep.verdict == "fail"
    w = rep.record("sqrt_subadditivity").witness
    assert w["x"] == [1.0] and w["y"] == [1.0]
    assert w["excess"] == pytest.approx(2.0 * math.sqrt(2.0) - 2.0, rel=1e-12)


def test_sqrt_subadditivity_passes_for_valid_model(line_points):
    gamma = lambda lags: -np.expm1(-abs_gamma(lags))
    rep = vb.sqrt_subadditivity_check(gamma, line_points)
    assert rep.passed


# ----------------------------------------------------------------------
# structure probes

def test_detect_period_finds_cosine_period():
    gamma = lambda lags: 1.0 - np.cos(np.asarray(lags)[..., 0])
    y = vb.detect_period(gamma, search_radius=10.0)
    assert y is not None
    assert y[0] == pytest.approx(2.0 * math.pi, abs=1e-6)


def test_detect_period_none_for_monotone():
    assert vb.detect_period(abs_gamma, search_radius=10.0) is None
    gauss = lambda lags: -np.expm1(-abs_gamma(lags) ** 2)
    assert vb.detect_period(gauss, search_radius=10.0) is None


def test_detect_period_gate():
    with pytest.raises(ParameterError):
        vb.detect_period(abs_gamma, search_radius=-1.0)


def test_eventual_constancy_detects_plateau():
    prof = lambda r: np.minimum(np.asarray(r, dtype=float), 1.5) / 1.5
    rep = vb.eventual_constancy_check(prof, inner=1.5, outer=4.5)
    assert rep.passed
    assert rep.record("constant_on_annulus").witness["plateau"] == pytest.approx(1.0)


def test_eventual_constancy_rejects_growth():
    rep = vb.eventual_constancy_check(np.sqrt, inner=1.5, outer=4.5)
    assert rep.verdict == "fail"
    assert "spread" in rep.record("constant_on_annulus").witness


def test_eventual_constancy_all_d_contradiction():
    """A plateau reached at finite range contradicts validity in every
    dimension unless the profile was constant from the start."""
    prof = lambda r: np.minimum(np.asarray(r, dtype=float), 1.5) / 1.5
    rep = vb.eventual_constancy_check(prof, inner=1.5, outer=4.5,
                                      all_d_certified=True)
    rec = rep.record("all_d_consistency")
    assert rec.verdict == "fail"
    assert "incompatible" in rec.detail

    flat = lambda r: np.ones_like(np.asarray(r, dtype=float))
    rep = vb.eventual_constancy_check(flat, inner=1.5, outer=4.5,
                                      all_d_certified=True)
    assert rep.record("all_d_consistency").verdict == "pass"


def test_eventual_constancy_gate():
    with pytest.raises(ParameterError):
        vb.eventual_constancy_check(np.sqrt, inner=2.0, outer=1.0)


# ----------------------------------------------------------------------
# report plumbing

def test_report_verdict_ordering():
    mk = lambda v: vb.CheckRecord("x", v, 0.0, 1e-8)
    assert vb.PermissibilityReport((mk("pass"), mk("fail"),
                                    mk("inconclusive"))).verdict == "fail"
    assert vb.PermissibilityReport((mk("pass"),
                                    mk("inconclusive"))).verdict == "inconclusive"
    assert vb.PermissibilityReport((mk("pass"),)).verdict == "pass"


def test_report_json_shape(pts012):
    d = vb.cnd_check(abs_gamma, pts012).to_json()
    assert set(d) == {"verdict", "config", "checks"}
    assert d["checks"][0]["name"] == "cnd"
    assert d["config"]["n"] == 3


def test_report_record_lookup(pts012):
    rep = vb.cnd_check(abs_gamma, pts012)
    with pytest.raises(KeyError):
        rep.record("nope")
