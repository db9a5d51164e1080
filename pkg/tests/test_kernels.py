"""Shift kernels, nonstationary kernels, and the spectral construction."""

import csv
import math

import numpy as np
import pytest

import variobern as vb
from variobern.errors import ConstructionError, ParameterError


@pytest.fixture
def gamma2():
    return vb.ma_product(1.0, 0.5, d=2)


def test_difference_kernel_is_positive_definite(gamma2, rng):
    k = vb.difference_kernel(gamma2, [0.7, -0.2])
    pts = vb.PointSet(rng.uniform(-3, 3, size=(9, 2)))
    rep = vb.pd_check(k, pts, tol=1e-8)
    assert rep.passed


def test_sum_kernel_gram_psd(gamma2, rng):
    """As a two-argument kernel S(x, y) the sum construction is PSD; the
    one-argument slice S(., eta) alone is not a stationary covariance."""
    x = rng.uniform(-3, 3, size=(9, 2))
    gram = np.array([[float(vb.sum_kernel(gamma2, y)(xi[None, :])[0])
                      for y in x] for xi in x])
    assert np.allclose(gram, gram.T, atol=1e-12)
    w = np.linalg.eigvalsh(0.5 * (gram + gram.T))
    assert w.min() >= -1e-10 * max(1.0, w.max())


def test_shift_pair_identity(gamma2, rng):
    """difference + sum = 2 gamma(eta) pointwise, exactly by construction."""
    pair = vb.shift_pair(gamma2, [1.3, 0.4])
    xi = rng.uniform(-4, 4, size=(50, 2))
    assert np.abs(pair.identity_gap(xi)).max() < 1e-14


def test_sum_kernel_symmetric_in_arguments(gamma2):
    eta = np.array([0.9, -0.3])
    xi = np.array([[0.2, 1.4]])
    a = vb.sum_kernel(gamma2, eta)(xi)
    b = vb.sum_kernel(vb.ma_product(1.0, 0.5, d=2), xi[0])(eta[None, :])
    assert float(a[0]) == pytest.approx(float(b[0]), rel=1e-14)


def test_difference_kernel_vanishes_at_zero_shift(gamma2):
    k = vb.difference_kernel(gamma2, [0.0, 0.0])
    xi = np.array([[0.5, 0.5], [2.0, -1.0]])
    assert np.abs(k(xi)).max() == 0.0


# ----------------------------------------------------------------------
# nonstationary kernels

def test_nonstationary_kernel_fractional_brownian_diagonal():
    g = vb.catalog("power", {"a": 1.0})
    k = vb.nonstationary_kernel(lambda r: vb.evaluate(g, r), d=1)
    x = np.array([[0.5], [1.0], [2.5]])
    diag = k(x, x)
    assert np.allclose(diag, 2.0 * x[:, 0], rtol=1e-14)
    # K(x, 0) = 0 for every x
    assert np.abs(k(x, np.zeros((3, 1)))).max() < 1e-14


def test_nonstationary_kernel_gram_psd(rng):
    g = vb.catalog("power", {"a": 0.75})
    k = vb.nonstationary_kernel(lambda r: vb.evaluate(g, r), d=2)
    pts = vb.PointSet(rng.uniform(-2, 2, size=(10, 2)))
    gram = k.gram(pts)
    assert np.allclose(gram, gram.T, atol=1e-14)
    w = np.linalg.eigvalsh(0.5 * (gram + gram.T))
    assert w.min() >= -1e-10 * max(1.0, w.max())


def test_nonstationary_kernel_indefinite_for_cubic(rng):
    """g(r) = r^3 is not a variogram profile, and the induced two-argument
    form stops being positive semidefinite."""
    k = vb.nonstationary_kernel(
        lambda r: np.asarray(r, dtype=float) ** 3, d=1)
    pts = vb.PointSet(np.linspace(0.0, 4.0, 9)[:, None])
    w = np.linalg.eigvalsh(k.gram(pts))
    assert w.min() < -1e-6


def test_nonstationary_kernel_origin_gate():
    with pytest.raises(ConstructionError, match=r"g\(0\) = 0"):
        vb.nonstationary_kernel(lambda r: np.asarray(r) + 1.0, d=1)


# ----------------------------------------------------------------------
# spectral construction

def test_spectral_log1p_closed_form():
    """The log profile has the arctangent variogram as its spectral twin."""
    v = vb.spectral_variogram(vb.catalog("log1p"))
    assert v.certified and v.d == 1
    xi = np.array([[0.5], [1.0], [2.0], [5.0]])
    want = xi[:, 0] * np.arctan(xi[:, 0])
    assert np.allclose(v(xi), want, rtol=1e-9)
    assert float(v(np.array([[1.0]]))[0]) == pytest.approx(math.pi / 4.0,
                                                           rel=1e-9)


def test_spectral_frac_linear_closed_form():
    lam = 2.0
    v = vb.spectral_variogram(vb.catalog("frac_linear", {"lam": lam}))
    xi = np.array([[0.3], [1.7], [4.0]])
    x = xi[:, 0]
    want = lam ** 2 * x ** 2 / (lam ** 2 + x ** 2)
    assert np.allclose(v(xi), want, rtol=1e-9)


def test_spectral_matches_complex_reference():
    for f in (vb.catalog("log1p"), vb.catalog("frac_linear", {"lam": 0.7})):
        v = vb.spectral_variogram(f)
        xi = np.linspace(0.1, 6.0, 7)
        ref = vb.spectral_reference(f, xi)
        assert np.allclose(v(xi[:, None]), ref, rtol=1e-8)


def test_spectral_pure_drift():
    # f(x) = x has no jump part: gamma(xi) = xi^2
    v = vb.spectral_variogram(vb.catalog("power", {"a": 1.0}))
    xi = np.array([[0.5], [3.0]])
    assert np.allclose(v(xi), xi[:, 0] ** 2, rtol=1e-12)


def test_spectral_reference_scalar():
    assert vb.spectral_reference(vb.catalog("log1p"), 1.0) == pytest.approx(
        math.pi / 4.0, rel=1e-14)


def test_spectral_rejects_atomic_measures():
    f = vb.catalog("exp_one_minus", {"a": 1.0})
    with pytest.raises(ConstructionError, match="density"):
        vb.spectral_variogram(f)


def test_spectral_rejects_missing_triple():
    f = vb.compose(vb.catalog("log1p"), vb.catalog("log1p"))
    with pytest.raises(ConstructionError, match="Levy triple"):
        vb.spectral_variogram(f)


def test_spectral_variogram_axioms(line_points):
    v = vb.spectral_variogram(vb.catalog("log1p"))
    rep = vb.variogram_axioms(v, line_points, tol=1e-7)
    assert rep.passed


# ----------------------------------------------------------------------
# tabulation

def test_tabulate_kernel_csv_round_trip(tmp_path, gamma2):
    path = tmp_path / "tab.csv"
    coords = np.array([[0.0, 0.0], [1.0, 1.0], [2.0, -1.0]])
    vb.tabulate_kernel_csv(gamma2, coords, path)
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["x1", "x2", "value"]
    got = np.array([[float(c) for c in row] for row in rows[1:]])
    assert np.array_equal(got[:, :2], coords)
    assert np.allclose(got[:, 2], gamma2(coords), rtol=0)


def test_tabulate_kernel_csv_one_dim(tmp_path):
    v = vb.make_variogram(vb.catalog("power", {"a": 0.5}), d=1)
    path = tmp_path / "tab1.csv"
    vb.tabulate_kernel_csv(v, np.array([0.0, 2.0]), path)
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["x1", "value"]
    assert [float(r[1]) for r in rows[1:]] == [0.0, 2.0]
