"""Expression algebra: atom numerics, cone certificates, combinators, JSON.

Reference values are frozen from closed forms (checked against mpmath at 30
digits where special functions are involved).
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import variobern as vb
from variobern.errors import (
    ConstructionError,
    EvaluationError,
    ParameterError,
)

RT = 1e-12


# ----------------------------------------------------------------------
# atom numerics

@pytest.mark.parametrize("name,params,x,want", [
    ("matern", {"alpha": 1.0, "nu": 0.5}, 1.0, 1.0 - math.exp(-1.0)),
    ("matern", {"alpha": 2.0, "nu": 1.5}, 2.3, 0.805748666564361),
    ("cauchy", {"alpha": 0.5, "beta": 1.0}, 4.0, 2.0 / 3.0),
    ("dagum", {"rho": 0.5, "gamma": 0.5}, 4.0, (2.0 / 3.0) ** 0.5),
    ("sqrt_arctan", {}, 4.0, 2.0 * math.atan(0.5)),
    ("frac_linear", {"lam": 2.0}, 3.0, 1.2),
    ("log1p", {}, 3.0, math.log(4.0)),
    ("power", {"a": 0.5}, 9.0, 3.0),
    ("exp_one_minus", {"a": 2.0}, 1.0, 1.0 - math.exp(-2.0)),
    ("exp_decay", {"a": 1.0}, 2.0, math.exp(-2.0)),
    ("cm_pole_example", {}, 2.0, 0.1),
    ("euler_gap", {}, 1.7, 0.25891219856824166),
    ("sinh_ratio", {}, 2.0, 0.48201379003790845),
    ("recip", {}, 4.0, 0.25),
    ("const", {"c": 2.5}, 7.0, 2.5),
])
def test_atom_values(name, params, x, want):
    got = float(vb.evaluate(vb.catalog(name, params), x))
    assert got == pytest.approx(want, rel=1e-13)


def test_gamma_tail_value():
    # x^(1-nu) e^(ax) Gamma(nu; ax), mpmath reference at nu=a=1/2, x=2
    gt = vb.catalog("gamma_tail", {"nu": 0.5, "a": 0.5})
    assert float(vb.evaluate(gt, 2.0)) == pytest.approx(1.0717930817599557,
                                                        rel=1e-12)


def test_matern_against_exponential_identity():
    """nu = 1/2 collapses the Bessel formula to 1 - e^(-alpha sqrt(x))."""
    f = vb.catalog("matern", {"alpha": 1.3, "nu": 0.5})
    x = np.linspace(0.01, 50.0, 200)
    want = 1.0 - np.exp(-1.3 * np.sqrt(x))
    assert np.allclose(vb.evaluate(f, x), want, rtol=1e-12)


def test_matern_small_argument_series():
    # the direct product 0 * inf at tiny z must not produce NaN
    f = vb.catalog("matern", {"alpha": 1.0, "nu": 1.5})
    vals = vb.evaluate(f, np.array([1e-30, 1e-16, 1e-8]))
    assert np.all(np.isfinite(vals)) and np.all(vals >= 0)


def test_wendland_profile_values():
    w = vb.catalog("wendland_profile", {"r": 2.0, "l": 3.0})
    r = np.array([0.0, 1.0, 2.0, 3.0])
    want = np.array([1.0, 0.125, 0.0, 0.0])
    assert np.allclose(vb.evaluate(w, r), want, atol=0)


def test_spherical_profile_plateau():
    s = vb.catalog("spherical_profile", {"range": 2.0})
    r = np.array([0.0, 1.0, 2.0, 5.0])
    want = np.array([0.0, 0.75 - 0.0625, 1.0, 1.0])
    assert np.allclose(vb.evaluate(s, r), want, rtol=1e-15)


def test_atom_parameter_gates():
    with pytest.raises(ParameterError, match="expects parameters"):
        vb.catalog("matern", {"alpha": 1.0})
    with pytest.raises(ParameterError, match="nu"):
        vb.catalog("matern", {"alpha": 1.0, "nu": -1.0})
    with pytest.raises(ParameterError, match="unknown atom"):
        vb.catalog("nope")
    with pytest.raises(ParameterError, match="integer"):
        vb.catalog("wendland_profile", {"r": 1.0, "l": 2.5})


def test_negative_argument_rejected():
    with pytest.raises(EvaluationError):
        vb.evaluate(vb.catalog("log1p"), -1.0)


# ----------------------------------------------------------------------
# cone tags

@pytest.mark.parametrize("name,params,want", [
    ("power", {"a": 0.5}, {"BF", "CBF"}),
    ("exp_one_minus", {"a": 1.0}, {"BF"}),
    ("exp_decay", {"a": 1.0}, {"CM"}),
    ("frac_linear", {"lam": 1.0}, {"BF", "CBF"}),
    ("recip", {}, {"CM", "S"}),
    ("const", {"c": 2.0}, {"BF", "CBF", "CM", "S"}),
    ("one_minus_cos", {}, set()),
    ("cm_pole_example", {}, {"CM"}),
    ("log1p", {}, {"BF", "CBF"}),
    ("euler_gap", {}, {"BF", "CBF"}),
    ("spherical_profile", {"range": 1.0}, set()),
])
def test_atom_tags(name, params, want):
    assert vb.infer_class(vb.catalog(name, params)) == frozenset(want)


def test_completion_rules():
    """CBF implies BF and S implies CM in every derived tag set."""
    for e in vb.cbf_table():
        tags = vb.infer_class(e)
        assert "CBF" in tags and "BF" in tags


def test_compose_tags():
    cbf = vb.catalog("frac_linear", {"lam": 1.0})
    s = vb.catalog("recip")
    bf = vb.catalog("exp_one_minus", {"a": 1.0})
    cm = vb.catalog("exp_decay", {"a": 1.0})
    assert vb.infer_class(vb.compose(cbf, cbf)) == {"BF", "CBF"}
    assert vb.infer_class(vb.compose(s, s)) == {"BF", "CBF"}
    # mixed complete-Bernstein/Stieltjes composition lands in Stieltjes:
    # x/(1+x) o 1/x = 1/(1+x) is decreasing, so it cannot be Bernstein
    assert vb.infer_class(vb.compose(cbf, s)) == {"CM", "S"}
    assert vb.infer_class(vb.compose(s, cbf)) == {"CM", "S"}
    assert vb.infer_class(vb.compose(cm, bf)) == {"CM"}
    assert vb.infer_class(vb.compose(bf, bf)) == {"BF"}


def test_mixed_compose_value_is_decreasing():
    # the witness behind the mixed-composition rule
    h = vb.compose(vb.catalog("frac_linear", {"lam": 1.0}), vb.catalog("recip"))
    x = np.linspace(0.1, 10, 50)
    vals = vb.evaluate(h, x)
    assert np.allclose(vals, 1.0 / (1.0 + x), rtol=1e-14)
    assert np.all(np.diff(vals) < 0)


def test_power_tags():
    bf = vb.catalog("exp_one_minus", {"a": 1.0})
    cbf = vb.catalog("frac_linear", {"lam": 1.0})
    s = vb.catalog("recip")
    assert vb.infer_class(vb.fpow(bf, 0.7)) == {"BF"}
    assert vb.infer_class(vb.fpow(cbf, 0.7)) == {"BF", "CBF"}
    assert vb.infer_class(vb.fpow(cbf, -1.0)) == {"CM", "S"}
    assert vb.infer_class(vb.fpow(s, -1.0)) == {"BF", "CBF"}
    # exponents past 1 carry no certificate
    assert vb.infer_class(vb.fpow(bf, 1.8)) == set()


def test_sum_product_tags():
    cbf = vb.catalog("frac_linear", {"lam": 1.0})
    s = vb.catalog("recip")
    cm1 = vb.catalog("exp_decay", {"a": 1.0})
    cm2 = vb.catalog("cm_pole_example")
    assert vb.infer_class(vb.fsum(cbf, cbf)) == {"BF", "CBF"}
    assert vb.infer_class(vb.fsum(cbf, s)) == set()
    assert vb.infer_class(vb.fprod(cm1, cm2)) == {"CM"}
    assert vb.infer_class(vb.fprod(cbf, cbf)) == set()


def test_affine_preserves_tags():
    cbf = vb.catalog("frac_linear", {"lam": 1.0})
    assert vb.infer_class(vb.affine(cbf, shift=0.5, scale=2.0)) == {"BF", "CBF"}
    # a negative coefficient leaves every cone, so no certificate survives
    assert vb.infer_class(vb.affine(cbf, shift=0.0, scale=-1.0)) == set()
    assert vb.infer_class(vb.affine(cbf, shift=-0.1, scale=1.0)) == set()


def test_with_tags_gate():
    e = vb.catalog("one_minus_cos")
    tagged = vb.with_tags(e, {"BF"})
    assert "BF" in vb.infer_class(tagged)
    with pytest.raises(ParameterError, match="unknown cone"):
        vb.with_tags(e, {"XYZ"})


# ----------------------------------------------------------------------
# combinator values

def test_combine_values():
    f = vb.catalog("frac_linear", {"lam": 1.0})
    g = vb.catalog("sqrt_arctan")
    x = np.linspace(0.2, 20, 17)
    fv, gv = vb.evaluate(f, x), vb.evaluate(g, x)
    pm = vb.evaluate(vb.combine(f, g, "power_mean", 0.5), x)
    assert np.allclose(pm, (np.sqrt(fv) + np.sqrt(gv)) ** 2, rtol=1e-12)
    apm = vb.evaluate(vb.combine(f, g, "arg_power_mean", 0.5), x)
    want = (vb.evaluate(f, np.sqrt(x)) + vb.evaluate(g, np.sqrt(x))) ** 2
    assert np.allclose(apm, want, rtol=1e-12)
    sp = vb.evaluate(vb.combine(f, g, "split_power", 0.25), x)
    want = vb.evaluate(f, x ** 0.25) * vb.evaluate(g, x ** 0.75)
    assert np.allclose(sp, want, rtol=1e-12)
    ge = vb.evaluate(vb.combine(f, g, "geometric", 0.25), x)
    assert np.allclose(ge, fv ** 0.25 * gv ** 0.75, rtol=1e-12)


def test_combine_tags_and_gates():
    f = vb.catalog("frac_linear", {"lam": 1.0})
    g = vb.catalog("log1p")
    for rule, alpha in (("power_mean", -0.5), ("arg_power_mean", 1.0),
                        ("split_power", 0.3), ("geometric", 0.5)):
        assert "CBF" in vb.infer_class(vb.combine(f, g, rule, alpha))
    with pytest.raises(ParameterError, match="alpha"):
        vb.combine(f, g, "power_mean", 0.0)
    with pytest.raises(ParameterError, match="alpha"):
        vb.combine(f, g, "split_power", 1.5)
    with pytest.raises(ParameterError, match="unknown combine rule"):
        vb.combine(f, g, "harmonic", 0.5)


def test_geometric_limit_of_power_mean():
    """2^(-1/a) (f^a + g^a)^(1/a) -> sqrt(fg) as a -> 0."""
    f = vb.catalog("frac_linear", {"lam": 1.0})
    g = vb.catalog("sqrt_arctan")
    x = np.linspace(0.3, 30.0, 10)
    want = np.sqrt(vb.evaluate(f, x) * vb.evaluate(g, x))
    for a, bound in ((1e-2, 1e-3), (1e-3, 1e-4)):
        got = vb.evaluate(vb.combine(f, g, "power_mean", a), x) * 2.0 ** (-1.0 / a)
        assert np.abs(got - want).max() < bound


def test_uchiyama_value_and_tags():
    f = vb.catalog("log1p")
    g1 = vb.catalog("frac_linear", {"lam": 1.0})
    g2 = vb.catalog("sqrt_arctan")
    h = vb.uchiyama(f, g1, g2)
    assert "CBF" in vb.infer_class(h)
    x = np.linspace(0.5, 5.0, 9)
    want = vb.evaluate(f, vb.evaluate(g1, x)) * \
        vb.evaluate(g2, x / vb.evaluate(g1, x))
    assert np.allclose(vb.evaluate(h, x), want, rtol=1e-12)


def test_uchiyama_rejects_vanishing_inner():
    zero = vb.catalog("const", {"c": 0.0})
    with pytest.raises(ConstructionError):
        vb.uchiyama(vb.catalog("log1p"), zero, vb.catalog("log1p"))


def test_dualize_values():
    g = vb.catalog("log1p")
    x = np.linspace(0.5, 8.0, 7)
    rat = vb.evaluate(vb.dualize(g, "x_over_f"), x)
    assert np.allclose(rat, x / np.log1p(x), rtol=1e-13)
    fox = vb.evaluate(vb.dualize(g, "f_over_x"), x)
    assert np.allclose(fox, np.log1p(x) / x, rtol=1e-13)
    rec = vb.evaluate(vb.dualize(g, "reciprocal"), x)
    assert np.allclose(rec, 1.0 / np.log1p(x), rtol=1e-13)
    with pytest.raises(ParameterError, match="rule"):
        vb.dualize(g, "flip")


def test_dualize_tags():
    g = vb.catalog("log1p")  # CBF
    assert "CBF" in vb.infer_class(vb.dualize(g, "x_over_f"))
    assert "S" in vb.infer_class(vb.dualize(g, "f_over_x"))
    assert "S" in vb.infer_class(vb.dualize(g, "reciprocal"))
    s = vb.catalog("recip")
    assert "CBF" in vb.infer_class(vb.dualize(s, "reciprocal"))


def test_ratio_endpoint_limit():
    # x/log(1+x) -> 1 as x -> 0: the 0/0 endpoint is substituted, not NaN
    rat = vb.dualize(vb.catalog("log1p"), "x_over_f")
    assert float(vb.evaluate(rat, 0.0)) == pytest.approx(1.0, abs=1e-9)


def test_evaluate_on_matrix_arguments():
    f = vb.catalog("log1p")
    x = np.linspace(0.0, 5.0, 12).reshape(3, 4)
    assert vb.evaluate(f, x).shape == (3, 4)


@settings(max_examples=40, deadline=None)
@given(st.floats(0.05, 1.0), st.floats(0.01, 90.0))
def test_fpow_matches_float_power(a, x):
    f = vb.catalog("log1p")
    got = float(vb.evaluate(vb.fpow(f, a), x))
    assert got == pytest.approx(float(np.log1p(x)) ** a, rel=1e-12)


@settings(max_examples=40, deadline=None)
@given(st.floats(0.01, 50.0))
def test_compose_matches_nesting(x):
    f = vb.catalog("sqrt_arctan")
    g = vb.catalog("frac_linear", {"lam": 2.0})
    got = float(vb.evaluate(vb.compose(f, g), x))
    want = float(vb.evaluate(f, float(vb.evaluate(g, x))))
    assert got == pytest.approx(want, rel=1e-12)


# ----------------------------------------------------------------------
# Levy representations

def test_levy_round_trip_density():
    f = vb.catalog("log1p")
    x = np.array([0.0, 0.5, 2.0, 10.0])
    got = vb.levy_eval(f.levy, x)
    assert np.allclose(got, vb.evaluate(f, x), rtol=1e-8, atol=1e-10)


def test_levy_round_trip_atoms():
    f = vb.catalog("exp_one_minus", {"a": 1.5})
    x = np.array([0.0, 1.0, 3.0])
    got = vb.levy_eval(f.levy, x)
    assert np.allclose(got, vb.evaluate(f, x), rtol=1e-12)


def test_levy_triple_validation():
    with pytest.raises(ParameterError):
        vb.LevyTriple(drift=-1.0, constant=0.0, atoms=(), density=None)
    with pytest.raises(ParameterError):
        vb.LevyTriple(drift=0.0, constant=0.0, atoms=((1.0, -2.0),),
                      density=None)


def test_levy_non_integrable_density_rejected():
    # m(t) ~ 1/t^2 makes the min(t, 1) moment diverge at the origin
    bad = vb.fprod(vb.catalog("recip"), vb.catalog("recip"))
    triple = vb.LevyTriple(drift=0.0, constant=0.0, atoms=(), density=bad)
    with pytest.raises(ParameterError):
        vb.levy_eval(triple, 1.0)


def test_levy_negative_argument():
    f = vb.catalog("log1p")
    with pytest.raises(EvaluationError):
        vb.levy_eval(f.levy, -0.5)


# ----------------------------------------------------------------------
# complex continuation

def test_complex_evaluation_matches_principal_branch():
    z = 1.0 + 2.0j
    got = complex(vb.evaluate_complex(vb.catalog("log1p"), z))
    assert got == pytest.approx(np.log(1 + z), rel=1e-14)
    fl = vb.catalog("frac_linear", {"lam": 2.0})
    assert complex(vb.evaluate_complex(fl, z)) == pytest.approx(
        2 * z / (2 + z), rel=1e-14)


def test_complex_evaluation_real_axis_agrees():
    f = vb.catalog("frac_linear", {"lam": 2.0})
    x = np.linspace(0.1, 20, 9)
    cv = vb.evaluate_complex(f, x.astype(complex))
    assert np.allclose(cv.imag, 0.0, atol=1e-14)
    assert np.allclose(cv.real, vb.evaluate(f, x), rtol=1e-12)


def test_complex_continuation_missing_is_explicit():
    with pytest.raises(EvaluationError, match="complex continuation"):
        vb.evaluate_complex(vb.catalog("sqrt_arctan"), 1.0 + 1.0j)


# ----------------------------------------------------------------------
# JSON serialization

def test_expr_json_round_trip():
    f = vb.combine(
        vb.compose(vb.catalog("log1p"), vb.catalog("frac_linear", {"lam": 2.0})),
        vb.fpow(vb.catalog("sqrt_arctan"), 0.5),
        "geometric", 0.25)
    d = vb.expr_to_json(f)
    back = vb.expr_from_json(d)
    x = np.linspace(0.1, 10, 7)
    assert np.array_equal(vb.evaluate(back, x), vb.evaluate(f, x))
    assert vb.infer_class(back) == vb.infer_class(f)
    # serialization is stable
    assert vb.expr_to_json(back) == d


def test_expr_json_affine_and_manual_tags():
    e = vb.with_tags(vb.catalog("one_minus_cos"), {"BF"})
    d = vb.expr_to_json(e)
    assert d.get("tags") == ["BF"]
    back = vb.expr_from_json(d)
    assert "BF" in vb.infer_class(back)
    a = vb.affine(vb.catalog("log1p"), shift=1.0, scale=-1.0)
    back = vb.expr_from_json(vb.expr_to_json(a))
    x = np.linspace(0.0, 4.0, 5)
    assert np.array_equal(vb.evaluate(back, x), vb.evaluate(a, x))


def test_expr_json_errors():
    with pytest.raises(ParameterError):
        vb.expr_from_json({"op": "warp", "args": []})
    with pytest.raises(ParameterError):
        vb.expr_from_json({"neither": 1})
    with pytest.raises(ParameterError):
        vb.expr_from_json({"op": "compose", "args": [{"atom": "log1p"}]})


def test_describe_is_readable():
    text = vb.describe(vb.compose(vb.catalog("log1p"),
                                  vb.catalog("power", {"a": 0.5})))
    assert "log1p" in text and "power" in text
