"""Structural diagnostics beyond plain definiteness checks.

Covers period detection for oscillating variograms, the square-root
triangle inequality, the shape constraints every rotationally symmetric
variogram profile must satisfy in d > 1, and the rule that a model valid
in every dimension cannot level off at finite range.
"""

import numpy as np

import variobern as vb

print("period detection")
cos_v = vb.make_variogram(vb.catalog("one_minus_cos"), d=1, mode="norm")
p = vb.detect_period(cos_v, search_radius=10.0)
print(f"  gamma = 1 - cos xi : period {p[0]:.9f}  (2 pi = {2 * np.pi:.9f})")
abs_v = vb.make_variogram(vb.catalog("power", {"a": 0.5}), d=1)
print(f"  gamma = |xi|       : {vb.detect_period(abs_v, search_radius=10.0)}")

print()
print("sqrt(gamma) satisfies the triangle inequality for true variograms")
pts = vb.PointSet(np.array([[0.0], [1.0]]))
for name, m in [("1 - exp(-|xi|)",
                 vb.variogram_from_covariance(vb.exponential_covariance(1.0, d=1))),
                ("|xi|^3",
                 vb.make_variogram(vb.fpow(vb.catalog("power", {"a": 1.0}), 1.5),
                                   d=1))]:
    rep = vb.sqrt_subadditivity_check(m, pts)
    line = f"  {name:15s} {rep.verdict}"
    rec = rep.record("sqrt_subadditivity")
    if rec.witness is not None:
        line += (f"   witness x = {rec.witness['x']}, y = {rec.witness['y']}, "
                 f"excess = {rec.witness['excess']:.4f}")
    print(line)

print()
print("the squared-radius profile must be increasing, concave, subadditive")
grid = np.linspace(0.0, 8.0, 65)
v_sq = vb.make_variogram(vb.catalog("power", {"a": 1.0}), d=2)
f_ok = lambda x: v_sq.norm_profile(np.sqrt(x))     # gamma = |xi|^2 -> f(x) = x
rep = vb.profile_shape_check(f_ok, grid)
print(f"  f(x) = x   (gamma = |xi|^2):   {rep.verdict}")
rep = vb.profile_shape_check(lambda x: x ** 2, grid)
bad = [r.name for r in rep.checks if r.verdict == "fail"]
print(f"  f(x) = x^2 (gamma = |xi|^4):   {rep.verdict} "
      f"(fails: {', '.join(bad)})")

print()
print("levelling off at finite range")
sph = vb.spherical_covariance(1.5, d=2)
rep = vb.eventual_constancy_check(sph.norm_profile, inner=1.5, outer=4.5)
print(f"  spherical covariance, d = 2, plateau beyond its range: {rep.verdict}")
rep = vb.eventual_constancy_check(
    vb.variogram_from_covariance(sph).norm_profile, inner=1.5, outer=4.5,
    all_d_certified=True)
rec = rep.record("all_d_consistency")
print(f"  same plateau claimed valid in every dimension: {rep.verdict}")
print(f"    {rec.detail}")
