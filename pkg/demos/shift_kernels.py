"""Difference and sum kernels built from a single base variogram.

For a variogram gamma and a fixed shift eta, the difference kernel
gamma(xi+eta) + gamma(xi-eta) - 2 gamma(xi) is a stationary covariance,
and the complementary sum kernel is negative definite in each argument;
the two always add up to the constant 2 gamma(eta). Two of the bases have
closed forms, printed side by side with the generic code path.
"""

import numpy as np

import variobern as vb

eta = np.array([0.9])
xi = np.linspace(-5.0, 5.0, 5)[:, None]

print("base gamma(xi) = xi^2: difference kernel is the constant 2 eta^2")
sq = vb.make_variogram(vb.catalog("power", {"a": 1.0}), d=1)
got = vb.difference_kernel(sq, eta)(xi)
print(f"  computed {np.round(got, 12)}")
print(f"  closed   {np.full(5, 2.0 * 0.9 ** 2)}")

print()
print("base gamma(xi) = 1 - cos xi: difference kernel is 2(1-cos eta) cos xi")
cos_v = vb.make_variogram(vb.catalog("one_minus_cos"), d=1, mode="norm")
got = vb.difference_kernel(cos_v, eta)(xi)
want = 2.0 * (1.0 - np.cos(0.9)) * np.cos(xi[:, 0])
print(f"  max |computed - closed| = {np.abs(got - want).max():.2e}")

print()
print("definiteness on a seeded 9-point set")
pts = vb.sample_point_sets(1, 9, 1, seed=414, box=6.0)[0]
for name, base in [("|xi|", vb.make_variogram(vb.catalog("power", {"a": 0.5}),
                                              d=1)),
                   ("1 - cos xi", cos_v),
                   ("Ma product", vb.ma_product(1.0, 1.0, d=1))]:
    dk = vb.pd_check(vb.difference_kernel(base, eta), pts)
    sk = vb.cnd_check(vb.sum_kernel(base, eta), pts)
    print(f"  {name:12s} difference pd_check {dk.verdict:5s}   "
          f"sum cnd_check {sk.verdict}")

print()
print("the pair identity difference + sum = 2 gamma(eta)")
pair = vb.shift_pair(cos_v, eta)
samples = np.random.default_rng(7).uniform(-8.0, 8.0, (1000, 1))
print(f"  max |gap| over 1000 samples = "
      f"{np.abs(pair.identity_gap(samples)).max():.2e}")

print()
print("nonstationary kernel g(|x|) + g(|y|) - g(|x - y|)")
# g(r) = r gives the fractional-Brownian-style kernel with K(x, x) = 2|x|
k = vb.nonstationary_kernel(lambda r: r, d=1)
x = np.linspace(0.5, 4.0, 8)[:, None]
gram = k.gram(vb.PointSet(x))
print(f"  diagonal K(x, x) = {np.round(np.diag(gram), 6)}")
print(f"  smallest eigenvalue of the Gram matrix = "
      f"{np.linalg.eigvalsh(gram).min():.3e} (PSD)")
k_bad = vb.nonstationary_kernel(lambda r: r ** 3, d=1)
w = np.linalg.eigvalsh(k_bad.gram(vb.PointSet(x)))
print(f"  with g(r) = r^3 instead: smallest eigenvalue {w.min():.3f} "
      f"(not a valid g)")
