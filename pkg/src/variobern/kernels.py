"""Kernels derived from a base variogram by shifts, sums, and the spectral
route from a Lévy representation.

For a variogram gamma and a fixed shift eta,

    difference kernel:  gamma(xi+eta) + gamma(xi-eta) - 2 gamma(xi)
    sum kernel:         2 gamma(eta) + 2 gamma(xi) - gamma(xi+eta) - gamma(xi-eta)

are a stationary covariance and a variogram respectively, tied together by
the exact identity difference + sum = 2 gamma(eta). The nonstationary kernel
g(|xi1|) + g(|xi2|) - g(|xi1 - xi2|) generalizes the fractional-Brownian
covariance. The spectral construction turns a drift + decreasing-density
Lévy carrier f into the one-dimensional variogram
drift * xi^2 + integral (1 - cos(s xi)) mu(ds) with m(t) = mu[t, inf).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from . import algebra as alg
from .algebra import FunctionExpr, evaluate
from .errors import ConstructionError, ParameterError, QuadratureError
from .models import Variogram
from .points import PointSet

__all__ = [
    "ShiftKernelPair",
    "shift_pair",
    "difference_kernel",
    "sum_kernel",
    "NonstationaryKernel",
    "nonstationary_kernel",
    "spectral_variogram",
    "spectral_reference",
    "tabulate_kernel_csv",
]


def difference_kernel(gamma: Variogram, eta):
    """xi -> gamma(xi+eta) + gamma(xi-eta) - 2 gamma(xi); PD for variogram bases."""
    eta = np.asarray(eta, dtype=float).reshape(gamma.d)

    def kernel(xi):
        xi = np.asarray(xi, dtype=float)
        return gamma(xi + eta) + gamma(xi - eta) - 2.0 * gamma(xi)

    return kernel


def sum_kernel(gamma: Variogram, eta):
    """xi -> 2 gamma(eta) + 2 gamma(xi) - gamma(xi+eta) - gamma(xi-eta).

    Symmetric in (xi, eta), so the same closure serves both argument slots.
    """
    eta = np.asarray(eta, dtype=float).reshape(gamma.d)
    g_eta = float(gamma(eta[None, :])[0])

    def kernel(xi):
        xi = np.asarray(xi, dtype=float)
        return 2.0 * g_eta + 2.0 * gamma(xi) - gamma(xi + eta) - gamma(xi - eta)

    return kernel


@dataclass(frozen=True)
class ShiftKernelPair:
    """The difference/sum kernel pair of one base variogram and shift."""

    base: Variogram
    eta: np.ndarray

    @property
    def difference(self):
        return difference_kernel(self.base, self.eta)

    @property
    def sum(self):
        return sum_kernel(self.base, self.eta)

    def identity_gap(self, xi) -> np.ndarray:
        """difference + sum - 2 gamma(eta); zero in exact arithmetic."""
        g_eta = float(self.base(np.asarray(self.eta, float)[None, :])[0])
        return self.difference(xi) + self.sum(xi) - 2.0 * g_eta


def shift_pair(gamma: Variogram, eta) -> ShiftKernelPair:
    return ShiftKernelPair(gamma, np.asarray(eta, dtype=float).reshape(gamma.d))


@dataclass(frozen=True)
class NonstationaryKernel:
    """K(xi1, xi2) = g(|xi1|) + g(|xi2|) - g(|xi1 - xi2|) with g(0) = 0."""

    g: object  # evaluable on r >= 0
    d: int

    def _radial(self, xi):
        xi = np.asarray(xi, dtype=float)
        r = np.sqrt(np.einsum("...i,...i->...", xi, xi))
        return np.asarray(self.g(r), dtype=float)

    def __call__(self, xi1, xi2):
        xi1 = np.asarray(xi1, dtype=float)
        xi2 = np.asarray(xi2, dtype=float)
        return self._radial(xi1) + self._radial(xi2) - self._radial(xi1 - xi2)

    def gram(self, pts: PointSet) -> np.ndarray:
        x = pts.coords
        return self(x[:, None, :], x[None, :, :])


def nonstationary_kernel(g, d: int) -> NonstationaryKernel:
    """Build the two-argument kernel; requires g(0) = 0 so K(0, .) vanishes."""
    g0 = float(np.asarray(g(np.zeros(1)))[0])
    if abs(g0) > 1e-12:
        raise ConstructionError(f"nonstationary kernel requires g(0) = 0, got {g0!r}")
    return NonstationaryKernel(g, d)


# ----------------------------------------------------------------------
# spectral construction

def spectral_variogram(f: FunctionExpr, grid=None, tol: float = 1e-9) -> Variogram:
    """One-dimensional variogram from a drift + density Lévy carrier.

    The carrier f must hold a Lévy triple whose measure is a density m,
    checked decreasing on a grid; the jump measure mu with m(t) = mu[t, inf)
    must integrate min(s, s^2). The resulting model evaluates

        gamma(xi) = drift * xi^2 + integral (1 - cos(s xi)) mu(ds)

    by split quadrature with an oscillatory-weight tail.
    """
    triple = f.levy
    if triple is None:
        raise ConstructionError(
            "spectral construction needs an expression carrying a Levy triple"
        )
    if triple.atoms:
        raise ConstructionError(
            "spectral construction requires a density representation of the "
            "Levy measure, not atoms"
        )
    if triple.constant != 0.0:
        raise ConstructionError(
            "spectral construction requires a vanishing constant term"
        )
    if triple.density is not None:
        g = np.logspace(-3, 3, 61) if grid is None else np.asarray(grid, float)
        m_vals = evaluate(triple.density, g)
        rises = np.diff(m_vals)
        scale = max(1.0, float(np.abs(m_vals).max()))
        if rises.max() > tol * scale:
            i = int(np.argmax(rises))
            raise ParameterError(
                f"Levy density must be decreasing: m({g[i]:g}) < m({g[i + 1]:g})"
            )
        _check_mu_integrability(f)
    profile = alg.spectral_node(f)
    return Variogram(
        profile=profile, mode="norm", anisotropy=np.eye(1), d=1,
        certified=True,
        construction=f"spectral_variogram({alg.describe(f)})",
    )


def _check_mu_integrability(f: FunctionExpr) -> None:
    drift, dens = alg._resolve_spectral_mu(f)
    if dens is None:
        return
    with np.errstate(all="ignore"):
        head = quad(lambda s: s * s * dens(s), 0.0, 1.0,
                    epsabs=1e-9, epsrel=1e-9, limit=200)
        tail = quad(lambda s: s * dens(s), 1.0, np.inf,
                    epsabs=1e-9, epsrel=1e-9, limit=200)
    total = head[0] + tail[0]
    err = head[1] + tail[1]
    if not np.isfinite(total) or err > 1e-3 * max(1.0, abs(total)):
        raise QuadratureError(
            "recovered jump measure fails the integral min(s, s^2) mu(ds) check"
        )


def spectral_reference(f: FunctionExpr, xi):
    """-Re(i xi f(i xi)) where f extends analytically; the closed-form twin
    of the spectral construction, used for cross-validation."""
    x = np.asarray(xi, dtype=float)
    z = 1j * x
    vals = alg.evaluate_complex(f, z)
    out = -np.real(z * vals)
    return float(out) if np.isscalar(xi) or x.ndim == 0 else out


def tabulate_kernel_csv(kernel, coords, path) -> None:
    """Write rows (xi coordinates..., value) for a kernel on given points."""
    coords = np.asarray(coords, dtype=float)
    if coords.ndim == 1:
        coords = coords[:, None]
    vals = np.asarray(kernel(coords), dtype=float)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow([f"x{i + 1}" for i in range(coords.shape[1])] + ["value"])
        for row, v in zip(coords, vals):
            w.writerow([repr(float(c)) for c in row] + [repr(float(v))])
