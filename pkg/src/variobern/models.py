"""Variogram and stationary-covariance models over radial profiles.

A model is a radial profile expression, an anisotropy matrix A, a dimension,
and an argument mode: ``squared_norm`` models evaluate f(|A xi|^2) (the form
every all-dimension-permissible radial variogram takes, with f Bernstein),
``norm`` models evaluate f(|A xi|) (spherical, Wendland, Ma's |A xi|-based
product). Conflating the two argument conventions is the classic mistake,
so the mode is an explicit field and part of the JSON format.

Every constructor records a ``certified`` flag: True only when a closure
theorem covers the construction, False ("unverified") otherwise. Unverified
models still evaluate; the oracles decide their fate empirically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import algebra as alg
from .algebra import FunctionExpr, evaluate
from .errors import ConstructionError, ParameterError

__all__ = [
    "Variogram",
    "StationaryCovariance",
    "make_variogram",
    "ma_product",
    "schur_product_extended",
    "cbf_variograms",
    "composition_products",
    "wendland",
    "spherical",
    "spherical_covariance",
    "exponential_covariance",
    "matern_covariance",
    "variogram_from_covariance",
    "covariance_from_variogram",
    "model_to_json",
    "model_from_json",
]

_MODES = ("squared_norm", "norm")


def _check_anisotropy(a, d: int) -> np.ndarray:
    if a is None:
        a = np.eye(d)
    a = np.asarray(a, dtype=float)
    if a.shape != (d, d):
        raise ParameterError(f"anisotropy must be {d}x{d}, got {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ParameterError("anisotropy must be finite")
    return a


@dataclass(frozen=True, eq=False)
class _RadialModel:
    profile: FunctionExpr
    mode: str
    anisotropy: np.ndarray
    d: int
    certified: bool
    construction: str

    def __post_init__(self):
        if self.mode not in _MODES:
            raise ParameterError(f"mode must be one of {_MODES}")
        if self.d < 1:
            raise ParameterError("dimension must be >= 1")
        a = _check_anisotropy(self.anisotropy, self.d).copy()
        a.flags.writeable = False
        object.__setattr__(self, "anisotropy", a)

    def radial_argument(self, lags) -> np.ndarray:
        lag = np.asarray(lags, dtype=float)
        if lag.ndim == 0 or lag.shape[-1] != self.d:
            raise ParameterError(
                f"lags must have trailing dimension {self.d}, got shape {lag.shape}"
            )
        y = lag @ self.anisotropy.T
        r2 = np.einsum("...i,...i->...", y, y)
        return r2 if self.mode == "squared_norm" else np.sqrt(r2)

    def __call__(self, lags):
        return evaluate(self.profile, self.radial_argument(lags))

    def norm_profile(self, r):
        """Model value as a function of the anisotropic radius r = |A xi|."""
        r = np.asarray(r, dtype=float)
        x = r * r if self.mode == "squared_norm" else r
        return evaluate(self.profile, x)


@dataclass(frozen=True, eq=False)
class Variogram(_RadialModel):
    """gamma(xi) = f(|A xi|^2) or f(|A xi|) on R^d."""

    construction: str = ""


@dataclass(frozen=True, eq=False)
class StationaryCovariance(_RadialModel):
    """C(xi) = f(|A xi|^2) or f(|A xi|), with sill C(0) and support radius."""

    sill: float = 1.0
    support_radius: float = math.inf
    construction: str = ""

    def __post_init__(self):
        super().__post_init__()
        if self.sill < 0:
            raise ParameterError("sill must be nonnegative")
        if self.support_radius <= 0:
            raise ParameterError("support_radius must be positive (inf allowed)")


# ----------------------------------------------------------------------
# constructors

def make_variogram(f: FunctionExpr, A=None, d: int = 1,
                   mode: str = "squared_norm", construction: str = "") -> Variogram:
    """Wrap a radial profile into a variogram on R^d.

    In squared_norm mode a BF-tagged profile certifies permissibility in
    every dimension; anything else is accepted but flagged unverified.
    """
    if mode not in _MODES:
        raise ParameterError(f"mode must be one of {_MODES}")
    certified = mode == "squared_norm" and "BF" in alg.infer_class(f)
    return Variogram(
        profile=f, mode=mode, anisotropy=_check_anisotropy(A, d), d=d,
        certified=certified,
        construction=construction or f"make_variogram({alg.describe(f)})",
    )


def schur_product_extended(g1: FunctionExpr, g2: FunctionExpr, alpha: float,
                           beta: float, A=None, d: int = 1) -> Variogram:
    """Variogram with profile h(x) = g1(x^alpha) * g2(x^beta).

    For Bernstein g1, g2 and alpha, beta in [0, 1] with alpha + beta <= 1
    the product of the two variograms gi(|A xi|^(2 exponent)) is again a
    variogram in every dimension; alpha + beta > 1 is outside the theorem
    and is rejected rather than silently extrapolated.
    """
    alpha, beta = float(alpha), float(beta)
    if not (0.0 <= alpha <= 1.0 and 0.0 <= beta <= 1.0):
        raise ParameterError("schur product requires alpha, beta in [0, 1]")
    if alpha + beta > 1.0:
        raise ParameterError(
            f"schur product requires alpha + beta <= 1 (got {alpha + beta:g}); "
            "the closure theorem does not cover larger exponent sums"
        )

    def factor(g, expo):
        if expo == 0.0:
            return alg.catalog("const", c=evaluate(g, 1.0))
        return alg.compose(g, alg.catalog("power", a=expo))

    h = alg.fprod(factor(g1, alpha), factor(g2, beta))
    certified = "BF" in alg.infer_class(g1) and "BF" in alg.infer_class(g2)
    if certified:
        # the theorem shows h' is completely monotone, which the product
        # tag rule alone cannot see
        h = alg.with_tags(h, {"BF"})
    return Variogram(
        profile=h, mode="squared_norm", anisotropy=_check_anisotropy(A, d), d=d,
        certified=certified,
        construction=(f"schur_product(alpha={alpha:g}, beta={beta:g}, "
                      f"g1={alg.describe(g1)}, g2={alg.describe(g2)})"),
    )


def ma_product(a1: float, a2: float, A=None, d: int = 1) -> Variogram:
    """gamma(xi) = (1-e^(-a1 |A xi|)) (1-e^(-a2 |A xi|)), certified all d.

    This is the exponent-1/2 Schur product of two exponential variograms.
    """
    if a1 < 0 or a2 < 0:
        raise ParameterError("ma_product requires nonnegative rates")
    v = schur_product_extended(
        alg.catalog("exp_one_minus", a=a1), alg.catalog("exp_one_minus", a=a2),
        alpha=0.5, beta=0.5, A=A, d=d,
    )
    return Variogram(
        profile=v.profile, mode=v.mode, anisotropy=v.anisotropy, d=d,
        certified=True, construction=f"ma_product(a1={a1:g}, a2={a2:g})",
    )


def cbf_variograms(g: FunctionExpr, which: str, d: int = 1, A=None) -> Variogram:
    """All-dimension variograms derived from one complete Bernstein profile.

    which: ratio -> x/g(x); inv_arg -> 1/g(1/x); inv_arg_ratio -> x*g(1/x).
    """
    if which not in ("ratio", "inv_arg", "inv_arg_ratio"):
        raise ParameterError("which must be ratio | inv_arg | inv_arg_ratio")
    if all(evaluate(g, x) == 0.0 for x in (0.5, 1.0, 2.0)):
        raise ConstructionError("profile must not be identically zero")
    if which == "ratio":
        h = alg.dualize(g, "x_over_f")
    else:
        inv = alg.dualize(alg.compose(g, alg.catalog("recip")), "reciprocal")
        h = inv if which == "inv_arg" else alg.dualize(inv, "x_over_f")
    certified = "CBF" in alg.infer_class(h)
    return Variogram(
        profile=h, mode="squared_norm", anisotropy=_check_anisotropy(A, d), d=d,
        certified=certified,
        construction=f"cbf_variograms({which}, g={alg.describe(g)})",
    )


def composition_products(g1: FunctionExpr, g2: FunctionExpr,
                         g3: FunctionExpr | None = None,
                         which: str = "two_factor", d: int = 1, A=None) -> Variogram:
    """Products of composed radial variograms, closed over complete Bernstein.

    two_factor:   h(x) = g1(x) * g2(x / g1(x))
    three_factor: h(x) = g3(g1(x)) * g2(x / g1(x))
    """
    if which not in ("two_factor", "three_factor"):
        raise ParameterError("which must be two_factor | three_factor")
    if which == "three_factor" and g3 is None:
        raise ParameterError("three_factor needs g3")
    outer = alg.catalog("power", a=1.0) if which == "two_factor" else g3
    h = alg.uchiyama(outer, g1, g2)
    certified = "CBF" in alg.infer_class(h)
    return Variogram(
        profile=h, mode="squared_norm", anisotropy=_check_anisotropy(A, d), d=d,
        certified=certified,
        construction=f"composition_products({which}, g1={alg.describe(g1)}, "
                     f"g2={alg.describe(g2)}"
                     + (f", g3={alg.describe(g3)})" if g3 is not None else ")"),
    )


def wendland(r: float, l: int, d: int, A=None) -> StationaryCovariance:
    """Truncated-power covariance (1 - |xi|/r)_+^l, compact support r.

    Positive definiteness on R^d needs l >= floor(d/2) + 1; smaller l is
    rejected, naming the bound.
    """
    if r <= 0:
        raise ParameterError("support radius r must be positive")
    if int(l) != l or l < 1:
        raise ParameterError("exponent l must be a positive integer")
    bound = d // 2 + 1
    if l < bound:
        raise ParameterError(
            f"truncated power exponent l={l} is not permissible in d={d}: "
            f"requires l >= floor(d/2)+1 = {bound}"
        )
    return StationaryCovariance(
        profile=alg.catalog("wendland_profile", r=float(r), l=int(l)),
        mode="norm", anisotropy=_check_anisotropy(A, d), d=d,
        certified=True, sill=1.0, support_radius=float(r),
        construction=f"wendland(r={r:g}, l={l}, d={d})",
    )


def spherical(rng: float, d: int, A=None) -> Variogram:
    """Spherical variogram with range rng and sill 1; certified for d <= 3."""
    if rng <= 0:
        raise ParameterError("range must be positive")
    return Variogram(
        profile=alg.catalog("spherical_profile", {"range": float(rng)}),
        mode="norm", anisotropy=_check_anisotropy(A, d), d=d,
        certified=d <= 3,
        construction=f"spherical(range={rng:g}, d={d})",
    )


def spherical_covariance(rng: float, d: int, A=None) -> StationaryCovariance:
    """C = 1 - spherical variogram: compactly supported with radius rng."""
    base = spherical(rng, d, A)
    return StationaryCovariance(
        profile=alg.affine(base.profile, shift=1.0, scale=-1.0),
        mode="norm", anisotropy=base.anisotropy, d=d,
        certified=base.certified, sill=1.0, support_radius=float(rng),
        construction=f"spherical_covariance(range={rng:g}, d={d})",
    )


def exponential_covariance(rate: float = 1.0, d: int = 1, A=None) -> StationaryCovariance:
    """C(xi) = e^(-rate |A xi|), permissible in every dimension."""
    if rate <= 0:
        raise ParameterError("rate must be positive")
    return StationaryCovariance(
        profile=alg.compose(alg.catalog("exp_decay", a=rate),
                            alg.catalog("power", a=0.5)),
        mode="squared_norm", anisotropy=_check_anisotropy(A, d), d=d,
        certified=True, sill=1.0, support_radius=math.inf,
        construction=f"exponential_covariance(rate={rate:g}, d={d})",
    )


def matern_covariance(alpha: float = 1.0, nu: float = 0.5, d: int = 1,
                      A=None) -> StationaryCovariance:
    """Covariance 1 - matern profile sill-reversed: C = 1 - f_matern(|xi|^2)."""
    f = alg.catalog("matern", alpha=alpha, nu=nu)
    return StationaryCovariance(
        profile=alg.affine(f, shift=1.0, scale=-1.0),
        mode="squared_norm", anisotropy=_check_anisotropy(A, d), d=d,
        certified=True, sill=1.0, support_radius=math.inf,
        construction=f"matern_covariance(alpha={alpha:g}, nu={nu:g}, d={d})",
    )


def variogram_from_covariance(c: StationaryCovariance) -> Variogram:
    """gamma(xi) = C(0) - C(xi); bounded by the sill, eventually constant
    exactly when C is compactly supported."""
    sill = float(evaluate(c.profile, 0.0))
    return Variogram(
        profile=alg.affine(c.profile, shift=sill, scale=-1.0),
        mode=c.mode, anisotropy=c.anisotropy, d=c.d,
        certified=c.certified,
        construction=f"variogram_from_covariance({c.construction})",
    )


def covariance_from_variogram(v: Variogram, sill: float,
                              support_radius: float = math.inf) -> StationaryCovariance:
    """C(xi) = sill - gamma(xi) for bounded (eventually constant) variograms."""
    if sill < 0:
        raise ParameterError("sill must be nonnegative")
    return StationaryCovariance(
        profile=alg.affine(v.profile, shift=float(sill), scale=-1.0),
        mode=v.mode, anisotropy=v.anisotropy, d=v.d,
        certified=v.certified, sill=float(sill),
        support_radius=float(support_radius),
        construction=f"covariance_from_variogram({v.construction})",
    )


# ----------------------------------------------------------------------
# model JSON

def model_to_json(m: _RadialModel) -> dict:
    out = {
        "type": "covariance" if isinstance(m, StationaryCovariance) else "variogram",
        "profile": alg.expr_to_json(m.profile),
        "mode": m.mode,
        "A": m.anisotropy.tolist(),
        "d": m.d,
        "certified": m.certified,
        "construction": m.construction,
    }
    if isinstance(m, StationaryCovariance):
        out["sill"] = m.sill
        out["support_radius"] = None if math.isinf(m.support_radius) else m.support_radius
    return out


def model_from_json(d: dict):
    if not isinstance(d, dict):
        raise ParameterError("model JSON must be an object")
    for key in ("profile", "mode", "d"):
        if key not in d:
            raise ParameterError(f"model JSON is missing the '{key}' field")
    profile = alg.expr_from_json(d["profile"])
    dim = int(d["d"])
    a = _check_anisotropy(d.get("A"), dim)
    kind = d.get("type", "variogram")
    if kind == "covariance":
        sr = d.get("support_radius")
        return StationaryCovariance(
            profile=profile, mode=d["mode"], anisotropy=a, d=dim,
            certified=bool(d.get("certified", False)),
            sill=float(d.get("sill", 1.0)),
            support_radius=math.inf if sr is None else float(sr),
            construction=d.get("construction", ""),
        )
    if kind != "variogram":
        raise ParameterError(f"unknown model type '{kind}'")
    return Variogram(
        profile=profile, mode=d["mode"], anisotropy=a, d=dim,
        certified=bool(d.get("certified", False)),
        construction=d.get("construction", ""),
    )
