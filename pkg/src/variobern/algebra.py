"""Expression algebra for radial profile functions.

Expressions are immutable trees over catalog atoms. Each node carries the set
of function-cone memberships ("CM", "BF", "CBF", "S") that can be certified
for it: atoms carry catalog facts, inner nodes only what a cited closure rule
derives from the children, and constructors may inject a certificate when a
theorem covers the whole construction. Tags are therefore sound but not
complete - an empty set means "unverified", never "disproved".
"""

from __future__ import annotations

import contextlib
import functools
import math
import warnings
from dataclasses import dataclass, field, replace
from typing import Iterable

import numpy as np
from scipy.integrate import IntegrationWarning, quad

from .atoms import CBF_TABLE, REGISTRY, atom_tags, validate_params
from .errors import (
    ConstructionError,
    EvaluationError,
    ParameterError,
    QuadratureError,
)

__all__ = [
    "FunctionExpr",
    "LevyTriple",
    "catalog",
    "catalog_names",
    "cbf_table",
    "evaluate",
    "evaluate_complex",
    "compose",
    "combine",
    "dualize",
    "uchiyama",
    "affine",
    "fsum",
    "fprod",
    "fpow",
    "with_tags",
    "with_levy",
    "infer_class",
    "levy_eval",
    "expr_to_json",
    "expr_from_json",
    "spectral_node",
    "describe",
]

CONES = ("CM", "BF", "CBF", "S")

COMBINE_RULES = ("power_mean", "arg_power_mean", "split_power", "geometric")
DUALIZE_RULES = ("x_over_f", "f_over_x", "reciprocal")

# substitutes used to evaluate ratio limits x/f(x), f(x)/x at the endpoints;
# every catalog atom is power-law behaved there, so the substituted point
# evaluates the true limit to within ~1e-140
_ZERO_SUB = 1e-280
_INF_SUB = 1e300


@dataclass(frozen=True)
class LevyTriple:
    """Representation (drift, constant, measure) of a Bernstein function
    f(x) = drift*x + constant + integral (1 - e^(-x t)) nu(dt).

    The measure is either a finite list of atoms (t_i, mass_i) or a density
    m(t) given as a FunctionExpr on t > 0; exactly one of the two is set.
    """

    drift: float = 0.0
    constant: float = 0.0
    atoms: tuple[tuple[float, float], ...] = ()
    density: "FunctionExpr | None" = None

    def __post_init__(self):
        if self.drift < 0 or self.constant < 0:
            raise ParameterError("Levy triple requires drift >= 0 and constant >= 0")
        if self.atoms and self.density is not None:
            raise ParameterError("Levy measure is either atoms or a density, not both")
        for t, m in self.atoms:
            if t <= 0 or m < 0:
                raise ParameterError(
                    "Levy atoms require location > 0 and mass >= 0"
                )


@dataclass(frozen=True)
class FunctionExpr:
    """A node of the profile-function expression tree."""

    kind: str
    name: str = ""
    params: tuple[tuple[str, float], ...] = ()
    children: tuple["FunctionExpr", ...] = ()
    alpha: float | None = None
    tags: frozenset = field(default_factory=frozenset)
    levy: LevyTriple | None = None

    @property
    def params_dict(self) -> dict:
        return dict(self.params)

    def __call__(self, x):
        return evaluate(self, x)

    def __repr__(self):  # compact, used in provenance strings
        return describe(self)


def describe(e: FunctionExpr) -> str:
    if e.kind == "atom":
        inner = ", ".join(f"{k}={v:g}" for k, v in e.params)
        return f"{e.name}({inner})"
    if e.kind == "power":
        return f"pow({describe(e.children[0])}, {e.alpha:g})"
    if e.kind == "affine":
        p = e.params_dict
        return (f"affine({describe(e.children[0])}, shift={p['shift']:g}, "
                f"scale={p['scale']:g})")
    parts = ", ".join(describe(c) for c in e.children)
    head = e.kind if not e.name else f"{e.kind}[{e.name}]"
    if e.alpha is not None:
        return f"{head}({parts}; alpha={e.alpha:g})"
    return f"{head}({parts})"


# ----------------------------------------------------------------------
# tag rules

def _complete(tags: Iterable[str]) -> frozenset:
    t = set(tags)
    if "CBF" in t:
        t.add("BF")
    if "S" in t:
        t.add("CM")
    return frozenset(t)


def _derive(kind: str, name: str, alpha, child_tags: list[frozenset],
            params=()) -> frozenset:
    if kind == "affine":
        # conic combination with a nonnegative constant stays in each cone
        p = dict(params)
        if p.get("shift", 0.0) >= 0.0 and p.get("scale", 1.0) >= 0.0:
            return frozenset(child_tags[0])
        return frozenset()
    if kind == "sum":
        # all four cones are closed under addition
        t = set(child_tags[0])
        for ct in child_tags[1:]:
            t &= ct
        return frozenset(t)
    if kind == "product":
        # only complete monotonicity survives products in general
        if all("CM" in ct for ct in child_tags):
            return frozenset({"CM"})
        return frozenset()
    if kind == "compose":
        f, g = child_tags
        t = set()
        if "BF" in g:
            if "CM" in f:
                t.add("CM")
            if "BF" in f:
                t.add("BF")
        # same-cone pairs compose into CBF; mixed CBF/S pairs land in S
        # (chain the dualities: CBF o S = 1/((1/f) o g) with (1/f) o g in CBF)
        if ("CBF" in f and "CBF" in g) or ("S" in f and "S" in g):
            t.add("CBF")
        if ("S" in f and "CBF" in g) or ("CBF" in f and "S" in g):
            t.add("S")
        return frozenset(t)
    if kind == "power":
        (f,) = child_tags
        a = alpha
        if a == 1.0:
            return frozenset(f)
        t = set()
        if 0.0 < a <= 1.0:
            if "CBF" in f:
                t.add("CBF")
            if "BF" in f:
                t.add("BF")
            if "S" in f:
                t.add("S")
        elif a == -1.0:
            if "CBF" in f:
                t.add("S")
            if "S" in f:
                t.add("CBF")
        return frozenset(t)
    if kind == "combine":
        f, g = child_tags
        if "CBF" in f and "CBF" in g:
            return frozenset({"CBF"})
        return frozenset()
    if kind == "uchiyama":
        if all("CBF" in ct for ct in child_tags):
            return frozenset({"CBF"})
        return frozenset()
    if kind == "dualize":
        (f,) = child_tags
        t = set()
        if name == "x_over_f" and "CBF" in f:
            t.add("CBF")
        elif name == "f_over_x" and "CBF" in f:
            t.add("S")
        elif name == "reciprocal":
            if "CBF" in f:
                t.add("S")
            if "S" in f:
                t.add("CBF")
        return frozenset(t)
    return frozenset()


def _node(kind, name="", params=(), children=(), alpha=None,
          extra_tags=frozenset(), levy=None) -> FunctionExpr:
    derived = _derive(kind, name, alpha, [c.tags for c in children], params)
    return FunctionExpr(kind, name, tuple(params), tuple(children), alpha,
                        _complete(derived | set(extra_tags)), levy)


def with_tags(e: FunctionExpr, tags: Iterable[str]) -> FunctionExpr:
    """Attach certificate tags (justified by the caller) to an expression."""
    extra = set(tags)
    bad = extra - set(CONES)
    if bad:
        raise ParameterError(f"unknown cone tags {sorted(bad)}; expected {CONES}")
    return replace(e, tags=_complete(set(e.tags) | extra))


def with_levy(e: FunctionExpr, triple: LevyTriple) -> FunctionExpr:
    return replace(e, levy=triple)


def infer_class(e: FunctionExpr) -> frozenset:
    """Monotone closure of cone tags from one bottom-up pass of all rules."""
    child = [infer_class(c) for c in e.children]
    if e.kind == "atom":
        return _complete(e.tags)
    return _complete(set(e.tags) | _derive(e.kind, e.name, e.alpha, child, e.params))


# ----------------------------------------------------------------------
# constructors

def catalog(name: str, params: dict | None = None, **kw) -> FunctionExpr:
    """Construct a catalog atom by name with validated parameters."""
    spec = REGISTRY.get(name)
    if spec is None:
        raise ParameterError(
            f"unknown atom name '{name}'; see catalog_names() for the catalog"
        )
    p = validate_params(spec, {**(params or {}), **kw})
    return FunctionExpr(
        kind="atom",
        name=name,
        params=tuple(sorted(p.items())),
        tags=_complete(atom_tags(spec, p)),
        levy=_build_levy(name, p),
    )


def catalog_names() -> tuple[str, ...]:
    return tuple(sorted(REGISTRY))


def cbf_table() -> tuple[FunctionExpr, ...]:
    """The canonical twelve-member complete Bernstein table."""
    return tuple(catalog(n, dict(p)) for n, p in CBF_TABLE)


def _build_levy(name: str, p: dict) -> LevyTriple | None:
    spec = REGISTRY[name]
    if spec.levy is None:
        return None
    raw = spec.levy(p)
    if raw is None:
        return None
    density = raw.get("density")
    return LevyTriple(
        drift=raw.get("drift", 0.0),
        constant=raw.get("constant", 0.0),
        atoms=tuple((float(t), float(m)) for t, m in raw.get("atoms", ())),
        density=expr_from_json(density) if density is not None else None,
    )


def affine(f: FunctionExpr, shift: float = 0.0, scale: float = 1.0) -> FunctionExpr:
    """x -> shift + scale * f(x)."""
    return _node("affine", params=(("scale", float(scale)), ("shift", float(shift))),
                 children=(f,))


def fsum(*fs: FunctionExpr) -> FunctionExpr:
    if not fs:
        raise ConstructionError("fsum needs at least one term")
    if len(fs) == 1:
        return fs[0]
    return _node("sum", children=fs)


def fprod(*fs: FunctionExpr) -> FunctionExpr:
    if not fs:
        raise ConstructionError("fprod needs at least one factor")
    if len(fs) == 1:
        return fs[0]
    return _node("product", children=fs)


def fpow(f: FunctionExpr, exponent: float) -> FunctionExpr:
    return _node("power", children=(f,), alpha=float(exponent))


def compose(f: FunctionExpr, g: FunctionExpr) -> FunctionExpr:
    """f o g, i.e. x -> f(g(x))."""
    return _node("compose", children=(f, g))


def combine(f: FunctionExpr, g: FunctionExpr, rule: str, alpha: float) -> FunctionExpr:
    """Two-argument closure combinators on the complete Bernstein cone.

    rule: one of
      power_mean      (f(x)^a + g(x)^a)^(1/a),        a in [-1, 1] \\ {0}
      arg_power_mean  (f(x^a) + g(x^a))^(1/a),        a in [-1, 1] \\ {0}
      split_power     f(x^a) * g(x^(1-a)),            a in [0, 1]
      geometric       f(x)^a * g(x)^(1-a),            a in [0, 1]
    """
    alpha = float(alpha)
    if rule not in COMBINE_RULES:
        raise ParameterError(f"unknown combine rule '{rule}'; expected {COMBINE_RULES}")
    if rule in ("power_mean", "arg_power_mean"):
        if not (-1.0 <= alpha <= 1.0) or alpha == 0.0:
            raise ParameterError(
                f"combine rule '{rule}' requires alpha in [-1, 1] excluding 0 "
                f"(got {alpha!r})"
            )
    else:
        if not (0.0 <= alpha <= 1.0):
            raise ParameterError(
                f"combine rule '{rule}' requires alpha in [0, 1] (got {alpha!r})"
            )
    return _node("combine", name=rule, children=(f, g), alpha=alpha)


def dualize(f: FunctionExpr, rule: str) -> FunctionExpr:
    """Duality maps x/f(x), f(x)/x and 1/f(x) on the CBF/Stieltjes pair."""
    if rule not in DUALIZE_RULES:
        raise ParameterError(f"unknown dualize rule '{rule}'; expected {DUALIZE_RULES}")
    return _node("dualize", name=rule, children=(f,))


def uchiyama(h: FunctionExpr, f: FunctionExpr, g: FunctionExpr) -> FunctionExpr:
    """x -> h(f(x)) * g(x / f(x)); maps CBF triples to CBF."""
    if _probably_zero(f):
        raise ConstructionError("uchiyama requires f not identically zero")
    return _node("uchiyama", children=(h, f, g))


def _probably_zero(f: FunctionExpr) -> bool:
    try:
        return all(evaluate(f, x) == 0.0 for x in (0.5, 1.0, 2.0))
    except EvaluationError:
        return False


# ----------------------------------------------------------------------
# evaluation

def _sub_endpoints(x: np.ndarray) -> np.ndarray:
    out = np.where(x == 0.0, _ZERO_SUB, x)
    return np.where(np.isinf(out), _INF_SUB, out)


def _clamp_roundoff(v: np.ndarray) -> np.ndarray:
    # rounding may push a theoretically nonnegative inner value a hair below 0
    finite = v[np.isfinite(v)]
    scale = max(1.0, float(np.abs(finite).max())) if finite.size else 1.0
    return np.where((v < 0.0) & (v > -1e-9 * scale), 0.0, v)


def _ev(e: FunctionExpr, x: np.ndarray) -> np.ndarray:
    if e.kind == "atom":
        spec = REGISTRY[e.name]
        p = e.params_dict
        out = np.empty_like(x)
        zero = x == 0.0
        infm = np.isinf(x)
        body = ~(zero | infm)
        if zero.any():
            out[zero] = spec.zero(p)
        if infm.any():
            out[infm] = spec.inf(p)
        if body.any():
            out[body] = spec.body(x[body], p)
        return out
    if e.kind == "affine":
        p = e.params_dict
        return p["shift"] + p["scale"] * _ev(e.children[0], x)
    if e.kind == "sum":
        acc = _ev(e.children[0], x).copy()
        for c in e.children[1:]:
            acc += _ev(c, x)
        return acc
    if e.kind == "product":
        acc = _ev(e.children[0], x).copy()
        for c in e.children[1:]:
            acc *= _ev(c, x)
        return acc
    if e.kind == "compose":
        f, g = e.children
        return _ev(f, _clamp_roundoff(_ev(g, x)))
    if e.kind == "power":
        base = _clamp_roundoff(_ev(e.children[0], x))
        return base ** e.alpha
    if e.kind == "combine":
        f, g = e.children
        a = e.alpha
        if e.name == "power_mean":
            fv, gv = _ev(f, x), _ev(g, x)
            return (fv**a + gv**a) ** (1.0 / a)
        if e.name == "arg_power_mean":
            xa = x**a
            return (_ev(f, xa) + _ev(g, xa)) ** (1.0 / a)
        if e.name == "split_power":
            return _ev(f, x**a) * _ev(g, x ** (1.0 - a))
        # geometric
        fv, gv = _ev(f, x), _ev(g, x)
        return fv**a * gv ** (1.0 - a)
    if e.kind == "dualize":
        (f,) = e.children
        if e.name == "reciprocal":
            return 1.0 / _ev(f, x)
        xs = _sub_endpoints(x)
        fv = _ev(f, xs)
        return xs / fv if e.name == "x_over_f" else fv / xs
    if e.kind == "uchiyama":
        h, f, g = e.children
        hv = _ev(h, _clamp_roundoff(_ev(f, x)))
        xs = _sub_endpoints(x)
        ratio = _clamp_roundoff(xs / _ev(f, xs))
        return hv * _ev(g, ratio)
    if e.kind == "spectral":
        (f,) = e.children
        flat = x.ravel()
        vals = np.array([_spectral_value(f, float(h)) for h in flat])
        return vals.reshape(x.shape)
    raise EvaluationError(f"unknown expression kind '{e.kind}'")


def evaluate(e: FunctionExpr, x):
    """Evaluate an expression at x >= 0 (scalars or arrays, elementwise).

    x = 0 is evaluated through the limit branch of each node; a non-finite
    result (no finite limit, overflow, domain violation) raises
    EvaluationError rather than returning NaN or inf.
    """
    arr = np.asarray(x, dtype=float)
    scalar = arr.ndim == 0
    pts = np.atleast_1d(arr).astype(float)
    if pts.size and np.nanmin(pts) < 0.0:
        raise EvaluationError("profile expressions are defined for x >= 0")
    with np.errstate(all="ignore"):
        vals = _ev(e, pts)
    if not np.all(np.isfinite(vals)):
        i = int(np.argmin(np.isfinite(vals)))
        raise EvaluationError(
            f"evaluation of {describe(e)} produced a non-finite value at "
            f"x={pts[i]!r}"
        )
    return float(vals[0]) if scalar else vals.reshape(arr.shape)


def evaluate_complex(e: FunctionExpr, z):
    """Evaluate on the right half plane where the atoms extend analytically."""
    zz = np.asarray(z, dtype=complex)
    scalar = zz.ndim == 0
    pts = np.atleast_1d(zz)
    vals = _ev_complex(e, pts)
    return complex(vals[0]) if scalar else vals.reshape(zz.shape)


def _ev_complex(e: FunctionExpr, z: np.ndarray) -> np.ndarray:
    if e.kind == "atom":
        spec = REGISTRY[e.name]
        if spec.complex_body is None:
            raise EvaluationError(
                f"atom '{e.name}' has no complex continuation implemented"
            )
        return spec.complex_body(z, e.params_dict)
    if e.kind == "affine":
        p = e.params_dict
        return p["shift"] + p["scale"] * _ev_complex(e.children[0], z)
    if e.kind == "sum":
        acc = _ev_complex(e.children[0], z).copy()
        for c in e.children[1:]:
            acc += _ev_complex(c, z)
        return acc
    if e.kind == "product":
        acc = _ev_complex(e.children[0], z).copy()
        for c in e.children[1:]:
            acc *= _ev_complex(c, z)
        return acc
    if e.kind == "power":
        return _ev_complex(e.children[0], z) ** e.alpha
    if e.kind == "compose":
        f, g = e.children
        return _ev_complex(f, _ev_complex(g, z))
    raise EvaluationError(
        f"complex evaluation is unsupported for node kind '{e.kind}'"
    )


# ----------------------------------------------------------------------
# Levy representation

def levy_eval(triple: LevyTriple, x):
    """Evaluate drift*x + constant + integral (1 - e^(-x t)) nu(dt)."""
    arr = np.asarray(x, dtype=float)
    scalar = arr.ndim == 0
    pts = np.atleast_1d(arr).astype(float)
    if pts.size and pts.min() < 0.0:
        raise EvaluationError("Levy representations are evaluated at x >= 0")
    out = triple.drift * pts + triple.constant
    for t, m in triple.atoms:
        out += -m * np.expm1(-pts * t)
    if triple.density is not None:
        _check_levy_integrability(triple.density)
        out += np.array([_levy_integral(triple.density, float(v)) for v in pts])
    return float(out[0]) if scalar else out.reshape(arr.shape)


@contextlib.contextmanager
def _quiet_quadrature():
    # quadrature quality is judged from the returned error estimates, so
    # convergence warnings would only duplicate the raised exceptions
    with np.errstate(all="ignore"), warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        yield


@functools.lru_cache(maxsize=64)
def _check_levy_integrability(density: FunctionExpr) -> None:
    f = lambda t: t / (1.0 + t) * evaluate(density, t)
    with _quiet_quadrature():
        head, eh = quad(f, 0.0, 1.0, epsabs=1e-10, epsrel=1e-10, limit=200)[:2]
        tail, et = quad(f, 1.0, np.inf, epsabs=1e-10, epsrel=1e-10, limit=200)[:2]
    total = head + tail
    if not np.isfinite(total) or (eh + et) > 1e-4 * max(1.0, abs(total)):
        raise ParameterError(
            "Levy density fails the integrability requirement "
            "integral t/(1+t) m(t) dt < inf"
        )


def _levy_integral(density: FunctionExpr, x: float) -> float:
    if x == 0.0:
        return 0.0
    m = lambda t: evaluate(density, t)
    knee = 1.0 / x
    with _quiet_quadrature():
        head = quad(lambda t: -np.expm1(-x * t) * m(t), 0.0, knee,
                    epsabs=1e-12, epsrel=1e-11, limit=300, full_output=True)
        tail = quad(lambda t: -np.expm1(-x * t) * m(t), knee, np.inf,
                    epsabs=1e-12, epsrel=1e-11, limit=300, full_output=True)
    val = head[0] + tail[0]
    err = head[1] + tail[1]
    if not np.isfinite(val) or err > 1e-6 * max(1.0, abs(val)):
        raise QuadratureError(
            f"Levy integral did not converge at x={x:g} "
            f"(estimate {val!r}, error bound {err:g})"
        )
    return val


# ----------------------------------------------------------------------
# spectral node: gamma(h) = drift*h^2 + integral (1 - cos(s h)) mu(ds),
# where mu is the measure whose tail function is the Levy density m

@functools.lru_cache(maxsize=64)
def _resolve_spectral_mu(f: FunctionExpr):
    triple = f.levy
    if triple is None:
        raise ConstructionError(
            "spectral construction requires an expression carrying a Levy triple"
        )
    if triple.atoms:
        raise ConstructionError(
            "spectral construction requires a Levy *density*; atomic measures "
            "have no decreasing density m"
        )
    if triple.density is None:
        return triple.drift, None
    if f.kind == "atom":
        hook = REGISTRY[f.name].spectral_mu
        if hook is not None:
            drift, dens = hook(f.params_dict)
            return drift, dens
    m = triple.density
    h = 1e-6

    def dens(s):
        s = np.asarray(s, dtype=float)
        return (evaluate(m, s * (1.0 - h)) - evaluate(m, s * (1.0 + h))) / (2.0 * s * h)

    return triple.drift, dens


@functools.lru_cache(maxsize=65536)
def _spectral_value(f: FunctionExpr, hdist: float) -> float:
    drift, dens = _resolve_spectral_mu(f)
    w = abs(hdist)
    if w == 0.0:
        return 0.0
    total = drift * w * w
    if dens is None:
        return total
    knee = 1.0 / w
    with _quiet_quadrature():
        near = quad(lambda s: (1.0 - np.cos(s * w)) * dens(s), 0.0, knee,
                    epsabs=1e-11, epsrel=1e-11, limit=300, full_output=True)
        mass = quad(dens, knee, np.inf,
                    epsabs=1e-11, epsrel=1e-11, limit=300, full_output=True)
        osc = quad(dens, knee, np.inf, weight="cos", wvar=w,
                   epsabs=1e-11, limit=300, full_output=True)
    val = near[0] + mass[0] - osc[0]
    err = near[1] + mass[1] + osc[1]
    if not np.isfinite(val) or err > 1e-7 * max(1.0, abs(val)):
        raise QuadratureError(
            f"spectral quadrature did not converge at lag {hdist:g}"
        )
    return total + val


def spectral_node(f: FunctionExpr) -> FunctionExpr:
    """Wrap a drift+density Levy carrier into an evaluable radial profile."""
    return _node("spectral", children=(f,))


# ----------------------------------------------------------------------
# JSON expression DSL

def expr_to_json(e: FunctionExpr) -> dict:
    if e.kind == "atom":
        d: dict = {"atom": e.name, "params": {k: v for k, v in e.params}}
        if e.tags != _complete(atom_tags(REGISTRY[e.name], e.params_dict)):
            d["tags"] = sorted(e.tags)
        return d
    d = {"op": e.kind}
    if e.name:
        d["rule"] = e.name
    if e.alpha is not None:
        d["alpha"] = e.alpha
    if e.kind == "affine":
        d.update(e.params_dict)
    d["args"] = [expr_to_json(c) for c in e.children]
    auto = _complete(_derive(e.kind, e.name, e.alpha,
                             [c.tags for c in e.children], e.params))
    if e.tags != auto:
        d["tags"] = sorted(e.tags)
    return d


def expr_from_json(d: dict) -> FunctionExpr:
    if not isinstance(d, dict):
        raise ParameterError(f"expression JSON must be an object, got {type(d).__name__}")
    if "atom" in d:
        e = catalog(d["atom"], dict(d.get("params", {})))
    elif "op" in d:
        op = d["op"]
        args = [expr_from_json(a) for a in d.get("args", [])]
        if op == "sum":
            e = fsum(*args)
        elif op == "product":
            e = fprod(*args)
        elif op == "compose":
            if len(args) != 2:
                raise ParameterError("compose takes exactly two arguments")
            e = compose(*args)
        elif op == "power":
            if len(args) != 1 or "alpha" not in d:
                raise ParameterError("power takes one argument and an 'alpha'")
            e = fpow(args[0], d["alpha"])
        elif op == "combine":
            if len(args) != 2:
                raise ParameterError("combine takes exactly two arguments")
            e = combine(args[0], args[1], d.get("rule", ""), d.get("alpha", math.nan))
        elif op == "dualize":
            if len(args) != 1:
                raise ParameterError("dualize takes exactly one argument")
            e = dualize(args[0], d.get("rule", ""))
        elif op == "uchiyama":
            if len(args) != 3:
                raise ParameterError("uchiyama takes exactly three arguments")
            e = uchiyama(*args)
        elif op == "spectral":
            if len(args) != 1:
                raise ParameterError("spectral takes exactly one argument")
            e = spectral_node(args[0])
        elif op == "affine":
            if len(args) != 1:
                raise ParameterError("affine takes exactly one argument")
            e = affine(args[0], shift=d.get("shift", 0.0), scale=d.get("scale", 1.0))
        else:
            raise ParameterError(f"unknown expression op '{op}'")
    else:
        raise ParameterError("expression JSON needs an 'atom' or an 'op' key")
    if "tags" in d:
        # persisted certificates are trusted on load
        e = replace(e, tags=frozenset(d["tags"]))
    return e
