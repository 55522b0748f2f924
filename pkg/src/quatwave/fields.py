"""Biquaternion-valued spacetime fields with analytic or finite-difference derivatives.

A field maps a point ``(t, x, y, z)`` to a :class:`Biquaternion`.  Fields built
from sympy expressions carry exact gradients and Hessians; plain callables fall
back to central differences.  Every field records which backend produced its
derivatives so that reports can tell discretization error from formula error.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import sympy as sp

from .algebra import ONE, ZERO, Biquaternion, I, J, K, conj_herm

__all__ = [
    "Point",
    "AnalyticField",
    "ANALYTIC",
    "FD",
    "FD_STEP",
    "FD_STEP_SECOND",
    "COULOMB_EXCLUSION",
    "from_sympy",
    "from_potential",
    "constant_field",
    "check_four_vector",
    "UNITS",
    "partials",
    "d_plain",
    "d_conj",
    "nabla",
    "plane_wave_em",
    "constant_B",
    "coulomb",
    "pure_gauge",
    "custom_polynomial",
    "FAMILIES",
    "load_family",
    "load_config",
    "T",
    "X",
    "Y",
    "Z",
]

Point = Sequence[float]

ANALYTIC = "analytic"
FD = "fd"
FD_STEP = 1e-4
# second derivatives from values need a larger step to keep roundoff down
FD_STEP_SECOND = 1e-3
COULOMB_EXCLUSION = 1e-3

T, X, Y, Z = sp.symbols("t x y z", real=True)
COORDS = (T, X, Y, Z)
_COORD_NAMES = {"t": T, "x": X, "y": Y, "z": Z}

# spatial unit quaternions I, J, K indexed by 1..3
UNITS = (ONE, I, J, K)


def _finite(q: Biquaternion) -> Biquaternion:
    for c in q:
        if not (math.isfinite(c.real) and math.isfinite(c.imag)):
            raise FloatingPointError("field evaluation produced a non-finite value")
    return q


def _shift(x: Point, mu: int, h: float) -> tuple[float, ...]:
    out = list(x)
    out[mu] += h
    return tuple(out)


@dataclass
class AnalyticField:
    """Biquaternion field with optional analytic first and second derivatives.

    ``grad(x)`` must return 4 biquaternions, ``hess(x)`` a 4x4 nested list.
    """

    value: Callable[[Point], Biquaternion]
    grad: Optional[Callable[[Point], Sequence[Biquaternion]]] = None
    hess: Optional[Callable[[Point], Sequence[Sequence[Biquaternion]]]] = None
    gauge_potential: bool = False
    name: str = "field"
    h: float = FD_STEP
    h2: float = FD_STEP_SECOND
    meta: dict = field(default_factory=dict)

    @property
    def backend(self) -> str:
        return ANALYTIC if self.grad is not None else FD

    def with_backend(self, backend: str) -> AnalyticField:
        if backend == ANALYTIC:
            if self.grad is None:
                raise ValueError(f"field {self.name!r} has no analytic derivatives")
            return self
        if backend != FD:
            raise ValueError(f"unknown backend {backend!r}")
        return AnalyticField(self.value, None, None, self.gauge_potential,
                             self.name, self.h, self.h2, dict(self.meta))

    def __call__(self, x: Point) -> Biquaternion:
        val = _finite(self.value(tuple(float(c) for c in x)))
        if self.gauge_potential:
            check_four_vector(val, x)
        return val

    def partial(self, x: Point, mu: int) -> Biquaternion:
        if self.grad is not None:
            return _finite(self.grad(tuple(x))[mu])
        h = self.h
        return (self.value(_shift(x, mu, h)) - self.value(_shift(x, mu, -h))) / (2 * h)

    def gradient(self, x: Point) -> list[Biquaternion]:
        if self.grad is not None:
            return [_finite(g) for g in self.grad(tuple(x))]
        return [_finite(self.partial(x, mu)) for mu in range(4)]

    def _d4(self, f: Callable[[Point], Biquaternion], x: Point, mu: int) -> Biquaternion:
        # fourth-order central stencil
        h = self.h2
        return (f(_shift(x, mu, -2 * h)) - 8 * f(_shift(x, mu, -h))
                + 8 * f(_shift(x, mu, h)) - f(_shift(x, mu, 2 * h))) / (12 * h)

    def second(self, x: Point, mu: int, nu: int) -> Biquaternion:
        if self.hess is not None:
            return _finite(self.hess(tuple(x))[mu][nu])
        if self.grad is not None:
            g = self.grad
            return _finite(self._d4(lambda p: g(p)[nu], x, mu))
        inner = lambda p: self._d4(self.value, p, nu)
        return _finite(self._d4(inner, x, mu))


def constant_field(q: Biquaternion, gauge_potential: bool = False) -> AnalyticField:
    zeros = [ZERO] * 4
    return AnalyticField(lambda x: q, lambda x: zeros, lambda x: [zeros] * 4,
                         gauge_potential, name="constant")


def check_four_vector(q: Biquaternion, x: Point = (), tol: float = 1e-9) -> None:
    if (conj_herm(q) - q).magnitude() > tol * max(1.0, q.magnitude()):
        raise ValueError(f"gauge potential is not a hermitean four-vector at {tuple(x)}: {q}")


def from_sympy(components: Sequence, name: str = "sympy",
               gauge_potential: bool = False, meta: Optional[dict] = None) -> AnalyticField:
    """Field from four sympy expressions in ``t, x, y, z`` (coefficients of 1, I, J, K)."""
    exprs = [sp.sympify(c, locals=_COORD_NAMES) for c in components]
    grads = [[sp.diff(e, v) for e in exprs] for v in COORDS]
    hesses = [[[sp.diff(e, v, u) for e in exprs] for u in COORDS] for v in COORDS]
    f_val = sp.lambdify(COORDS, exprs, modules="numpy")
    f_grad = sp.lambdify(COORDS, grads, modules="numpy")
    f_hess = sp.lambdify(COORDS, hesses, modules="numpy")

    def value(x):
        return Biquaternion(*f_val(*x))

    def grad(x):
        return [Biquaternion(*row) for row in f_grad(*x)]

    def hess(x):
        return [[Biquaternion(*c) for c in row] for row in f_hess(*x)]

    return AnalyticField(value, grad, hess, gauge_potential, name, meta=dict(meta or {}))


def from_potential(A0, Avec: Sequence, name: str = "potential",
                   meta: Optional[dict] = None) -> AnalyticField:
    """Gauge potential ``A0 + i (Ax I + Ay J + Az K)`` from real sympy expressions."""
    comps = [sp.sympify(A0, locals=_COORD_NAMES)] + [sp.I * sp.sympify(a, locals=_COORD_NAMES) for a in Avec]
    return from_sympy(comps, name=name, gauge_potential=True, meta=meta)


# -- spacetime derivative operators ------------------------------------------

def partials(f: AnalyticField, x: Point) -> list[Biquaternion]:
    return f.gradient(x)


def d_plain(f: AnalyticField, x: Point) -> Biquaternion:
    """``del f = (d_t + i grad) f`` with the units multiplying on the left."""
    g = f.gradient(x)
    return g[0] + 1j * (I * g[1] + J * g[2] + K * g[3])


def d_conj(f: AnalyticField, x: Point) -> Biquaternion:
    """``del~ f = (d_t - i grad) f``."""
    g = f.gradient(x)
    return g[0] - 1j * (I * g[1] + J * g[2] + K * g[3])


def nabla(f: AnalyticField, x: Point) -> Biquaternion:
    """``sum_k e_k d_k f`` (left multiplication by the units)."""
    g = f.gradient(x)
    return I * g[1] + J * g[2] + K * g[3]


# -- built-in potential families ---------------------------------------------

def plane_wave_em(k: Sequence[float] = (0.0, 0.0, 1.0),
                  polarization: Sequence[float] = (1.0, 0.0, 0.0),
                  amplitude: float = 1.0, phase: float = 0.0) -> AnalyticField:
    """Vacuum wave ``A = a eps cos(k.x - |k| t + phase)`` with ``eps`` made transverse."""
    kv = [float(c) for c in k]
    kk = sum(c * c for c in kv)
    if kk == 0:
        raise ValueError("plane_wave_em needs a nonzero wave vector")
    eps = [float(c) for c in polarization]
    proj = sum(a * b for a, b in zip(eps, kv)) / kk
    eps = [e - proj * c for e, c in zip(eps, kv)]
    norm = math.sqrt(sum(e * e for e in eps))
    if norm == 0:
        raise ValueError("polarization is parallel to the wave vector")
    eps = [e / norm for e in eps]
    omega = math.sqrt(kk)
    arg = kv[0] * X + kv[1] * Y + kv[2] * Z - omega * T + phase
    wave = amplitude * sp.cos(arg)
    meta = {"family": "plane_wave_em", "k": kv, "omega": omega, "lorentz_gauge": True}
    return from_potential(0, [e * wave for e in eps], name="plane_wave_em", meta=meta)


def constant_B(B: Sequence[float] = (0.0, 0.0, 1.0)) -> AnalyticField:
    """Symmetric gauge ``A = (B x r)/2``, ``A0 = 0``."""
    b = [float(c) for c in B]
    r = (X, Y, Z)
    cross = (b[1] * r[2] - b[2] * r[1], b[2] * r[0] - b[0] * r[2], b[0] * r[1] - b[1] * r[0])
    return from_potential(0, [c / 2 for c in cross], name="constant_B",
                          meta={"family": "constant_B", "B": b, "lorentz_gauge": True})


def coulomb(charge: float = 1.0, center: Sequence[float] = (0.0, 0.0, 0.0),
            epsilon: float = COULOMB_EXCLUSION) -> AnalyticField:
    """``A0 = q / r``; evaluation inside the exclusion radius is refused."""
    c = [float(v) for v in center]
    r = sp.sqrt((X - c[0]) ** 2 + (Y - c[1]) ** 2 + (Z - c[2]) ** 2)
    fld = from_potential(charge / r, [0, 0, 0], name="coulomb",
                         meta={"family": "coulomb", "charge": charge, "lorentz_gauge": True})
    inner_value, inner_grad, inner_hess = fld.value, fld.grad, fld.hess

    def guard(x):
        d = math.sqrt(sum((x[i + 1] - c[i]) ** 2 for i in range(3)))
        if d < epsilon:
            raise ValueError(f"point {tuple(x)} is inside the Coulomb exclusion radius {epsilon}")

    def value(x):
        guard(x)
        return inner_value(x)

    def grad(x):
        guard(x)
        return inner_grad(x)

    def hess(x):
        guard(x)
        return inner_hess(x)

    fld.value, fld.grad, fld.hess = value, grad, hess
    return fld


def pure_gauge(amplitude: float = 1.0, k: Sequence[float] = (1.0, 0.0, 0.0),
               omega: float = 0.5) -> AnalyticField:
    """``A0 = d_t phi``, ``A = -grad phi`` for ``phi = a sin(k.x - omega t)``."""
    kv = [float(c) for c in k]
    phi = amplitude * sp.sin(kv[0] * X + kv[1] * Y + kv[2] * Z - omega * T)
    fld = from_potential(sp.diff(phi, T), [-sp.diff(phi, v) for v in (X, Y, Z)],
                         name="pure_gauge", meta={"family": "pure_gauge"})
    fld.meta["phi"] = sp.lambdify(COORDS, phi, modules="numpy")
    return fld


def custom_polynomial(A0="0", Ax="0", Ay="0", Az="0") -> AnalyticField:
    """Potential from expression strings in ``t, x, y, z``."""
    parsed = []
    for src in (A0, Ax, Ay, Az):
        expr = sp.sympify(src, locals=_COORD_NAMES)
        extra = expr.free_symbols - set(COORDS)
        if extra:
            raise ValueError(f"unknown symbols in potential: {sorted(map(str, extra))}")
        parsed.append(expr)
    return from_potential(parsed[0], parsed[1:], name="custom_polynomial",
                          meta={"family": "custom_polynomial"})


FAMILIES = {
    "plane_wave_em": plane_wave_em,
    "constant_B": constant_B,
    "coulomb": coulomb,
    "pure_gauge": pure_gauge,
    "custom_polynomial": custom_polynomial,
}


def load_family(spec: dict) -> AnalyticField:
    """Build a potential from ``{"family": name, "params": {...}}``."""
    if "family" not in spec:
        raise ValueError("field configuration needs a 'family' key")
    name = spec["family"]
    if name not in FAMILIES:
        raise ValueError(f"unknown field family {name!r}; choose from {sorted(FAMILIES)}")
    params = spec.get("params", {})
    try:
        return FAMILIES[name](**params)
    except TypeError as exc:
        raise ValueError(f"bad parameters for {name}: {exc}") from exc


def load_config(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)
