"""Quaternionic Dirac system, plane waves, the Pauli reduction and the current.

Conventions (natural units, charge absorbed into ``A``):

* ``del = d_t + i grad`` and ``del~ = d_t - i grad``, units multiplying on the left;
* the long derivatives are ``D = del - i A*`` (left-handed) and
  ``D~ = del~ - i A`` (right-handed) for a hermitean potential ``A = A0 + i A``;
* the Dirac residuals are ``i D psi_L - m psi_R J`` and ``i D~ psi_R + m psi_L J``.

Written out, ``i D psi_L = (i d_t + A0) psi_L - (grad + i A) psi_L`` and
``i D~ psi_R = (i d_t + A0) psi_R + (grad + i A) psi_R`` where
``(grad + i A) f = sum_k e_k (d_k f + i A_k f)``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .algebra import ZERO, Biquaternion, FourVector, I, J, K, conj_complex, conj_herm, conj_quat
from .fields import AnalyticField, Point, d_conj, d_plain
from .spinor import LEFT, RIGHT, ChiralPair, StandardPair, extract_components, make_left

__all__ = [
    "potential_parts",
    "long_derivative",
    "dirac_residuals",
    "dirac_residuals_split",
    "standard_fields",
    "standard_rep_residuals",
    "PlaneWaveSpec",
    "solve_amplitudes",
    "plane_wave_field",
    "pauli_apply",
    "quat_square_apply",
    "scalar_square_apply",
    "magnetic_field",
    "landau_ground_state",
    "pauli_constant_B_matrix",
    "pauli_matrix_oracle",
    "NonRelReport",
    "nonrel_limit_order",
    "current",
    "current_standard",
    "current_components",
    "current_field",
    "divergence",
]

UNITS = (I, J, K)


def potential_parts(A: AnalyticField, x: Point) -> tuple[float, tuple[float, float, float]]:
    """(A0, (A1, A2, A3)) read from ``A0 + i (A1 I + A2 J + A3 K)``."""
    a = A(x)
    return a.w.real, (a.x.imag, a.y.imag, a.z.imag)


def long_derivative(psi: AnalyticField, A: AnalyticField, x: Point, chirality: str) -> Biquaternion:
    a = A(x)
    val = psi(x)
    if chirality == LEFT:
        return d_plain(psi, x) - 1j * (conj_complex(a) * val)
    if chirality == RIGHT:
        return d_conj(psi, x) - 1j * (a * val)
    raise ValueError(f"chirality must be 'L' or 'R', got {chirality!r}")


def dirac_residuals(pair: Sequence[AnalyticField], A: AnalyticField, m: float,
                    x: Point) -> tuple[Biquaternion, Biquaternion]:
    psi_l, psi_r = pair
    left = 1j * long_derivative(psi_l, A, x, LEFT) - m * (psi_r(x) * J)
    right = 1j * long_derivative(psi_r, A, x, RIGHT) + m * (psi_l(x) * J)
    return left, right


def _covariant_nabla(grad: Sequence[Biquaternion], val: Biquaternion,
                     a_vec: Sequence[float]) -> Biquaternion:
    """``sum_k e_k (d_k f + i A_k f)`` from precomputed derivatives."""
    out = ZERO
    for k in range(3):
        out = out + UNITS[k] * (grad[k + 1] + 1j * a_vec[k] * val)
    return out


def _time_part(grad: Sequence[Biquaternion], val: Biquaternion, a0: float) -> Biquaternion:
    return 1j * grad[0] + a0 * val


def dirac_residuals_split(pair: Sequence[AnalyticField], A: AnalyticField, m: float,
                          x: Point) -> tuple[Biquaternion, Biquaternion]:
    """Same residuals assembled from time part, covariant gradient and mass term."""
    psi_l, psi_r = pair
    a0, a_vec = potential_parts(A, x)
    vl, vr = psi_l(x), psi_r(x)
    gl, gr = psi_l.gradient(x), psi_r.gradient(x)
    left = _time_part(gl, vl, a0) - _covariant_nabla(gl, vl, a_vec) - m * (vr * J)
    right = _time_part(gr, vr, a0) + _covariant_nabla(gr, vr, a_vec) + m * (vl * J)
    return left, right


def standard_fields(pair: Sequence[AnalyticField]) -> tuple[AnalyticField, AnalyticField]:
    """zeta and eta fields built from (psi_L, psi_R) fields."""
    psi_l, psi_r = pair
    s = 1 / math.sqrt(2)

    def combo(sign):
        val = lambda x: s * (psi_l(x) + sign * (psi_r(x) * J))
        grad = None
        if psi_l.grad is not None and psi_r.grad is not None:
            grad = lambda x: [s * (a + sign * (b * J))
                              for a, b in zip(psi_l.gradient(x), psi_r.gradient(x))]
        return AnalyticField(val, grad, name="zeta" if sign > 0 else "eta")

    return combo(1), combo(-1)


def standard_rep_residuals(std: Sequence[AnalyticField], A: AnalyticField, m: float,
                           x: Point, mass_phase: bool = False) -> tuple[Biquaternion, Biquaternion]:
    """Residuals of the standard-representation pair.

    plus  = (i d_t + A0) zeta - (grad + i A) eta - m zeta
    minus = (i d_t + A0) eta  - (grad + i A) zeta + m eta

    With ``mass_phase`` the fields are understood as the envelopes left after
    factoring out ``exp(-i m t)``: the mass term of ``plus`` cancels and that of
    ``minus`` doubles.
    """
    zeta, eta = std
    a0, a_vec = potential_parts(A, x)
    vz, ve = zeta(x), eta(x)
    gz, ge = zeta.gradient(x), eta.gradient(x)
    mz, me = (0.0, 2 * m) if mass_phase else (-m, m)
    plus = _time_part(gz, vz, a0) - _covariant_nabla(ge, ve, a_vec) + mz * vz
    minus = _time_part(ge, ve, a0) - _covariant_nabla(gz, vz, a_vec) + me * ve
    return plus, minus


# -- plane waves ----------------------------------------------------------------

@dataclass(frozen=True)
class PlaneWaveSpec:
    """``psi = amplitude * exp(-i (E t - p.x))`` for both chiralities."""

    E: float
    p: tuple[float, float, float]
    m: float
    amplitudes: ChiralPair

    def on_shell(self, tol: float = 1e-10) -> bool:
        return abs(self.E ** 2 - sum(c * c for c in self.p) - self.m ** 2) <= tol * max(1.0, self.E ** 2)

    def fields(self) -> tuple[AnalyticField, AnalyticField]:
        return (plane_wave_field(self.E, self.p, self.amplitudes.psi_l),
                plane_wave_field(self.E, self.p, self.amplitudes.psi_r))


def plane_wave_field(E: float, p: Sequence[float], amp: Biquaternion) -> AnalyticField:
    k = (-1j * E, 1j * p[0], 1j * p[1], 1j * p[2])

    def phase(x):
        return cmath.exp(-1j * (E * x[0] - p[0] * x[1] - p[1] * x[2] - p[2] * x[3]))

    def value(x):
        return phase(x) * amp

    def grad(x):
        v = value(x)
        return [k[mu] * v for mu in range(4)]

    def hess(x):
        v = value(x)
        return [[k[mu] * k[nu] * v for nu in range(4)] for mu in range(4)]

    return AnalyticField(value, grad, hess, name="plane_wave")


def solve_amplitudes(E: float, p: Sequence[float], m: float,
                     xi_l: complex = 1.0, chi_l: complex = 0.0) -> ChiralPair:
    """psi_R from the left equation: psi_R = -(E - i p) psi_L J / m."""
    if m == 0:
        raise ValueError("the left equation does not fix psi_R for m = 0")
    psi_l = make_left(xi_l, chi_l)
    pq = Biquaternion.vector(p)
    psi_r = -((E - 1j * pq) * psi_l * J) / m
    return ChiralPair(psi_l, psi_r)


# -- Pauli reduction --------------------------------------------------------------

def _potential_derivs(A: AnalyticField, x: Point):
    """A_k and d_j A_k (spatial indices 0..2)."""
    a0, a_vec = potential_parts(A, x)
    g = A.gradient(x)
    dA = [[g[j + 1].vec[k].imag for k in range(3)] for j in range(3)]
    return a0, a_vec, dA


def magnetic_field(A: AnalyticField, x: Point) -> tuple[float, float, float]:
    _, _, dA = _potential_derivs(A, x)
    return (dA[1][2] - dA[2][1], dA[2][0] - dA[0][2], dA[0][1] - dA[1][0])


def _cov_second(psi: AnalyticField, A: AnalyticField, x: Point):
    """X[j][k] = (d_j + i A_j)(d_k + i A_k) psi."""
    _, a, dA = _potential_derivs(A, x)
    v = psi(x)
    g = psi.gradient(x)
    X = [[None] * 3 for _ in range(3)]
    for j in range(3):
        for k in range(3):
            X[j][k] = (psi.second(x, j + 1, k + 1) + 1j * dA[j][k] * v
                       + 1j * a[k] * g[j + 1] + 1j * a[j] * g[k + 1] - a[j] * a[k] * v)
    return X


def scalar_square_apply(psi: AnalyticField, A: AnalyticField, x: Point) -> Biquaternion:
    """``{grad + i A}^2 psi = sum_k (d_k + i A_k)^2 psi``."""
    X = _cov_second(psi, A, x)
    return X[0][0] + X[1][1] + X[2][2]


def quat_square_apply(psi: AnalyticField, A: AnalyticField, x: Point) -> Biquaternion:
    """``(grad + i A)(grad + i A) psi`` with the quaternion units multiplied out."""
    X = _cov_second(psi, A, x)
    out = ZERO
    for j in range(3):
        for k in range(3):
            out = out + UNITS[j] * UNITS[k] * X[j][k]
    return out


def pauli_apply(psi: AnalyticField, A: AnalyticField, x: Point, m: float = 1.0) -> Biquaternion:
    """``H psi = -(1/2m) {grad + i A}^2 psi + (i B / 2m) psi - A0 psi``."""
    a0, _ = potential_parts(A, x)
    B = Biquaternion.vector(magnetic_field(A, x))
    v = psi(x)
    return (-scalar_square_apply(psi, A, x) + 1j * (B * v)) / (2 * m) - a0 * v


def landau_ground_state(B: Sequence[float], spinor: Biquaternion) -> AnalyticField:
    """Lowest Landau orbital ``exp(-|B| r_perp^2 / 4)`` times a constant spinor.

    Matches the symmetric gauge of :func:`quatwave.fields.constant_B`.
    """
    import sympy as sp
    from .fields import X, Y, Z, from_sympy

    b = [float(c) for c in B]
    bn = math.sqrt(sum(c * c for c in b))
    if bn == 0:
        raise ValueError("Landau orbital needs a nonzero field")
    r = (X, Y, Z)
    along = sum(bi * ri for bi, ri in zip(b, r)) / bn
    rperp2 = X ** 2 + Y ** 2 + Z ** 2 - along ** 2
    phi = sp.exp(-bn * rperp2 / 4)
    comps = [phi * sp.sympify(complex(c)) for c in spinor]
    return from_sympy(comps, name="landau")


def pauli_constant_B_matrix(B: Sequence[float], m: float = 1.0,
                            x: Point = (0.0, 0.3, -0.2, 0.1)) -> np.ndarray:
    """2x2 matrix of the quaternionic Pauli operator on the spin basis {P_L, J P_L}."""
    from .fields import constant_B as constant_B_field

    A = constant_B_field(B)
    basis = (make_left(1, 0), make_left(0, 1))
    Mat = np.zeros((2, 2), dtype=complex)
    for col, spin in enumerate(basis):
        psi = landau_ground_state(B, spin)
        scale = psi(x).magnitude() / spin.magnitude()
        h = pauli_apply(psi, A, x, m) / scale
        xi, chi = extract_components(h, LEFT, tol=1e-9)
        Mat[:, col] = (xi, chi)
    return Mat


def pauli_matrix_oracle(B: Sequence[float], m: float = 1.0) -> np.ndarray:
    """Lowest-Landau-level energy times identity plus the spin term sigma.B / 2m."""
    from .matrix import SIGMA

    bn = math.sqrt(sum(c * c for c in B))
    H = (bn / (2 * m)) * np.eye(2, dtype=complex)
    for k in range(3):
        H = H + B[k] * SIGMA[k] / (2 * m)
    return H


# -- large-mass limit ----------------------------------------------------------------

@dataclass
class NonRelReport:
    masses: list
    first_residual: list
    second_residual: list
    pauli_gap: list
    psi_minus: list
    order: float

    def to_json(self) -> dict:
        return {"masses": self.masses, "first_residual": self.first_residual,
                "second_residual": self.second_residual, "pauli_gap": self.pauli_gap,
                "psi_minus": self.psi_minus, "order": self.order}


def _lower_component(psi: AnalyticField, A: AnalyticField, x: Point, m: float):
    """psi_minus = (grad + i A) psi / 2m and its time derivative."""
    _, a, dA = _potential_derivs(A, x)
    v, g = psi(x), psi.gradient(x)
    minus = _covariant_nabla(g, v, a) / (2 * m)
    dtA = [A.gradient(x)[0].vec[k].imag for k in range(3)]
    dt = ZERO
    for k in range(3):
        dt = dt + UNITS[k] * (psi.second(x, 0, k + 1) + 1j * dtA[k] * v + 1j * a[k] * g[0])
    return minus, dt / (2 * m)


def nonrel_limit_order(psi_plus: AnalyticField, A: AnalyticField, masses: Sequence[float],
                       points: Optional[Sequence[Point]] = None) -> NonRelReport:
    """Substitute psi_minus = (grad + i A) psi_plus / 2m into the standard system.

    The first equation then reduces to the Pauli equation exactly and the second
    leaves ``(i d_t + A0) psi_minus``, which decays like 1/m.  ``order`` is minus
    the log-log slope of that residual against m.
    """
    masses = [float(m) for m in masses]
    if len(masses) < 2 or any(b <= a for a, b in zip(masses, masses[1:])):
        raise ValueError("mass sequence must be strictly increasing with at least two entries")
    if points is None:
        points = [(0.1, 0.2, -0.3, 0.4), (0.0, -0.5, 0.1, 0.2), (0.3, 0.4, 0.4, -0.1)]
    first, second, gap, lower = [], [], [], []
    for m in masses:
        r1 = r2 = rp = lo = 0.0
        for x in points:
            a0, a = potential_parts(A, x)
            v, g = psi_plus(x), psi_plus.gradient(x)
            minus, dt_minus = _lower_component(psi_plus, A, x, m)
            res1 = _time_part(g, v, a0) - quat_square_apply(psi_plus, A, x) / (2 * m)
            res2 = 1j * dt_minus + a0 * minus
            pauli = 1j * g[0] - pauli_apply(psi_plus, A, x, m)
            r1 = max(r1, res1.magnitude())
            r2 = max(r2, res2.magnitude())
            rp = max(rp, (res1 - pauli).magnitude())
            lo = max(lo, minus.magnitude())
        first.append(r1)
        second.append(r2)
        gap.append(rp)
        lower.append(lo)
    slope = np.polyfit(np.log(masses), np.log(np.maximum(second, 1e-300)), 1)[0]
    return NonRelReport(masses, first, second, gap, lower, float(-slope))


# -- current ------------------------------------------------------------------------

def current(pair: ChiralPair) -> FourVector:
    """``j = 2 (psi_L psi_L^dag + psi_R* psi_R~)`` for commuting components.

    With Grassmann components the same quantity is written with an overall -2
    and a relative minus sign; both reorderings are absorbed here so that
    ``j^0 >= 0``.
    """
    pl, pr = pair.psi_l, pair.psi_r
    j = 2 * (pl * conj_herm(pl) + conj_complex(pr) * conj_quat(pr))
    return FourVector(j)


def current_standard(std: StandardPair) -> FourVector:
    z, e = std.zeta, std.eta
    real = z * conj_herm(z) + e * conj_herm(e)
    real = real + conj_complex(real)
    vec = z * conj_herm(e) + e * conj_herm(z)
    vec = vec - conj_complex(vec)
    return FourVector(real + vec)


def current_components(xi_l: complex, chi_l: complex, xi_r: complex, chi_r: complex) -> Biquaternion:
    """The explicit component expansion of the current."""
    c = lambda a: a.conjugate()
    j0 = (c(xi_l) * xi_l + c(chi_l) * chi_l) + (c(xi_r) * xi_r + c(chi_r) * chi_r)
    j1 = (c(xi_l) * chi_l + c(chi_l) * xi_l) - (c(xi_r) * chi_r + c(chi_r) * xi_r)
    j2 = 1j * (c(chi_l) * xi_l - c(xi_l) * chi_l) - 1j * (c(chi_r) * xi_r - c(xi_r) * chi_r)
    j3 = (c(xi_l) * xi_l - c(chi_l) * chi_l) - (c(xi_r) * xi_r - c(chi_r) * chi_r)
    return Biquaternion(j0, 1j * j1, 1j * j2, 1j * j3)


def current_field(pair: Sequence[AnalyticField]) -> AnalyticField:
    """Current of a spinor-field pair, differentiated by product rule when possible."""
    psi_l, psi_r = pair

    def value(x):
        pl, pr = psi_l(x), psi_r(x)
        return 2 * (pl * conj_herm(pl) + conj_complex(pr) * conj_quat(pr))

    def grad(x):
        pl, pr = psi_l(x), psi_r(x)
        out = []
        for dl, dr in zip(psi_l.gradient(x), psi_r.gradient(x)):
            out.append(2 * (dl * conj_herm(pl) + pl * conj_herm(dl)
                            + conj_complex(dr) * conj_quat(pr) + conj_complex(pr) * conj_quat(dr)))
        return out

    return AnalyticField(value, grad, name="current")


def divergence(j: AnalyticField, x: Point) -> complex:
    """Scalar part of ``del j``, i.e. ``d_mu j^mu``."""
    return d_plain(j, x).w


def pair_from_components(xi_l, chi_l, xi_r, chi_r) -> ChiralPair:
    return ChiralPair.from_components(xi_l, chi_l, xi_r, chi_r)
