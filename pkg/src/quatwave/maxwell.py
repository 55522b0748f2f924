"""Field strength and the quaternionic Maxwell equation.

For a hermitean potential ``A = A0 + i A`` the field strength is

    Phi = -(del A - A~ del~) / 2 = B + i E

where ``A~ del~`` differentiates ``A~`` and multiplies the units on the right.
In the Lorentz gauge this reduces to ``Phi = -del A``.  The Maxwell equation
reads ``del~ Phi = j``; its eight real components are

    scalar, real       -div E + rho          (Gauss)
    scalar, imaginary   div B                (no monopoles)
    vector, real        d_t B + curl E       (Faraday)
    vector, imaginary   d_t E - curl B + J   (Ampere-Maxwell)

with the source written as ``j = -(rho + i J)``.
"""
from __future__ import annotations

import warnings
from typing import Union

from .algebra import ONE, ZERO, Biquaternion, FieldStrength, I, J, K, conj_quat
from .fields import AnalyticField, Point, check_four_vector

__all__ = [
    "GENERAL",
    "LORENTZ",
    "LABELS",
    "field_strength",
    "field_strength_derivs",
    "maxwell_residual",
    "expand_to_real",
    "source_from_classical",
    "classical_fields",
    "classical_sources",
    "lorentz_condition",
]

GENERAL, LORENTZ = "general", "lorentz"
LABELS = ("gauss", "no_monopole", "faraday_x", "faraday_y", "faraday_z",
          "ampere_x", "ampere_y", "ampere_z")

U = (ONE, 1j * I, 1j * J, 1j * K)
U_TILDE = (ONE, -1j * I, -1j * J, -1j * K)


def _check_potential(A: AnalyticField, x: Point) -> None:
    check_four_vector(A.value(tuple(x)), x)


def _phi_from_grad(g, gauge: str) -> Biquaternion:
    d_a = ZERO
    for u, gm in zip(U, g):
        d_a = d_a + u * gm
    if gauge == LORENTZ:
        return -d_a
    a_d = ZERO
    for u, gm in zip(U_TILDE, g):
        a_d = a_d + conj_quat(gm) * u
    return -(d_a - a_d) / 2


def lorentz_condition(A: AnalyticField, x: Point) -> float:
    """``d_mu A^mu``."""
    g = A.gradient(x)
    return g[0].w.real + sum(g[k + 1].vec[k].imag for k in range(3))


def field_strength(A: AnalyticField, x: Point, gauge: str = GENERAL,
                   tol: float = 1e-9) -> FieldStrength:
    _check_potential(A, x)
    if gauge not in (GENERAL, LORENTZ):
        raise ValueError(f"gauge must be 'general' or 'lorentz', got {gauge!r}")
    phi = _phi_from_grad(A.gradient(x), gauge)
    if gauge == LORENTZ:
        div = lorentz_condition(A, x)
        if abs(div) > tol:
            warnings.warn(f"potential violates the Lorentz condition at {tuple(x)} "
                          f"(d.A = {div:.3g}); the Lorentz-gauge field strength is wrong here",
                          RuntimeWarning, stacklevel=2)
        phi = Biquaternion(0, *phi.vec)
    return FieldStrength(phi)


def field_strength_derivs(A: AnalyticField, x: Point, gauge: str = GENERAL) -> list[Biquaternion]:
    """``d_nu Phi`` for nu = 0..3 from second derivatives of ``A``."""
    out = []
    for nu in range(4):
        g = [A.second(x, nu, mu) for mu in range(4)]
        phi = _phi_from_grad(g, gauge)
        out.append(Biquaternion(0, *phi.vec) if gauge == LORENTZ else phi)
    return out


Source = Union[AnalyticField, Biquaternion, None]


def maxwell_residual(A: AnalyticField, j: Source, x: Point, gauge: str = GENERAL) -> Biquaternion:
    """``del~ Phi - j`` at ``x``; ``j=None`` means vacuum."""
    _check_potential(A, x)
    dphi = field_strength_derivs(A, x, gauge)
    out = ZERO
    for u, d in zip(U_TILDE, dphi):
        out = out + u * d
    if j is None:
        return out
    jx = j if isinstance(j, Biquaternion) else j(x)
    return out - jx


def expand_to_real(res: Biquaternion) -> dict[str, float]:
    vals = (res.w.real, res.w.imag,
            res.x.real, res.y.real, res.z.real,
            res.x.imag, res.y.imag, res.z.imag)
    return dict(zip(LABELS, vals))


def source_from_classical(rho: float, J_vec) -> Biquaternion:
    return Biquaternion(-rho, -1j * J_vec[0], -1j * J_vec[1], -1j * J_vec[2])


# -- component-level oracle ----------------------------------------------------

def _parts(q: Biquaternion) -> tuple[float, list[float]]:
    return q.w.real, [c.imag for c in q.vec]


def classical_fields(A: AnalyticField, x: Point) -> tuple[list[float], list[float]]:
    """E = -grad A0 - d_t A and B = curl A, from component partials only."""
    g = [_parts(q) for q in A.gradient(x)]
    dA0 = [g[k + 1][0] for k in range(3)]
    dtA = g[0][1]
    d = [[g[j + 1][1][k] for k in range(3)] for j in range(3)]
    E = [-dA0[k] - dtA[k] for k in range(3)]
    B = [d[1][2] - d[2][1], d[2][0] - d[0][2], d[0][1] - d[1][0]]
    return E, B


def classical_sources(A: AnalyticField, x: Point) -> dict:
    """rho = div E, J = curl B - d_t E, plus div B and d_t B + curl E."""
    h = [[_parts(A.second(x, mu, nu)) for nu in range(4)] for mu in range(4)]

    def dE(mu, k):  # d_mu E_k
        return -h[mu][k + 1][0] - h[mu][0][1][k]

    def dB(mu, l):  # d_mu B_l
        a, b = (l + 1) % 3, (l + 2) % 3
        return h[mu][a + 1][1][b] - h[mu][b + 1][1][a]

    rho = sum(dE(k + 1, k) for k in range(3))
    div_b = sum(dB(k + 1, k) for k in range(3))
    curl = lambda f, l: f((l + 1) % 3 + 1, (l + 2) % 3) - f((l + 2) % 3 + 1, (l + 1) % 3)
    J_vec = [curl(dB, l) - dE(0, l) for l in range(3)]
    faraday = [dB(0, l) + curl(dE, l) for l in range(3)]
    return {"rho": rho, "J": J_vec, "div_B": div_b, "faraday": faraday}
