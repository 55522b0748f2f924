"""Weyl and Dirac spinors as elements of right ideals of the biquaternions.

Left-handed spinors are ``a P_L`` and right-handed ones ``a P_R`` with
``P_L = (1 + iK)/2`` and ``P_R = (1 - iK)/2``.  Components are read off the
bases

    psi_L =  xi_L P_L + chi_L J P_L
    psi_R = -xi_R J P_R + chi_R P_R

Right multiplication by ``J`` ("elevation") moves a spinor between the two
ideals without changing its Lorentz law.  Working the bases through gives the
component-level sign table

    psi_R J  has left  components ( xi_R,  chi_R)
    psi_L J  has right components (-xi_L, -chi_L)

so ``psi_R J`` equals ``psi_L`` component for component and ``psi_L J`` equals
``-psi_R``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .algebra import ONE, Biquaternion, I, J, K, conj_complex
from .lorentz import Generator, generator_quaternion, exp_biquat

__all__ = [
    "P_L",
    "P_R",
    "LEFT",
    "RIGHT",
    "SpinBasis",
    "DEFAULT_BASIS",
    "ELEVATION_SIGNS",
    "make_left",
    "make_right",
    "extract_components",
    "ideal_residual",
    "spin_z_eigencheck",
    "elevate",
    "ChiralPair",
    "StandardPair",
    "to_standard",
    "from_standard",
    "lorentz_transform",
    "gauge_transform",
    "apply_C",
    "apply_P",
    "apply_T",
    "apply_CPT",
    "parity_point",
    "time_reversal_point",
]

LEFT = "L"
RIGHT = "R"

P_L = (ONE + 1j * K) / 2
P_R = (ONE - 1j * K) / 2

# (xi, chi) multipliers for elevation by right multiplication with J
ELEVATION_SIGNS = {
    RIGHT: (1, 1),    # psi_R J -> left components ( xi_R,  chi_R)
    LEFT: (-1, -1),   # psi_L J -> right components (-xi_L, -chi_L)
}


@dataclass(frozen=True)
class SpinBasis:
    """Measured spin axis ``a`` and orthogonal direction ``b`` (unit, a.b = 0)."""

    axis: tuple[float, float, float] = (0.0, 0.0, 1.0)
    ortho: tuple[float, float, float] = (0.0, 1.0, 0.0)

    def __post_init__(self):
        a, b = self.axis, self.ortho
        for v in (a, b):
            if abs(math.sqrt(sum(c * c for c in v)) - 1) > 1e-12:
                raise ValueError(f"basis vectors must be unit, got {v}")
        if abs(sum(p * q for p, q in zip(a, b))) > 1e-12:
            raise ValueError("spin basis vectors must be orthogonal")

    @property
    def p_left(self) -> Biquaternion:
        return (ONE + 1j * Biquaternion.vector(self.axis)) / 2

    @property
    def p_right(self) -> Biquaternion:
        return (ONE - 1j * Biquaternion.vector(self.axis)) / 2

    @property
    def down(self) -> Biquaternion:
        return Biquaternion.vector(self.ortho)


DEFAULT_BASIS = SpinBasis()


def make_left(xi: complex, chi: complex, basis: SpinBasis = DEFAULT_BASIS) -> Biquaternion:
    p = basis.p_left
    return xi * p + chi * (basis.down * p)


def make_right(xi: complex, chi: complex, basis: SpinBasis = DEFAULT_BASIS) -> Biquaternion:
    p = basis.p_right
    return -xi * (basis.down * p) + chi * p


def ideal_residual(psi: Biquaternion, chirality: str,
                   basis: SpinBasis = DEFAULT_BASIS) -> float:
    """Size of the part of ``psi`` outside the chosen right ideal."""
    other = basis.p_right if chirality == LEFT else basis.p_left
    return (psi * other).magnitude()


def _check_chirality(chirality: str) -> None:
    if chirality not in (LEFT, RIGHT):
        raise ValueError(f"chirality must be 'L' or 'R', got {chirality!r}")


def extract_components(psi: Biquaternion, chirality: str,
                       basis: SpinBasis = DEFAULT_BASIS,
                       tol: float = 1e-12) -> tuple[complex, complex]:
    """Solve the basis expansion for (xi, chi); reject spinors outside the ideal."""
    _check_chirality(chirality)
    if chirality == LEFT:
        e1, e2 = make_left(1, 0, basis), make_left(0, 1, basis)
    else:
        e1, e2 = make_right(1, 0, basis), make_right(0, 1, basis)
    A = np.array([list(e1), list(e2)], dtype=complex).T
    sol, *_ = np.linalg.lstsq(A, np.array(list(psi), dtype=complex), rcond=None)
    xi, chi = complex(sol[0]), complex(sol[1])
    resid = (psi - (xi * e1 + chi * e2)).magnitude()
    if resid > tol * max(1.0, psi.magnitude()):
        raise ValueError(f"spinor is not in the {chirality}-handed ideal (residual {resid:.3g})")
    return xi, chi


def spin_z_eigencheck(psi: Biquaternion, tol: float = 1e-12,
                      basis: SpinBasis = DEFAULT_BASIS) -> Optional[float]:
    """+1/2 or -1/2 if ``psi`` is an eigenstate of spin along the basis axis, else None."""
    if psi.is_zero(tol):
        raise ValueError("zero spinor has no spin")
    s = 1j * Biquaternion.vector(basis.axis) * psi
    scale = max(1.0, psi.magnitude())
    if (s - psi).magnitude() <= tol * scale:
        return 0.5
    if (s + psi).magnitude() <= tol * scale:
        return -0.5
    return None


def elevate(psi: Biquaternion) -> Biquaternion:
    """Right multiplication by J; swaps the chiral ideals."""
    return psi * J


@dataclass(frozen=True)
class ChiralPair:
    psi_l: Biquaternion
    psi_r: Biquaternion

    def __post_init__(self):
        scale = max(1.0, self.psi_l.magnitude(), self.psi_r.magnitude())
        if ideal_residual(self.psi_l, LEFT) > 1e-9 * scale:
            raise ValueError("psi_l is not in the left-handed ideal")
        if ideal_residual(self.psi_r, RIGHT) > 1e-9 * scale:
            raise ValueError("psi_r is not in the right-handed ideal")

    @classmethod
    def from_components(cls, xi_l, chi_l, xi_r, chi_r) -> ChiralPair:
        return cls(make_left(xi_l, chi_l), make_right(xi_r, chi_r))

    def components(self) -> tuple[complex, complex, complex, complex]:
        return (*extract_components(self.psi_l, LEFT, tol=1e-9),
                *extract_components(self.psi_r, RIGHT, tol=1e-9))

    @property
    def dirac(self) -> Biquaternion:
        return self.psi_l + self.psi_r

    @classmethod
    def from_dirac(cls, psi: Biquaternion) -> ChiralPair:
        return cls(psi * P_L, psi * P_R)

    @classmethod
    def from_json(cls, obj: dict) -> ChiralPair:
        keys = ("xiL", "chiL", "xiR", "chiR")
        unknown = set(obj) - set(keys)
        if unknown:
            raise ValueError(f"unknown spinor keys: {sorted(unknown)}")

        def _c(v):
            if isinstance(v, (list, tuple)):
                return complex(float(v[0]), float(v[1]))
            return complex(float(v))

        return cls.from_components(*(_c(obj.get(k, 0)) for k in keys))

    def to_json(self) -> dict:
        return {k: [c.real, c.imag]
                for k, c in zip(("xiL", "chiL", "xiR", "chiR"), self.components())}

    def isclose(self, other: ChiralPair, tol: float = 1e-12) -> bool:
        return self.psi_l.isclose(other.psi_l, tol) and self.psi_r.isclose(other.psi_r, tol)

    def __neg__(self):
        return ChiralPair(-self.psi_l, -self.psi_r)


@dataclass(frozen=True)
class StandardPair:
    """zeta = (psi_L + psi_R J)/sqrt2, eta = (psi_L - psi_R J)/sqrt2; both left ideal."""

    zeta: Biquaternion
    eta: Biquaternion


def to_standard(pair: ChiralPair) -> StandardPair:
    lifted = pair.psi_r * J
    return StandardPair((pair.psi_l + lifted) / math.sqrt(2),
                        (pair.psi_l - lifted) / math.sqrt(2))


def from_standard(std: StandardPair) -> ChiralPair:
    psi_l = (std.zeta + std.eta) / math.sqrt(2)
    lifted = (std.zeta - std.eta) / math.sqrt(2)
    # J^-1 = -J
    return ChiralPair(psi_l, -(lifted * J))


def lorentz_transform(pair: ChiralPair, gen: Generator) -> ChiralPair:
    """psi_L -> e^L psi_L, psi_R -> e^(L*) psi_R."""
    L = generator_quaternion(gen)
    return ChiralPair(exp_biquat(L) * pair.psi_l,
                      exp_biquat(conj_complex(L)) * pair.psi_r)


def gauge_transform(pair: ChiralPair, phi: float) -> ChiralPair:
    phase = cmath.exp(1j * phi)
    return ChiralPair(phase * pair.psi_l, phase * pair.psi_r)


# Discrete symmetries act on a full Dirac spinor field psi(t, x, y, z).

Point = tuple[float, float, float, float]
DiracField = Callable[[Point], Biquaternion]


def parity_point(x: Point) -> Point:
    return (x[0], -x[1], -x[2], -x[3])


def time_reversal_point(x: Point) -> Point:
    return (-x[0], x[1], x[2], x[3])


def apply_C(psi: DiracField) -> DiracField:
    """psi(x) -> i psi*(x)."""
    return lambda x: 1j * conj_complex(psi(x))


def apply_P(psi: DiracField) -> DiracField:
    """psi(t, x) -> -psi(t, -x) I."""
    return lambda x: -(psi(parity_point(x)) * I)


def apply_T(psi: DiracField) -> DiracField:
    """psi(t, x) -> i psi*(-t, x) J."""
    return lambda x: 1j * (conj_complex(psi(time_reversal_point(x))) * J)


def apply_CPT(psi: DiracField) -> DiracField:
    """T first, then P, then C."""
    return apply_C(apply_P(apply_T(psi)))
