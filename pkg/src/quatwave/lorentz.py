"""Quaternionic exponential and the Lorentz action.

A transformation is generated by the pure biquaternion ``L = (kappa + i lam)/2``
where ``kappa`` is the rotation vector (axis times angle, radians) and ``lam``
the rapidity vector.  The factor 1/2 is the usual double-cover half angle, so
a rotation by ``alpha`` about a unit axis ``a`` is ``exp(alpha a / 2)``.

The generator is never split into a rotation and a boost: for non-commuting
``kappa`` and ``lam`` the exponential of the sum is not the product of the
exponentials.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence, Union

from .algebra import (
    CONTRAVARIANT,
    COVARIANT,
    ONE,
    Biquaternion,
    FieldStrength,
    FourVector,
    conj_complex,
    conj_herm,
    conj_quat,
    qnorm,
)

__all__ = [
    "LorentzGenerator",
    "exp_biquat",
    "exp_series",
    "transform_contravariant",
    "transform_covariant",
    "transform_field_strength",
    "transform_scalar",
    "rotate_vector",
    "SMALL_ANGLE",
    "generator_quaternion",
    "Generator",
]

SMALL_ANGLE = 1e-6


@dataclass(frozen=True)
class LorentzGenerator:
    kappa: tuple[float, float, float] = (0.0, 0.0, 0.0)
    lam: tuple[float, float, float] = (0.0, 0.0, 0.0)

    def __post_init__(self):
        object.__setattr__(self, "kappa", tuple(float(c) for c in self.kappa))
        object.__setattr__(self, "lam", tuple(float(c) for c in self.lam))
        if len(self.kappa) != 3 or len(self.lam) != 3:
            raise ValueError("kappa and lambda must be 3-vectors")

    @property
    def quaternion(self) -> Biquaternion:
        k, l = self.kappa, self.lam
        return Biquaternion(0, *((k[n] + 1j * l[n]) / 2 for n in range(3)))

    @classmethod
    def rotation(cls, axis: Sequence[float], angle: float) -> LorentzGenerator:
        n = math.sqrt(sum(a * a for a in axis))
        return cls(kappa=tuple(angle * a / n for a in axis))

    @classmethod
    def boost(cls, rapidity: Sequence[float]) -> LorentzGenerator:
        return cls(lam=tuple(rapidity))

    @classmethod
    def from_json(cls, obj: dict) -> LorentzGenerator:
        unknown = set(obj) - {"kappa", "lambda"}
        if unknown:
            raise ValueError(f"unknown generator keys: {sorted(unknown)}")
        return cls(kappa=obj.get("kappa", (0, 0, 0)), lam=obj.get("lambda", (0, 0, 0)))

    def to_json(self) -> dict:
        return {"kappa": list(self.kappa), "lambda": list(self.lam)}


Generator = Union[LorentzGenerator, Biquaternion]


def generator_quaternion(gen: Generator) -> Biquaternion:
    if isinstance(gen, LorentzGenerator):
        return gen.quaternion
    if isinstance(gen, Biquaternion):
        if gen.w != 0:
            raise ValueError("a Lorentz generator must have zero scalar part")
        return gen
    raise TypeError(f"expected LorentzGenerator or Biquaternion, got {type(gen).__name__}")


def _cos_sinc(theta_sq: complex) -> tuple[complex, complex]:
    """cos(theta) and sin(theta)/theta as functions of theta**2."""
    if abs(theta_sq) < SMALL_ANGLE ** 2:
        t = theta_sq
        cos = 1 - t / 2 + t * t / 24 - t ** 3 / 720 + t ** 4 / 40320 - t ** 5 / 3628800
        sinc = 1 - t / 6 + t * t / 120 - t ** 3 / 5040 + t ** 4 / 362880 - t ** 5 / 39916800
        return cos, sinc
    theta = cmath.sqrt(theta_sq)
    return cmath.cos(theta), cmath.sin(theta) / theta


def exp_biquat(g: Biquaternion) -> Biquaternion:
    """exp(s + u) = e^s (cos th + u sin(th)/th) with th^2 = qnorm(u).

    Both cos and sinc are even in ``th`` so the square-root branch does not
    matter; nilpotent ``u`` (qnorm 0, u != 0) gives ``e^s (1 + u)``.
    """
    es = cmath.exp(g.w)
    u = Biquaternion(0, g.x, g.y, g.z)
    cos, sinc = _cos_sinc(qnorm(u))
    return Biquaternion(es * cos, es * sinc * g.x, es * sinc * g.y, es * sinc * g.z)


def exp_series(g: Biquaternion, terms: int = 40) -> Biquaternion:
    """Truncated Taylor series of the exponential; a reference for tests."""
    total = ONE
    term = ONE
    for n in range(1, terms):
        term = term * g / n
        total = total + term
    return total


def transform_contravariant(v: FourVector, gen: Generator) -> FourVector:
    """v -> e^L v e^(L^dagger)."""
    if v.variance != CONTRAVARIANT:
        raise ValueError("transform_contravariant needs a contravariant vector")
    L = generator_quaternion(gen)
    out = exp_biquat(L) * v.base * exp_biquat(conj_herm(L))
    return FourVector(out, CONTRAVARIANT)


def transform_covariant(v: FourVector, gen: Generator) -> FourVector:
    """v -> e^(L*) v e^(L~)."""
    if v.variance != COVARIANT:
        raise ValueError("transform_covariant needs a covariant vector")
    L = generator_quaternion(gen)
    out = exp_biquat(conj_complex(L)) * v.base * exp_biquat(conj_quat(L))
    return FourVector(out, COVARIANT)


def transform_scalar(phi: complex, gen: Generator) -> Biquaternion:
    L = generator_quaternion(gen)
    return exp_biquat(L) * Biquaternion.scalar(phi) * exp_biquat(conj_quat(L))


def transform_field_strength(F: FieldStrength, gen: Generator) -> FieldStrength:
    """F -> e^L F e^(L~); B and E rotate as 3-vectors under pure rotations."""
    L = generator_quaternion(gen)
    out = exp_biquat(L) * F.base * exp_biquat(conj_quat(L))
    return FieldStrength(Biquaternion(0, out.x, out.y, out.z))


def rotate_vector(u: Biquaternion, axis: Sequence[float], alpha: float,
                  tol: float = 1e-12) -> Biquaternion:
    """Rotate the pure quaternion ``u`` by ``alpha`` about the unit ``axis``."""
    if u.w != 0:
        raise ValueError("rotate_vector acts on pure (scalar-free) quaternions")
    if isinstance(axis, Biquaternion):
        if axis.w != 0 or any(c.imag != 0 for c in axis.vec):
            raise ValueError("axis must be a real pure quaternion")
        axis = tuple(c.real for c in axis.vec)
    if abs(math.sqrt(sum(a * a for a in axis)) - 1.0) > tol:
        raise ValueError(f"rotation axis must be a unit vector, got {tuple(axis)}")
    half = Biquaternion.vector(axis) * (alpha / 2)
    return exp_biquat(half) * u * exp_biquat(-half)
