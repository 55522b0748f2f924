"""Complexified quaternions (biquaternions) and their conjugations.

A biquaternion is ``w + x*I + y*J + z*K`` with complex ``w, x, y, z``.  The
complex unit ``1j`` commutes with the quaternion units, so scalar
multiplication by a Python complex number is allowed on either side.

Three conjugations are provided:

* ``conj_quat``    (tilde)  negates the I, J, K parts, reverses products;
* ``conj_complex`` (star)   conjugates every complex coefficient;
* ``conj_herm``    (dagger) the composition of the two, reverses products.

There is deliberately no positive-definite norm.  ``qnorm`` is the complex,
multiplicative quadratic form; ``Biquaternion.magnitude`` is the Euclidean
length of the eight real coefficients and is only meant for convergence and
tolerance checks.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from numbers import Number
from typing import Iterator

__all__ = [
    "Biquaternion",
    "FourVector",
    "FieldStrength",
    "ONE",
    "ZERO",
    "I",
    "J",
    "K",
    "mul",
    "conj_quat",
    "conj_complex",
    "conj_herm",
    "qnorm",
    "scalar_part",
    "vector_part",
    "split_vector_parts",
    "vec_products",
    "minkowski_norm",
    "four_vector",
    "CONTRAVARIANT",
    "COVARIANT",
]

CONTRAVARIANT = "contravariant"
COVARIANT = "covariant"


@dataclass(frozen=True, slots=True)
class Biquaternion:
    w: complex = 0j
    x: complex = 0j
    y: complex = 0j
    z: complex = 0j

    def __post_init__(self):
        for name in ("w", "x", "y", "z"):
            object.__setattr__(self, name, complex(getattr(self, name)))

    @classmethod
    def scalar(cls, c) -> Biquaternion:
        return cls(c, 0, 0, 0)

    @classmethod
    def vector(cls, v) -> Biquaternion:
        """Pure quaternion ``v[0] I + v[1] J + v[2] K``."""
        return cls(0, v[0], v[1], v[2])

    def __iter__(self) -> Iterator[complex]:
        yield self.w
        yield self.x
        yield self.y
        yield self.z

    def __add__(self, other):
        if isinstance(other, Biquaternion):
            return Biquaternion(self.w + other.w, self.x + other.x,
                                self.y + other.y, self.z + other.z)
        if isinstance(other, Number):
            return Biquaternion(self.w + other, self.x, self.y, self.z)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return Biquaternion(-self.w, -self.x, -self.y, -self.z)

    def __sub__(self, other):
        if isinstance(other, (Biquaternion, Number)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, Number):
            return (-self) + other
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, Biquaternion):
            return mul(self, other)
        if isinstance(other, Number):
            return Biquaternion(self.w * other, self.x * other,
                                self.y * other, self.z * other)
        return NotImplemented

    def __rmul__(self, other):
        # complex scalars commute with the quaternion units
        if isinstance(other, Number):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, Number):
            return self * (1 / other)
        return NotImplemented

    def conj_quat(self) -> Biquaternion:
        return conj_quat(self)

    def conj_complex(self) -> Biquaternion:
        return conj_complex(self)

    def conj_herm(self) -> Biquaternion:
        return conj_herm(self)

    @property
    def vec(self) -> tuple[complex, complex, complex]:
        return (self.x, self.y, self.z)

    def magnitude(self) -> float:
        """Euclidean length of the 8 real coefficients (not an algebra norm)."""
        return math.sqrt(sum(abs(c) ** 2 for c in self))

    def isclose(self, other, tol: float = 1e-12) -> bool:
        return (self - other).magnitude() <= tol

    def is_zero(self, tol: float = 0.0) -> bool:
        return self.magnitude() <= tol

    def to_json(self) -> dict:
        return {k: [c.real, c.imag] for k, c in zip("wxyz", self)}

    @classmethod
    def from_json(cls, obj: dict) -> Biquaternion:
        def _c(v):
            if isinstance(v, (list, tuple)):
                if len(v) != 2:
                    raise ValueError(f"complex literal must be [re, im], got {v!r}")
                return complex(float(v[0]), float(v[1]))
            return complex(float(v))

        unknown = set(obj) - set("wxyz")
        if unknown:
            raise ValueError(f"unknown biquaternion keys: {sorted(unknown)}")
        return cls(*(_c(obj.get(k, 0)) for k in "wxyz"))

    def __repr__(self):
        return f"Biquaternion({self.w!r}, {self.x!r}, {self.y!r}, {self.z!r})"

    def __str__(self):
        parts = []
        for c, unit in zip(self, ("", "I", "J", "K")):
            if c != 0:
                parts.append(f"({c.real:.6g}{c.imag:+.6g}i){unit}")
        return " + ".join(parts) if parts else "0"


ZERO = Biquaternion()
ONE = Biquaternion(1)
I = Biquaternion(0, 1)
J = Biquaternion(0, 0, 1)
K = Biquaternion(0, 0, 0, 1)


def mul(a: Biquaternion, b: Biquaternion) -> Biquaternion:
    """Hamilton product with complex coefficients."""
    aw, ax, ay, az = a.w, a.x, a.y, a.z
    bw, bx, by, bz = b.w, b.x, b.y, b.z
    return Biquaternion(
        aw * bw - ax * bx - ay * by - az * bz,
        aw * bx + ax * bw + ay * bz - az * by,
        aw * by - ax * bz + ay * bw + az * bx,
        aw * bz + ax * by - ay * bx + az * bw,
    )


def conj_quat(a: Biquaternion) -> Biquaternion:
    return Biquaternion(a.w, -a.x, -a.y, -a.z)


def conj_complex(a: Biquaternion) -> Biquaternion:
    return Biquaternion(a.w.conjugate(), a.x.conjugate(),
                        a.y.conjugate(), a.z.conjugate())


def conj_herm(a: Biquaternion) -> Biquaternion:
    return Biquaternion(a.w.conjugate(), -a.x.conjugate(),
                        -a.y.conjugate(), -a.z.conjugate())


def qnorm(a: Biquaternion) -> complex:
    """w^2 + x^2 + y^2 + z^2; complex valued, multiplicative, not definite."""
    return a.w * a.w + a.x * a.x + a.y * a.y + a.z * a.z


def scalar_part(a: Biquaternion) -> complex:
    return a.w


def vector_part(a: Biquaternion) -> Biquaternion:
    return Biquaternion(0, a.x, a.y, a.z)


def _is_hermitean(a: Biquaternion, tol: float) -> bool:
    return (conj_herm(a) - a).magnitude() <= tol


@dataclass(frozen=True, slots=True)
class FourVector:
    """Hermitean biquaternion ``v0 + i (v1 I + v2 J + v3 K)`` with a variance tag.

    For a covariant vector the stored ``base`` is the complex conjugate form
    ``v0 - i v``, i.e. the components are the contravariant ones.
    """

    base: Biquaternion
    variance: str = CONTRAVARIANT

    def __post_init__(self):
        if self.variance not in (CONTRAVARIANT, COVARIANT):
            raise ValueError(f"bad variance {self.variance!r}")
        if not _is_hermitean(self.base, 1e-9 * max(1.0, self.base.magnitude())):
            raise ValueError(f"four-vector must satisfy q^dagger = q, got {self.base}")

    @property
    def components(self) -> tuple[float, float, float, float]:
        """(v0, v1, v2, v3) read as if the vector were contravariant."""
        b = self.base if self.variance == CONTRAVARIANT else conj_complex(self.base)
        return (b.w.real, (b.x / 1j).real, (b.y / 1j).real, (b.z / 1j).real)

    def conj_complex(self) -> FourVector:
        flipped = COVARIANT if self.variance == CONTRAVARIANT else CONTRAVARIANT
        return FourVector(conj_complex(self.base), flipped)


def four_vector(t, x, y, z, variance: str = CONTRAVARIANT) -> FourVector:
    """Build a four-vector from real contravariant components."""
    base = Biquaternion(t, 1j * x, 1j * y, 1j * z)
    if variance == COVARIANT:
        base = conj_complex(base)
    return FourVector(base, variance)


@dataclass(frozen=True, slots=True)
class FieldStrength:
    """Scalar-free biquaternion ``B + i E``."""

    base: Biquaternion

    def __post_init__(self):
        if abs(self.base.w) > 1e-9 * max(1.0, self.base.magnitude()):
            raise ValueError("field strength must have zero scalar part")

    @classmethod
    def from_fields(cls, E, B) -> FieldStrength:
        return cls(Biquaternion(0, B[0] + 1j * E[0], B[1] + 1j * E[1], B[2] + 1j * E[2]))

    @property
    def B(self) -> tuple[float, float, float]:
        return tuple(c.real for c in self.base.vec)

    @property
    def E(self) -> tuple[float, float, float]:
        return tuple(c.imag for c in self.base.vec)


def split_vector_parts(a: Biquaternion) -> tuple[FourVector, Biquaternion]:
    """Split into a true four-vector and a pseudo-scalar/axial-vector part.

    ``a == true.base + pseudo`` holds exactly.
    """
    true = Biquaternion(a.w.real, 1j * a.x.imag, 1j * a.y.imag, 1j * a.z.imag)
    pseudo = Biquaternion(1j * a.w.imag, a.x.real, a.y.real, a.z.real)
    return FourVector(true), pseudo


def vec_products(u: Biquaternion, v: Biquaternion) -> tuple[complex, Biquaternion]:
    """Dot and cross product of two pure quaternions: ``u v == -dot + cross``."""
    if u.w != 0 or v.w != 0:
        raise ValueError("vec_products needs pure (scalar-free) quaternions")
    dot = u.x * v.x + u.y * v.y + u.z * v.z
    cross = Biquaternion(0,
                         u.y * v.z - u.z * v.y,
                         u.z * v.x - u.x * v.z,
                         u.x * v.y - u.y * v.x)
    return dot, cross


def minkowski_norm(v: FourVector) -> complex:
    """(v0)^2 - |v|^2, the scalar part of ``v v*``."""
    b = v.base
    return (b * conj_complex(b)).w

