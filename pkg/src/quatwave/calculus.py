"""Differentiation with respect to a biquaternion variable.

For an unconstrained variable ``q = q0 + q1 I + q2 J + q3 K`` with independent
complex components the derivatives are

    d      = sum_mu e_mu  d/dq_mu          e = (1, I, J, K)
    d~     = sum_mu e~_mu d/dq_mu
    d_star = sum_mu e_mu  d/dq_mu*         (Wirtinger derivatives)
    d_dag  = sum_mu e~_mu d/dq_mu*

A vector-constrained variable is ``q = t + i (x I + y J + z K)`` with real
``t, x, y, z``; there ``d = d_t + i grad`` and ``d~ = d_t - i grad``.

The key identities (left action; right action mirrors them):

    unconstrained        d q = -2    d q~ = 4     d~ q = 4     d~ q~ = -2
    vector-constrained   d q = 4     d q~ = -2    d~ q = -2    d~ q~ = 4

with a constant ``a`` to the left of the slot, ``-2 -> -2 a~`` and ``4 -> 4 a_0``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Union

from .algebra import ONE, ZERO, Biquaternion, I, J, K, conj_quat

__all__ = [
    "D",
    "D_TILDE",
    "D_STAR",
    "D_DAGGER",
    "KINDS",
    "UNCONSTRAINED",
    "VECTOR",
    "Q",
    "Q_TILDE",
    "LEFT_ACTION",
    "RIGHT_ACTION",
    "identity_table",
    "vector_identity_table",
    "QuaternionMonomial",
    "differentiate_monomial",
    "differentiate_sum",
    "evaluate_sum",
    "fd_derivative",
    "extremum_residual",
]

D, D_TILDE, D_STAR, D_DAGGER = "d", "d_tilde", "d_star", "d_dagger"
KINDS = (D, D_TILDE, D_STAR, D_DAGGER)
UNCONSTRAINED, VECTOR = "unconstrained", "vector"
Q, Q_TILDE = "q", "qt"
LEFT_ACTION, RIGHT_ACTION = "left", "right"

E = (ONE, I, J, K)
E_TILDE = (ONE, -I, -J, -K)


def _check_kind(kind: str) -> None:
    if kind not in KINDS:
        raise ValueError(f"unknown derivative kind {kind!r}")


def _check_slot(slot: str) -> None:
    if slot not in (Q, Q_TILDE):
        raise ValueError(f"slot must be 'q' or 'qt', got {slot!r}")


def _table(kind: str, slot: str, a, swap: bool) -> Biquaternion:
    _check_kind(kind)
    _check_slot(slot)
    if kind in (D_STAR, D_DAGGER):
        return ZERO
    a = ONE if a is None else a
    same = (kind == D) == (slot == Q)
    if swap:
        same = not same
    return -2 * conj_quat(a) if same else Biquaternion.scalar(4 * a.w)


def identity_table(kind: str, slot: str, a: Biquaternion | None = None) -> Biquaternion:
    """``kind`` applied to ``a q`` or ``a q~`` (``a`` defaults to 1)."""
    return _table(kind, slot, a, swap=False)


def vector_identity_table(kind: str, slot: str, a: Biquaternion | None = None) -> Biquaternion:
    """Same as :func:`identity_table` for a vector-constrained variable."""
    if kind in (D_STAR, D_DAGGER):
        raise ValueError("d_star and d_dagger are not defined for a real (vector) variable")
    return _table(kind, slot, a, swap=True)


Factor = Union[Biquaternion, str]


@dataclass(frozen=True)
class QuaternionMonomial:
    """Product ``c0 s1 c1 s2 c2 ...`` of constants and variable slots.

    Input may be any sequence of constants and slot tags; adjacent constants are
    merged so that ``factors`` always alternates and starts/ends with a constant.
    """

    factors: tuple

    def __post_init__(self):
        merged: list = []
        pending = ONE
        for f in self.factors:
            if isinstance(f, Biquaternion):
                pending = pending * f
            elif isinstance(f, str):
                _check_slot(f)
                merged.extend([pending, f])
                pending = ONE
            else:
                raise TypeError(f"monomial factors must be Biquaternion or slot tags, got {f!r}")
        merged.append(pending)
        object.__setattr__(self, "factors", tuple(merged))

    @property
    def degree(self) -> int:
        return sum(1 for f in self.factors if isinstance(f, str))

    def evaluate(self, q: Biquaternion) -> Biquaternion:
        qt = conj_quat(q)
        out = ONE
        for f in self.factors:
            out = out * (f if isinstance(f, Biquaternion) else (q if f == Q else qt))
        return out

    def conj_quat(self) -> QuaternionMonomial:
        """Reverse the product, conjugating constants and swapping q <-> q~."""
        out = []
        for f in reversed(self.factors):
            if isinstance(f, Biquaternion):
                out.append(conj_quat(f))
            else:
                out.append(Q_TILDE if f == Q else Q)
        return QuaternionMonomial(tuple(out))

    def scaled(self, c: complex) -> QuaternionMonomial:
        return QuaternionMonomial((ONE * c,) + self.factors)

    def __mul__(self, other: QuaternionMonomial) -> QuaternionMonomial:
        return QuaternionMonomial(self.factors + other.factors)

    def __str__(self):
        parts = []
        for f in self.factors:
            if isinstance(f, str):
                parts.append("q~" if f == Q_TILDE else "q")
            elif not f.isclose(ONE, 0.0):
                parts.append(f"[{f}]")
        return " ".join(parts) if parts else "1"


def _resolve(kind: str, slot: str, prefix: QuaternionMonomial, table) -> list[QuaternionMonomial]:
    """``kind (prefix * slot)`` with ``prefix`` held fixed, as monomials."""
    if kind in (D_STAR, D_DAGGER):
        return []
    minus_two = table(kind, slot, ONE).w == -2
    if minus_two:
        return [prefix.conj_quat().scaled(-2)]
    # 4 a_0 = 2 a + 2 a~
    return [prefix.scaled(2), prefix.conj_quat().scaled(2)]


def differentiate_monomial(mono: QuaternionMonomial, kind: str,
                           constraint: str = UNCONSTRAINED,
                           side: str = LEFT_ACTION) -> list[QuaternionMonomial]:
    """Leibniz sum over the variable slots, each resolved by the identity table."""
    _check_kind(kind)
    if constraint == VECTOR and kind in (D_STAR, D_DAGGER):
        raise ValueError("d_star and d_dagger need an unconstrained variable")
    table = identity_table if constraint == UNCONSTRAINED else vector_identity_table
    if constraint not in (UNCONSTRAINED, VECTOR):
        raise ValueError(f"unknown constraint {constraint!r}")
    if side not in (LEFT_ACTION, RIGHT_ACTION):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    fs = mono.factors
    out: list[QuaternionMonomial] = []
    for k, f in enumerate(fs):
        if not isinstance(f, str):
            continue
        left = QuaternionMonomial(fs[:k])
        right = QuaternionMonomial(fs[k + 1:])
        if side == LEFT_ACTION:
            for term in _resolve(kind, f, left, table):
                out.append(term * right)
        else:
            # quaternion conjugation turns (s R) d into d~ (R~ s~), and vice versa
            mirrored = right.conj_quat()
            slot = Q_TILDE if f == Q else Q
            mkind = {D: D_TILDE, D_TILDE: D}.get(kind, kind)
            for term in _resolve(mkind, slot, mirrored, table):
                out.append(left * term.conj_quat())
    return out


def differentiate_sum(monos: Iterable[QuaternionMonomial], kind: str,
                      constraint: str = UNCONSTRAINED,
                      side: str = LEFT_ACTION) -> list[QuaternionMonomial]:
    out: list[QuaternionMonomial] = []
    for m in monos:
        out.extend(differentiate_monomial(m, kind, constraint, side))
    return out


def evaluate_sum(monos: Iterable[QuaternionMonomial], q: Biquaternion) -> Biquaternion:
    total = ZERO
    for m in monos:
        total = total + m.evaluate(q)
    return total


# -- finite differences --------------------------------------------------------

def _check_finite(v: Biquaternion) -> Biquaternion:
    for c in v:
        if math.isnan(c.real) or math.isnan(c.imag) or math.isinf(c.real) or math.isinf(c.imag):
            raise FloatingPointError("non-finite value in finite-difference derivative")
    return v


def _as_bq(v) -> Biquaternion:
    return v if isinstance(v, Biquaternion) else Biquaternion.scalar(v)


def fd_derivative(f: Callable[[Biquaternion], Biquaternion], q0: Biquaternion, kind: str,
                  h: float = 1e-4, constraint: str = UNCONSTRAINED,
                  side: str = LEFT_ACTION) -> Biquaternion:
    """Central-difference evaluation of ``kind`` at ``q0`` (error O(h^2))."""
    _check_kind(kind)
    if h <= 0:
        raise ValueError("step h must be positive")
    g = lambda q: _check_finite(_as_bq(f(q)))
    if constraint == VECTOR:
        if kind in (D_STAR, D_DAGGER):
            raise ValueError("d_star and d_dagger need an unconstrained variable")
        dirs = (ONE, 1j * I, 1j * J, 1j * K)
        units = (ONE, 1j * I, 1j * J, 1j * K)
        if kind == D_TILDE:
            units = tuple(conj_quat(u) for u in units)
        parts = [(g(q0 + h * d) - g(q0 - h * d)) / (2 * h) for d in dirs]
    elif constraint == UNCONSTRAINED:
        units = E if kind in (D, D_STAR) else E_TILDE
        parts = []
        for e in E:
            dre = (g(q0 + h * e) - g(q0 - h * e)) / (2 * h)
            dim = (g(q0 + 1j * h * e) - g(q0 - 1j * h * e)) / (2 * h)
            # Wirtinger: d/dz = (d_re - i d_im)/2, d/dz* = (d_re + i d_im)/2
            sign = -1j if kind in (D, D_TILDE) else 1j
            parts.append((dre + sign * dim) / 2)
    else:
        raise ValueError(f"unknown constraint {constraint!r}")
    total = ZERO
    for u, p in zip(units, parts):
        total = total + (u * p if side == LEFT_ACTION else p * u)
    return total


def extremum_residual(f: Callable[[Biquaternion], object], q0: Biquaternion,
                      h: float = 1e-4, constraint: str = UNCONSTRAINED,
                      real_tol: float = 1e-10) -> Biquaternion:
    """``d f`` at ``q0`` for a real-valued ``f``; zero certifies a stationary point.

    For complex components the Wirtinger normalization applies, so
    ``f = sum |q_mu - c_mu|^2`` has ``d f = (q - c)*``; on a real variable this
    reduces to ``2 (q - c)``.
    """
    val = _as_bq(f(q0))
    if abs(val.w.imag) > real_tol or Biquaternion(0, *val.vec).magnitude() > real_tol:
        raise ValueError(f"extremum rule needs a real-valued function, got {val}")
    return fd_derivative(f, q0, D, h, constraint)
