"""2x2 complex-matrix representation of the biquaternions and the Weyl-basis Dirac operator.

Representation table (so that ``i I -> sigma_1`` and so on)::

    1 -> identity      I -> -i sigma_1      J -> -i sigma_2      K -> -i sigma_3

Under this map ``P_L -> diag(1, 0)`` and hermitean conjugation becomes the
matrix conjugate transpose.  A left-ideal spinor ``a P_L`` lives entirely in the
first column, a right-ideal spinor ``a P_R`` in the second; the column entries
are the (xi, chi) components.

The Dirac oracle uses the chiral gamma matrices

    gamma^mu = [[0, sigma^mu], [sigma-bar^mu, 0]],  sigma^mu = (1, sigma),
    sigma-bar^mu = (1, -sigma)

with ``Psi = (u_R, u_L) = (xi_R, chi_R, xi_L, chi_L)`` and ``D_mu = d_mu - i A_mu``,
``A_mu = (A^0, -A)``.  With this slot assignment the relative phase between the
two chiralities is +1.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np

from .algebra import Biquaternion
from .fields import AnalyticField, Point
from .spinor import LEFT, RIGHT, extract_components

__all__ = [
    "SIGMA",
    "IDENTITY",
    "GAMMA",
    "to_matrix",
    "from_matrix",
    "spinor_to_column",
    "dirac_column",
    "weyl_dirac_residual",
    "quaternion_residual_column",
]

IDENTITY = np.eye(2, dtype=complex)
SIGMA = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


def _gammas() -> tuple[np.ndarray, ...]:
    zero = np.zeros((2, 2), dtype=complex)
    sig = (IDENTITY,) + SIGMA
    bar = (IDENTITY,) + tuple(-s for s in SIGMA)
    return tuple(np.block([[zero, s], [b, zero]]) for s, b in zip(sig, bar))


GAMMA = _gammas()


def to_matrix(a: Biquaternion) -> np.ndarray:
    w, x, y, z = a
    return np.array([[w - 1j * z, -1j * x - y],
                     [-1j * x + y, w + 1j * z]], dtype=complex)


def from_matrix(m) -> Biquaternion:
    m = np.asarray(m, dtype=complex)
    if m.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {m.shape}")
    m00, m01, m10, m11 = complex(m[0, 0]), complex(m[0, 1]), complex(m[1, 0]), complex(m[1, 1])
    return Biquaternion((m00 + m11) / 2,
                        1j * (m01 + m10) / 2,
                        (m10 - m01) / 2,
                        (m11 - m00) / (2j))


def spinor_to_column(psi: Biquaternion, chirality: str, tol: float = 1e-12) -> np.ndarray:
    """(xi, chi) as a column; rejects spinors outside the chosen ideal."""
    extract_components(psi, chirality, tol=tol)
    col = 0 if chirality == LEFT else 1
    return to_matrix(psi)[:, col].copy()


def dirac_column(psi_l: Biquaternion, psi_r: Biquaternion, tol: float = 1e-9) -> np.ndarray:
    return np.concatenate([spinor_to_column(psi_r, RIGHT, tol), spinor_to_column(psi_l, LEFT, tol)])


def quaternion_residual_column(left: Biquaternion, right: Biquaternion) -> np.ndarray:
    """Stack quaternionic (left, right) residuals in the oracle's slot order.

    The left-equation residual sits in the P_L ideal but plays the role of the
    upper (right-handed) row block of the Weyl operator, and vice versa.
    """
    return np.concatenate([to_matrix(left)[:, 0], to_matrix(right)[:, 1]])


def weyl_dirac_residual(pair: Sequence[AnalyticField], A: AnalyticField,
                        m: float, x: Point) -> np.ndarray:
    """(i gamma^mu D_mu - m) Psi at ``x`` for the fields ``pair = (psi_L, psi_R)``."""
    psi_l, psi_r = pair
    Psi = dirac_column(psi_l(x), psi_r(x))
    dl, dr = psi_l.gradient(x), psi_r.gradient(x)
    dPsi = [dirac_column(dl[mu], dr[mu]) for mu in range(4)]
    a = A(x)
    a_up = (a.w.real, a.x.imag, a.y.imag, a.z.imag)
    a_down = (a_up[0], -a_up[1], -a_up[2], -a_up[3])
    out = -m * Psi
    for mu in range(4):
        out = out + 1j * GAMMA[mu] @ (dPsi[mu] - 1j * a_down[mu] * Psi)
    return out
