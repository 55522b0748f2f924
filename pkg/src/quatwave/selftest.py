"""Quick versions of the acceptance checks, shared by the CLI and the test suite."""
from __future__ import annotations

import cmath
import math
from typing import Callable

import numpy as np

from .algebra import (ONE, ZERO, Biquaternion, K, conj_complex, conj_herm, conj_quat,
                      four_vector, minkowski_norm, qnorm)
from .calculus import (D, D_TILDE, Q, Q_TILDE, VECTOR, QuaternionMonomial,
                       differentiate_monomial, evaluate_sum, fd_derivative, identity_table,
                       vector_identity_table)
from .fields import constant_B, constant_field, plane_wave_em
from .lorentz import LorentzGenerator, exp_biquat, exp_series, transform_contravariant
from .matrix import SIGMA, quaternion_residual_column, to_matrix, weyl_dirac_residual
from . import dynamics, grassmann, maxwell
from .spinor import P_L, P_R, ChiralPair, apply_CPT, lorentz_transform, to_standard

__all__ = ["random_biquaternion", "CHECKS", "run_all"]


def random_biquaternion(rng: np.random.Generator, scale: float = 1.0) -> Biquaternion:
    v = rng.normal(scale=scale, size=8)
    return Biquaternion(complex(v[0], v[1]), complex(v[2], v[3]),
                        complex(v[4], v[5]), complex(v[6], v[7]))


def check_isomorphism(rng, n: int = 1000) -> bool:
    worst = 0.0
    for _ in range(n):
        a, b = random_biquaternion(rng), random_biquaternion(rng)
        ma, mb = to_matrix(a), to_matrix(b)
        errs = [to_matrix(a + b) - (ma + mb), to_matrix(a * b) - ma @ mb,
                to_matrix(conj_herm(a)) - ma.conj().T,
                to_matrix(conj_complex(a)) - SIGMA[1] @ ma.conj() @ SIGMA[1],
                to_matrix(conj_quat(a)) - np.array([[ma[1, 1], -ma[0, 1]], [-ma[1, 0], ma[0, 0]]])]
        worst = max(worst, max(float(np.abs(e).max()) for e in errs))
        if abs(np.linalg.det(ma) - qnorm(a)) > 1e-12 * max(1.0, abs(qnorm(a))):
            return False
    return worst <= 1e-13


def check_projectors(rng, n: int = 200) -> bool:
    exact = (P_L * P_L == P_L and conj_complex(P_L) == P_R
             and P_L + P_R == ONE and (P_L * P_R).is_zero())
    worst = 0.0
    for _ in range(n):
        a, psi = random_biquaternion(rng), random_biquaternion(rng)
        worst = max(worst, ((a * (psi * P_L)) * P_R).magnitude())
    return exact and worst <= 1e-14


def check_lorentz(rng, n: int = 200) -> bool:
    for _ in range(n):
        gen = LorentzGenerator(rng.normal(size=3), rng.normal(scale=0.7, size=3))
        v = four_vector(*rng.normal(size=4))
        if abs(minkowski_norm(transform_contravariant(v, gen)) - minkowski_norm(v)) > 1e-10 * max(1, abs(minkowski_norm(v))):
            return False
        L = gen.quaternion
        if not exp_biquat(L).isclose(exp_series(L, 60), 1e-10 * max(1, exp_biquat(L).magnitude())):
            return False
    axis = rng.normal(size=3)
    turn = LorentzGenerator.rotation(axis, 2 * math.pi)
    pair = ChiralPair.from_components(*(complex(*rng.normal(size=2)) for _ in range(4)))
    v = four_vector(*rng.normal(size=4))
    flipped = lorentz_transform(pair, turn).isclose(-pair, 1e-12)
    fixed = transform_contravariant(v, turn).base.isclose(v.base, 1e-12)
    return flipped and fixed


def check_dispersion(rng, n: int = 10) -> bool:
    m = 1.0
    grid = np.linspace(-1.5, 1.5, n)
    A = constant_field(ZERO, True)
    x = (0.3, -0.2, 0.5, 0.1)
    for px in grid:
        for py in grid:
            for pz in grid:
                p = (px, py, pz)
                E = math.sqrt(m * m + px * px + py * py + pz * pz)
                amps = dynamics.solve_amplitudes(E, p, m, 0.8, 0.3 - 0.4j)
                f = dynamics.PlaneWaveSpec(E, p, m, amps).fields()
                left, right = dynamics.dirac_residuals(f, A, m, x)
                q = quaternion_residual_column(left, right)
                if np.abs(q).max() >= 1e-10:
                    return False
                if np.abs(q - weyl_dirac_residual(f, A, m, x)).max() > 1e-10:
                    return False
                off = dynamics.PlaneWaveSpec(E + 0.1, p, m, amps).fields()
                lo, ro = dynamics.dirac_residuals(off, A, m, x)
                if max(lo.magnitude(), ro.magnitude()) <= 1e-3:
                    return False
    return True


def check_derivatives(rng) -> bool:
    q0 = random_biquaternion(rng, 0.5)
    qv = four_vector(*rng.normal(size=4)).base
    a = random_biquaternion(rng)
    for kind in (D, D_TILDE):
        for slot in (Q, Q_TILDE):
            mono = QuaternionMonomial((a, slot))
            got = fd_derivative(mono.evaluate, q0, kind)
            got_v = fd_derivative(mono.evaluate, qv, kind, constraint=VECTOR)
            if not got.isclose(identity_table(kind, slot, a), 1e-7):
                return False
            if not got_v.isclose(vector_identity_table(kind, slot, a), 1e-7):
                return False
    al, be, ga, de = (random_biquaternion(rng) for _ in range(4))
    mono = QuaternionMonomial((al, Q, be, Q, ga, Q, de))
    sym = evaluate_sum(differentiate_monomial(mono, D), q0)
    return sym.isclose(fd_derivative(mono.evaluate, q0, D), 1e-6)


def check_grassmann(rng) -> bool:
    ok = True
    for m in (0.0, 1.0):
        out = grassmann.vary_dirac_lagrangian(m)
        el, er = grassmann.expected_dirac_equations(m)
        ok &= out["left"].isclose(el, 1e-12) and out["right"].isclose(er, 1e-12)
    s = grassmann.spinor_symbols()
    d = grassmann.spinor_derivative(grassmann.conj_complex_ferm(s.psi_l), "psiL^dag")
    ok &= d.isclose(grassmann.DIRAC_ALGEBRA.const(-P_R), 1e-15)
    ok &= grassmann.mass_term_expansion().isclose(grassmann.expected_mass_components(), 1e-15)
    return bool(ok)


def check_pauli(rng) -> bool:
    B = tuple(rng.normal(size=3))
    M = dynamics.pauli_constant_B_matrix(B, 1.5)
    eig = np.sort(np.linalg.eigvals(M).real)
    oracle = np.sort(np.linalg.eigvalsh(dynamics.pauli_matrix_oracle(B, 1.5)))
    return bool(np.abs(eig - oracle).max() <= 1e-10)


def check_current(rng, n: int = 100) -> bool:
    for _ in range(n):
        comps = [complex(*rng.normal(size=2)) for _ in range(4)]
        pair = ChiralPair.from_components(*comps)
        j = dynamics.current(pair).base
        if not j.isclose(dynamics.current_components(*comps), 1e-12):
            return False
        if not dynamics.current_standard(to_standard(pair)).base.isclose(j, 1e-12):
            return False
    return True


def check_maxwell(rng) -> bool:
    A = plane_wave_em((0.3, -0.5, 0.8), (1.0, 0.2, 0.0), 1.2, 0.3)
    x = tuple(rng.uniform(-1, 1, 4))
    an = maxwell.expand_to_real(maxwell.maxwell_residual(A, None, x))
    fd = maxwell.expand_to_real(maxwell.maxwell_residual(A.with_backend("fd"), None, x))
    F = maxwell.field_strength(constant_B((0.0, 0.0, 2.0)), x)
    return (max(map(abs, an.values())) < 1e-12 and max(map(abs, fd.values())) < 1e-8
            and abs(F.B[2] - 2.0) <= 1e-10 and max(map(abs, F.E)) <= 1e-10)


def check_cpt(rng, n: int = 100) -> bool:
    for _ in range(n):
        psi0 = random_biquaternion(rng)
        k = rng.normal(size=4)
        field = lambda x, psi0=psi0, k=k: cmath.exp(1j * float(np.dot(k, x))) * psi0
        x = tuple(rng.uniform(-1, 1, 4))
        if (apply_CPT(field)(x) - field(tuple(-c for c in x)) * K).magnitude() > 1e-14:
            return False
    return True


CHECKS: dict[str, Callable] = {
    "isomorphism": check_isomorphism,
    "projectors": check_projectors,
    "lorentz": check_lorentz,
    "dispersion": check_dispersion,
    "derivatives": check_derivatives,
    "grassmann": check_grassmann,
    "pauli": check_pauli,
    "current": check_current,
    "maxwell": check_maxwell,
    "cpt": check_cpt,
}


def run_all(seed: int = 0) -> dict[str, bool]:
    return {name: bool(fn(np.random.default_rng(seed))) for name, fn in CHECKS.items()}
