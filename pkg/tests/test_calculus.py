import pytest
import sympy as sp

from quatwave.algebra import ONE, ZERO, Biquaternion, I, J, K, conj_complex, conj_quat, four_vector
from quatwave.calculus import (D, D_DAGGER, D_STAR, D_TILDE, LEFT_ACTION, Q, Q_TILDE,
                               RIGHT_ACTION, VECTOR, QuaternionMonomial,
                               differentiate_monomial, differentiate_sum, evaluate_sum,
                               extremum_residual, fd_derivative, identity_table,
                               vector_identity_table)

from conftest import rand_bq

# -- symbolic oracle: quaternions as 4-tuples of sympy expressions ---------------


def smul(a, b):
    a0, a1, a2, a3 = a
    b0, b1, b2, b3 = b
    return (a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0)


def stilde(a):
    return (a[0], -a[1], -a[2], -a[3])


UNITS = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]


def symbolic_derivative(expr, coords, units):
    total = (0, 0, 0, 0)
    for u, c in zip(units, coords):
        part = smul(u, tuple(sp.diff(e, c) for e in expr))
        total = tuple(sp.expand(t + p) for t, p in zip(total, part))
    return total


def to_bq(t):
    return Biquaternion(*(complex(sp.N(e)) for e in t))


A_SYM = sp.symbols("a0:4")


def a_subs(a):
    return dict(zip(A_SYM, list(a)))


@pytest.mark.parametrize("kind", [D, D_TILDE])
@pytest.mark.parametrize("slot", [Q, Q_TILDE])
def test_unconstrained_table_symbolic(kind, slot):
    qs = sp.symbols("q0:4")
    q = qs if slot == Q else stilde(qs)
    units = UNITS if kind == D else [stilde(u) for u in UNITS]
    res = symbolic_derivative(smul(A_SYM, q), qs, units)
    a = Biquaternion(0.3 + 1j, -2, 0.5j, 1 - 1j)
    assert to_bq(tuple(e.subs(a_subs(a)) for e in res)).isclose(identity_table(kind, slot, a), 1e-14)


@pytest.mark.parametrize("kind", [D, D_TILDE])
@pytest.mark.parametrize("slot", [Q, Q_TILDE])
def test_vector_table_symbolic(kind, slot):
    t, x, y, z = sp.symbols("t x y z", real=True)
    qs = (t, sp.I * x, sp.I * y, sp.I * z)
    q = qs if slot == Q else stilde(qs)
    s = 1 if kind == D else -1
    units = [(1, 0, 0, 0), (0, s * sp.I, 0, 0), (0, 0, s * sp.I, 0), (0, 0, 0, s * sp.I)]
    res = symbolic_derivative(smul(A_SYM, q), (t, x, y, z), units)
    a = Biquaternion(0.3 + 1j, -2, 0.5j, 1 - 1j)
    assert to_bq(tuple(e.subs(a_subs(a)) for e in res)).isclose(vector_identity_table(kind, slot, a), 1e-14)


def test_table_examples():
    assert identity_table(D, Q) == Biquaternion.scalar(-2)
    assert identity_table(D_TILDE, Q, I) == ZERO
    assert vector_identity_table(D, Q) == Biquaternion.scalar(4)
    assert vector_identity_table(D_TILDE, Q_TILDE, ONE) == Biquaternion.scalar(4)
    assert identity_table(D_STAR, Q) == ZERO
    with pytest.raises(ValueError):
        vector_identity_table(D_STAR, Q)
    with pytest.raises(ValueError):
        identity_table("d_bogus", Q)


@pytest.mark.parametrize("kind", [D, D_TILDE])
@pytest.mark.parametrize("slot", [Q, Q_TILDE])
def test_sixteen_entries_by_fd(kind, slot, rng):
    a = rand_bq(rng)
    mono = QuaternionMonomial((a, slot))
    got = fd_derivative(mono.evaluate, rand_bq(rng, 0.5), kind, h=1e-4)
    assert got.isclose(identity_table(kind, slot, a), 1e-7)
    qv = four_vector(*rng.normal(size=4)).base
    got = fd_derivative(mono.evaluate, qv, kind, h=1e-4, constraint=VECTOR)
    assert got.isclose(vector_identity_table(kind, slot, a), 1e-7)


def test_fd_examples(rng):
    q0 = rand_bq(rng)
    assert fd_derivative(lambda q: q, q0, D).isclose(Biquaternion.scalar(-2), 1e-7)
    assert fd_derivative(lambda q: q, four_vector(1, 2, 3, 4).base, D,
                         constraint=VECTOR).isclose(Biquaternion.scalar(4), 1e-7)
    c = rand_bq(rng)
    assert fd_derivative(lambda q: c, q0, D).is_zero(1e-12)
    with pytest.raises(FloatingPointError):
        fd_derivative(lambda q: Biquaternion(float("nan"), 0, 0, 0), q0, D)
    with pytest.raises(ValueError):
        fd_derivative(lambda q: q, q0, D, h=0)


def test_worked_three_term_expansion(rng):
    al, be, ga, de = (rand_bq(rng) for _ in range(4))
    mono = QuaternionMonomial((al, Q, be, Q, ga, Q, de))
    t = conj_quat
    q0 = rand_bq(rng, 0.5)
    q = q0
    want = (-2 * (t(al) * be * q * ga * q * de)
            - 2 * (t(be) * t(q) * t(al) * ga * q * de)
            - 2 * (t(ga) * t(q) * t(be) * t(q) * t(al) * de))
    assert evaluate_sum(differentiate_monomial(mono, D), q0).isclose(want, 1e-12)


def test_constant_monomial_has_zero_derivative(rng):
    assert differentiate_monomial(QuaternionMonomial((rand_bq(rng),)), D) == []


def close_rel(a, b, tol):
    return (a - b).magnitude() <= tol * max(1.0, b.magnitude())


def _random_monomial(rng, degree):
    factors = [rand_bq(rng)]
    for _ in range(degree):
        factors += [Q if rng.random() < 0.5 else Q_TILDE, rand_bq(rng)]
    return QuaternionMonomial(tuple(factors))


@pytest.mark.parametrize("side", [LEFT_ACTION, RIGHT_ACTION])
def test_random_monomials_vs_fd(rng, side):
    for _ in range(20):
        mono = _random_monomial(rng, int(rng.integers(1, 4)))
        q0 = rand_bq(rng, 0.5)
        qv = four_vector(*rng.normal(scale=0.5, size=4)).base
        for kind in (D, D_TILDE):
            sym = evaluate_sum(differentiate_monomial(mono, kind, side=side), q0)
            assert close_rel(sym, fd_derivative(mono.evaluate, q0, kind, side=side), 1e-7)
            sym = evaluate_sum(differentiate_monomial(mono, kind, VECTOR, side), qv)
            assert close_rel(sym, fd_derivative(mono.evaluate, qv, kind, constraint=VECTOR, side=side), 1e-7)


def test_right_action_uses_same_table(rng):
    a = rand_bq(rng)
    q0 = rand_bq(rng)
    # (q a) d = -2 a~, (q~ a) d = 4 a0: the mirror of the left-action table
    got = fd_derivative(lambda q: q * a, q0, D, side=RIGHT_ACTION)
    assert got.isclose(-2 * conj_quat(a), 1e-7)
    got = fd_derivative(lambda q: conj_quat(q) * a, q0, D, side=RIGHT_ACTION)
    assert got.isclose(Biquaternion.scalar(4 * a.w), 1e-7)


def test_star_derivatives_vanish_on_holomorphic(rng):
    mono = _random_monomial(rng, 3)
    q0 = rand_bq(rng, 0.5)
    for kind in (D_STAR, D_DAGGER):
        assert differentiate_monomial(mono, kind) == []
        scale = max(1.0, fd_derivative(mono.evaluate, q0, D).magnitude())
        assert fd_derivative(mono.evaluate, q0, kind).magnitude() <= 1e-7 * scale


def test_star_derivative_of_conjugate(rng):
    # d_star q* = sum e_mu e_mu = -2, the complex-conjugate analogue of d q
    q0 = rand_bq(rng)
    assert fd_derivative(conj_complex, q0, D_STAR).isclose(Biquaternion.scalar(-2), 1e-7)
    assert fd_derivative(conj_complex, q0, D_DAGGER).isclose(Biquaternion.scalar(4), 1e-7)


def test_linearity(rng):
    m1, m2 = _random_monomial(rng, 2), _random_monomial(rng, 3)
    q0 = rand_bq(rng, 0.5)
    both = evaluate_sum(differentiate_sum([m1, m2], D), q0)
    split = evaluate_sum(differentiate_monomial(m1, D), q0) + evaluate_sum(differentiate_monomial(m2, D), q0)
    assert both.isclose(split, 1e-12)


def test_monomial_structure():
    m = QuaternionMonomial((I, J, Q, Q_TILDE))
    assert m.degree == 2
    assert m.factors[0] == K
    with pytest.raises(ValueError):
        QuaternionMonomial((Q, "p"))
    with pytest.raises(TypeError):
        QuaternionMonomial((Q, 3))
    with pytest.raises(ValueError):
        differentiate_monomial(m, D, constraint=VECTOR, side="middle")


def test_extremum_cases(rng):
    norm2 = lambda q: sum(abs(c) ** 2 for c in q)
    assert extremum_residual(norm2, ZERO).is_zero(1e-8)
    c = rand_bq(rng)
    shifted = lambda q: norm2(q - c)
    assert extremum_residual(shifted, c).is_zero(1e-8)
    q0 = rand_bq(rng)
    assert extremum_residual(shifted, q0).isclose(conj_complex(q0 - c), 1e-7)
    # real variable: f = sum of squared components gives 2 (q - c)
    cv, qv = four_vector(*rng.normal(size=4)), four_vector(*rng.normal(size=4))
    sq = lambda q: sum(p * p for p in (q.w.real, *(v.imag for v in q.vec)))
    got = extremum_residual(lambda q: sq(q - cv.base), qv.base, constraint=VECTOR)
    assert got.isclose(2 * (qv.base - cv.base), 1e-7)
    # scalar part of q~ q on a real variable is the real Minkowski square
    assert extremum_residual(lambda q: (conj_quat(q) * q).w, ZERO, constraint=VECTOR).is_zero(1e-8)


def test_extremum_rejects_complex_function(rng):
    with pytest.raises(ValueError):
        extremum_residual(lambda q: q * q, rand_bq(rng))
