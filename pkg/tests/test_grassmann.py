import itertools
from importlib import resources

import pytest

from quatwave.algebra import ONE, I, J, K, conj_complex, conj_herm, conj_quat
from quatwave.cli import render_vary
from quatwave.grassmann import (DIRAC_ALGEBRA, P_R, GrassmannAlgebra, canonical_str,
                                conj_complex_ferm, conj_herm_ferm, conj_quat_ferm,
                                cyclic_real_part, expected_dirac_equations,
                                expected_mass_components, ext_mul, grassmann_derivative,
                                lagrangian_from_conjugations, lagrangian_terms,
                                mass_term_expansion, spinor_derivative, spinor_symbols,
                                vary_dirac_lagrangian)

from conftest import rand_bq

ALG8 = GrassmannAlgebra(["a", "b", "c", "d", "a*", "b*", "c*", "d*"],
                        {n: n + "*" for n in "abcd"})
G = [ALG8.gen(n) for n in ALG8.names]


def test_pairs_anticommute_and_square_to_zero():
    for g, h in itertools.product(G, repeat=2):
        assert g * h == -(h * g)
    for g in G:
        assert (g * g).is_zero()


def test_generators_commute_with_units():
    for g in G:
        for u in (I, J, K):
            assert g * u == u * g


def test_associativity_on_triples(rng):
    for g, h, k in itertools.combinations(G, 3):
        assert (g * h) * k == g * (h * k)
    for _ in range(100):
        els = []
        for _ in range(3):
            e = ALG8.const(rand_bq(rng))
            for n in rng.choice(ALG8.names, 2, replace=False):
                e = e + ALG8.gen(str(n), rand_bq(rng))
            els.append(e)
        a, b, c = els
        assert ext_mul(ext_mul(a, b), c).isclose(ext_mul(a, ext_mul(b, c)), 1e-10)


def test_mixed_algebras_rejected():
    with pytest.raises(ValueError):
        G[0] * DIRAC_ALGEBRA.gen("xiL")
    with pytest.raises(TypeError):
        G[0] * "x"


def test_immutable():
    with pytest.raises(AttributeError):
        G[0].terms = {}


def test_degree_zero_conjugations_reduce(rng):
    a = rand_bq(rng)
    c = ALG8.const(a)
    assert conj_complex_ferm(c) == ALG8.const(conj_complex(a))
    assert conj_quat_ferm(c) == ALG8.const(conj_quat(a))
    assert conj_herm_ferm(c) == ALG8.const(conj_herm(a))


def test_bilinear_sign_rules(rng):
    # all 16 ordered pairs of the field generators, each carrying a random biquaternion
    for na, nb in itertools.product("abcd", repeat=2):
        xi, chi = ALG8.gen(na, rand_bq(rng)), ALG8.gen(nb, rand_bq(rng))
        prod = xi * chi
        assert conj_complex_ferm(prod).isclose(-(conj_complex_ferm(xi) * conj_complex_ferm(chi)), 1e-12)
        assert conj_quat_ferm(prod).isclose(-(conj_quat_ferm(chi) * conj_quat_ferm(xi)), 1e-12)
        assert conj_herm_ferm(prod).isclose(conj_herm_ferm(chi) * conj_herm_ferm(xi), 1e-12)


def test_herm_rule_on_spinors(rng):
    s = spinor_symbols()
    for _ in range(50):
        xi = s.psi_l * rand_bq(rng)
        chi = s.psi_r * rand_bq(rng)
        assert conj_herm_ferm(xi * chi).isclose(conj_herm_ferm(chi) * conj_herm_ferm(xi), 1e-12)


def test_grassmann_derivative_sides():
    a, b = ALG8.gen("a"), ALG8.gen("b")
    assert grassmann_derivative(a * b, "a", "left") == b
    assert grassmann_derivative(a * b, "b", "left") == -a
    assert grassmann_derivative(a * b, "b", "right") == a
    assert grassmann_derivative(a * b, "a", "right") == -b


def test_spinor_derivative_examples(rng):
    s = spinor_symbols()
    alg = DIRAC_ALGEBRA
    c = alg.gen("k3", rand_bq(rng)) + alg.const(rand_bq(rng))
    assert spinor_derivative(conj_herm_ferm(s.psi_l) * c, "psiL^dag").isclose(c, 1e-14)
    got = spinor_derivative(conj_complex_ferm(s.psi_l), "psiL^dag")
    assert got.isclose(alg.const(-P_R), 1e-15)
    assert spinor_derivative(conj_herm_ferm(s.psi_r) * s.psi_r, "psiL^dag").is_zero()
    assert spinor_derivative(s.psi_l, "psiL").isclose(alg.const(ONE), 1e-15)
    assert spinor_derivative(s.psi_r, "psiR").isclose(alg.const(ONE), 1e-15)


def test_spinor_derivative_errors():
    s = spinor_symbols()
    with pytest.raises(ValueError):
        spinor_derivative(s.psi_l, "psiX")
    with pytest.raises(ValueError):
        spinor_derivative(s.psi_l * s.psi_r * s.kin_l, "psiL")


def test_lagrangian_two_ways():
    for m in (0.0, 1.0, 2.5):
        for a, b in zip(lagrangian_terms(m), lagrangian_from_conjugations(m)):
            assert a.isclose(b, 1e-14)


def test_variation_massless():
    out = vary_dirac_lagrangian(0.0)
    s = spinor_symbols()
    assert out["left"].isclose(s.kin_l, 1e-14)
    assert out["right"].isclose(s.kin_r, 1e-14)


@pytest.mark.parametrize("cyclic", [False, True])
def test_variation_massive(cyclic):
    for m in (1.0, 0.37):
        out = vary_dirac_lagrangian(m, cyclic=cyclic)
        left, right = expected_dirac_equations(m)
        assert out["left"].isclose(left, 1e-13)
        assert out["right"].isclose(right, 1e-13)


def test_cyclic_rewrite_preserves_lagrangian_real_part():
    plain = vary_dirac_lagrangian(1.0)["lagrangian"]
    moved = vary_dirac_lagrangian(1.0, cyclic=True)["lagrangian"]
    assert plain.scalar_coefficients().isclose(moved.scalar_coefficients(), 1e-14)


def test_cyclic_real_part(rng):
    a, b, c = rand_bq(rng), rand_bq(rng), rand_bq(rng)
    assert cyclic_real_part(a, b, c)["ok"]
    rep = cyclic_real_part(I, I, I)
    assert rep["lhs"] == 0 and rep["rhs"] == 0
    s = spinor_symbols()
    rep = cyclic_real_part(J, conj_herm_ferm(s.psi_l), s.psi_r)
    assert rep["ok"] and rep["sign"] == 1
    rep = cyclic_real_part(s.psi_l, conj_herm_ferm(s.psi_r), J)
    assert rep["ok"] and rep["sign"] == -1


def test_mass_term_components():
    assert mass_term_expansion(J).isclose(expected_mass_components(), 1e-15)
    assert mass_term_expansion(1j * I).isclose(expected_mass_components(), 1e-15)
    assert mass_term_expansion(ONE).is_zero(1e-15)


def test_vary_matches_golden():
    out = vary_dirac_lagrangian(1.0)
    text = resources.files("quatwave").joinpath("golden/vary.txt").read_text()
    assert render_vary(out["left"], out["right"]) == text


def test_canonical_str_is_deterministic():
    s = spinor_symbols()
    e = s.psi_l * conj_herm_ferm(s.psi_r)
    assert canonical_str(e) == canonical_str(ExteriorCopy(e))
    assert canonical_str(DIRAC_ALGEBRA.zero()) == "0"


def ExteriorCopy(e):
    # rebuild with terms inserted in reverse order
    from quatwave.grassmann import ExteriorElement
    return ExteriorElement(e.algebra, dict(reversed(list(e.terms.items()))))
