import json
import math

import pytest

from quatwave.algebra import ONE, Biquaternion, I
from quatwave.fields import (FAMILIES, AnalyticField, constant_B, constant_field, coulomb,
                             custom_polynomial, d_conj, d_plain, from_potential, from_sympy,
                             load_config, load_family, nabla, plane_wave_em, pure_gauge)

X0 = (0.2, -0.4, 0.7, 0.3)


def test_sympy_field_values_and_derivatives():
    f = from_sympy(["t*x", "I*y**2", "z", "exp(t)"])
    v = f(X0)
    assert v.isclose(Biquaternion(0.2 * -0.4, 0.49j, 0.3, math.exp(0.2)), 1e-14)
    g = f.gradient(X0)
    assert g[0].isclose(Biquaternion(-0.4, 0, 0, math.exp(0.2)), 1e-14)
    assert f.second(X0, 0, 1).isclose(Biquaternion(1, 0, 0, 0), 1e-14)


def test_fd_backend_matches_analytic(rng):
    f = from_sympy(["sin(t)*x + y*z", "I*cos(x*y)", "t**3 - z", "exp(-x**2)*y"])
    fd = f.with_backend("fd")
    assert fd.backend == "fd" and f.backend == "analytic"
    for _ in range(5):
        x = tuple(rng.uniform(-1, 1, 4))
        for mu in range(4):
            assert fd.partial(x, mu).isclose(f.partial(x, mu), 1e-7)
            for nu in range(4):
                assert fd.second(x, mu, nu).isclose(f.second(x, mu, nu), 1e-8)


def test_backend_errors():
    f = AnalyticField(lambda x: ONE)
    with pytest.raises(ValueError):
        f.with_backend("analytic")
    with pytest.raises(ValueError):
        f.with_backend("spectral")


def test_non_finite_rejected():
    f = AnalyticField(lambda x: Biquaternion(float("inf"), 0, 0, 0))
    with pytest.raises(FloatingPointError):
        f(X0)


def test_gauge_potential_must_be_hermitean():
    bad = constant_field(I, gauge_potential=True)
    with pytest.raises(ValueError):
        bad(X0)
    good = from_potential("x", ("t", "0", "y"))
    assert good(X0).isclose(Biquaternion(-0.4, 0.2j, 0, 0.7j), 1e-15)


def test_derivative_operators():
    f = from_sympy(["t", "x", "0", "0"])  # q = t + x I
    # d = d_t + i(I d_x + ...): 1 + i I I = 1 - i
    assert d_plain(f, X0).isclose(Biquaternion(1 - 1j, 0, 0, 0), 1e-15)
    assert d_conj(f, X0).isclose(Biquaternion(1 + 1j, 0, 0, 0), 1e-15)
    assert nabla(f, X0).isclose(-ONE, 1e-15)


def test_plane_wave_em_is_transverse():
    A = plane_wave_em((0.0, 0.0, 2.0), (1.0, 0.0, 1.0))
    a = A((0.0, 0.0, 0.0, 0.0))
    assert abs(a.z) < 1e-15 and abs(a.x - 1j) < 1e-15
    with pytest.raises(ValueError):
        plane_wave_em((0, 0, 1), (0, 0, 3))
    with pytest.raises(ValueError):
        plane_wave_em((0, 0, 0))


def test_coulomb_guard():
    A = coulomb(2.0, (0.0, 0.0, 1.0))
    assert A((0, 0, 0, 0)).isclose(Biquaternion(2.0, 0, 0, 0), 1e-14)
    with pytest.raises(ValueError):
        A((0, 0, 0, 1.0005))


def test_pure_gauge_meta_and_potential():
    A = pure_gauge(0.7, (1.0, 2.0, 0.0), 0.5)
    phi = A.meta["phi"]
    x = X0
    arg = x[1] + 2 * x[2] - 0.5 * x[0]
    assert abs(phi(*x) - 0.7 * math.sin(arg)) < 1e-15
    a = A(x)
    assert abs(a.w - (-0.5 * 0.7 * math.cos(arg))) < 1e-15


def test_constant_B_symmetric_gauge():
    A = constant_B((0, 0, 2.0))
    a = A((0, 1.0, 0.5, 0))
    assert a.isclose(Biquaternion(0, -0.5j, 1.0j, 0), 1e-15)


def test_custom_polynomial_and_loaders(tmp_path):
    A = custom_polynomial("x*y", "t", "0", "z**2")
    assert A(X0).isclose(Biquaternion(-0.28, 0.2j, 0, 0.09j), 1e-14)
    with pytest.raises(ValueError):
        custom_polynomial("w")
    fam = load_family({"family": "constant_B", "params": {"B": [0, 0, 1]}})
    assert fam.meta["B"] == [0.0, 0.0, 1.0]
    with pytest.raises(ValueError):
        load_family({"params": {}})
    with pytest.raises(ValueError):
        load_family({"family": "laser"})
    with pytest.raises(ValueError):
        load_family({"family": "coulomb", "params": {"mass": 1}})
    p = tmp_path / "cfg.json"
    p.write_text(json.dumps({"family": "coulomb"}))
    assert load_config(str(p)) == {"family": "coulomb"}
    assert set(FAMILIES) == {"plane_wave_em", "constant_B", "coulomb", "pure_gauge", "custom_polynomial"}
