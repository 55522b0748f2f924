"""Exterior (Grassmann) algebra with biquaternion coefficients.

Terms are keyed by strictly increasing tuples of generator indices.  Generators
anticommute among themselves and commute with the quaternion units, so a
product of two terms multiplies the coefficients with the Hamilton product and
picks up the parity of the merge permutation.

Conjugations on fermionic elements:

* complex conjugation reverses the generator order, replaces each generator by
  its conjugate partner and conjugates the coefficient, so (xi chi)* = -xi* chi*;
* quaternionic conjugation acts on the coefficient only, which gives
  (xi chi)~ = -chi~ xi~ for spinor-valued factors;
* hermitean conjugation is the composition, (xi chi)^dagger = chi^dagger xi^dagger.

The default algebra has the four spinor components, their conjugates and four
opaque "kinetic" generators (with conjugates) standing for the values of the
covariant derivatives at a point.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence, Union

from .algebra import ONE, ZERO, Biquaternion, I, J, K, conj_complex, conj_quat

__all__ = [
    "GrassmannAlgebra",
    "ExteriorElement",
    "DIRAC_ALGEBRA",
    "ext_mul",
    "conj_complex_ferm",
    "conj_quat_ferm",
    "conj_herm_ferm",
    "grassmann_derivative",
    "FermionicSpinors",
    "spinor_symbols",
    "spinor_derivative",
    "lagrangian_terms",
    "lagrangian_from_conjugations",
    "vary_dirac_lagrangian",
    "expected_dirac_equations",
    "cyclic_real_part",
    "mass_term_expansion",
    "expected_mass_components",
    "canonical_str",
]

Coefficient = Union[Biquaternion, complex, float, int]


class GrassmannAlgebra:
    """Fixed, ordered set of generator names with a conjugation pairing."""

    def __init__(self, names: Sequence[str], partners: Mapping[str, str]):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("generator names must be unique")
        self.index = {n: i for i, n in enumerate(self.names)}
        conj = {}
        for a, b in partners.items():
            conj[self.index[a]] = self.index[b]
            conj[self.index[b]] = self.index[a]
        if len(conj) != len(self.names):
            raise ValueError("every generator needs a conjugate partner")
        self.conj = conj

    def gen(self, name: str, coeff: Coefficient = ONE) -> ExteriorElement:
        if name not in self.index:
            raise KeyError(f"unknown generator {name!r}")
        return ExteriorElement(self, {(self.index[name],): _bq(coeff)})

    def const(self, c: Coefficient) -> ExteriorElement:
        return ExteriorElement(self, {(): _bq(c)})

    def zero(self) -> ExteriorElement:
        return ExteriorElement(self, {})

    def __repr__(self):
        return f"GrassmannAlgebra({len(self.names)} generators)"


_FIELDS = ("xiL", "chiL", "xiR", "chiR")
_KINETIC = ("k1", "k2", "k3", "k4")
_NAMES = _FIELDS + tuple(n + "*" for n in _FIELDS) + _KINETIC + tuple(n + "*" for n in _KINETIC)
DIRAC_ALGEBRA = GrassmannAlgebra(_NAMES, {n: n + "*" for n in _FIELDS + _KINETIC})


def _bq(c: Coefficient) -> Biquaternion:
    return c if isinstance(c, Biquaternion) else Biquaternion.scalar(c)


def _merge_sign(a: tuple, b: tuple) -> int:
    """Sign of sorting a+b, or 0 if a generator repeats."""
    if set(a) & set(b):
        return 0
    inversions = sum(1 for i in a for j in b if i > j)
    return -1 if inversions % 2 else 1


def _sort_sign(seq: Sequence[int]) -> tuple[int, tuple]:
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0, ()
    inv = sum(1 for p in range(len(seq)) for q in range(p + 1, len(seq)) if seq[p] > seq[q])
    return (-1 if inv % 2 else 1), tuple(sorted(seq))


class ExteriorElement:
    """Immutable Grassmann element; ``terms`` maps generator tuples to coefficients."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: GrassmannAlgebra, terms: Mapping[tuple, Biquaternion]):
        clean = {}
        for key, c in terms.items():
            key = tuple(key)
            if list(key) != sorted(set(key)):
                raise ValueError(f"generator tuple {key} is not strictly increasing")
            c = _bq(c)
            if not c.is_zero():
                clean[key] = c
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("ExteriorElement is immutable")

    def _check(self, other: ExteriorElement) -> None:
        if other.algebra is not self.algebra:
            raise ValueError("cannot combine elements of different Grassmann algebras")

    def _coerce(self, other) -> ExteriorElement:
        if isinstance(other, ExteriorElement):
            self._check(other)
            return other
        if isinstance(other, (Biquaternion, complex, float, int)):
            return self.algebra.const(other)
        raise TypeError(f"cannot combine ExteriorElement with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, ZERO) + c
        return ExteriorElement(self.algebra, out)

    __radd__ = __add__

    def __neg__(self):
        return ExteriorElement(self.algebra, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        return ext_mul(self, self._coerce(other))

    def __rmul__(self, other):
        return ext_mul(self._coerce(other), self)

    def __truediv__(self, c):
        return ExteriorElement(self.algebra, {k: v / c for k, v in self.terms.items()})

    @property
    def degrees(self) -> set[int]:
        return {len(k) for k in self.terms}

    def scalar_coefficients(self) -> ExteriorElement:
        """Keep only the scalar (1) part of every coefficient."""
        return ExteriorElement(self.algebra,
                               {k: Biquaternion.scalar(c.w) for k, c in self.terms.items()})

    def is_zero(self, tol: float = 0.0) -> bool:
        return all(c.magnitude() <= tol for c in self.terms.values())

    def isclose(self, other, tol: float = 1e-12) -> bool:
        return (self - other).is_zero(tol)

    def __eq__(self, other):
        if not isinstance(other, ExteriorElement):
            return NotImplemented
        return self.algebra is other.algebra and self.isclose(other, 0.0)

    __hash__ = None

    def __repr__(self):
        return f"ExteriorElement({canonical_str(self)})"


def ext_mul(u: ExteriorElement, v: ExteriorElement) -> ExteriorElement:
    u._check(v)
    out: dict = {}
    for ka, ca in u.terms.items():
        for kb, cb in v.terms.items():
            s = _merge_sign(ka, kb)
            if s == 0:
                continue
            key = tuple(sorted(ka + kb))
            out[key] = out.get(key, ZERO) + s * (ca * cb)
    return ExteriorElement(u.algebra, out)


def conj_complex_ferm(u: ExteriorElement) -> ExteriorElement:
    alg = u.algebra
    out: dict = {}
    for key, c in u.terms.items():
        s, new = _sort_sign([alg.conj[g] for g in reversed(key)])
        out[new] = out.get(new, ZERO) + s * conj_complex(c)
    return ExteriorElement(alg, out)


def conj_quat_ferm(u: ExteriorElement) -> ExteriorElement:
    return ExteriorElement(u.algebra, {k: conj_quat(c) for k, c in u.terms.items()})


def conj_herm_ferm(u: ExteriorElement) -> ExteriorElement:
    return conj_quat_ferm(conj_complex_ferm(u))


def grassmann_derivative(u: ExteriorElement, name: str, side: str = "left") -> ExteriorElement:
    """Derivative with respect to one generator, acting from the left or the right."""
    g = u.algebra.index[name]
    out: dict = {}
    for key, c in u.terms.items():
        if g not in key:
            continue
        p = key.index(g)
        sign = (-1) ** p if side == "left" else (-1) ** (len(key) - 1 - p)
        new = key[:p] + key[p + 1:]
        out[new] = out.get(new, ZERO) + sign * c
    return ExteriorElement(u.algebra, out)


# -- spinor symbols ------------------------------------------------------------

P_L = (ONE + 1j * K) / 2
P_R = (ONE - 1j * K) / 2


@dataclass(frozen=True)
class FermionicSpinors:
    psi_l: ExteriorElement
    psi_r: ExteriorElement
    kin_l: ExteriorElement
    kin_r: ExteriorElement


def spinor_symbols(alg: GrassmannAlgebra = DIRAC_ALGEBRA) -> FermionicSpinors:
    """psi_L = xiL P_L + chiL J P_L, psi_R = -xiR J P_R + chiR P_R and the kinetic stand-ins.

    ``kin_l`` (for i D psi_L) lives in the left ideal, ``kin_r`` (for i D~ psi_R)
    in the right ideal, built the same way from the opaque generators k1..k4.
    """
    g = alg.gen
    left = lambda a, b: g(a, P_L) + g(b, J * P_L)
    right = lambda a, b: g(a, -(J * P_R)) + g(b, P_R)
    return FermionicSpinors(left("xiL", "chiL"), right("xiR", "chiR"),
                            left("k1", "k2"), right("k3", "k4"))


# component derivatives assembled from the Dirac-spinor components
# psi_t = (xiL + chiR)/2, psi_x = i(xiR + chiL)/2, psi_y = (chiL - xiR)/2, psi_z = i(xiL - chiR)/2
_STAR_OPS = (
    (("xiL*", 1), ("chiR*", 1)),
    (("chiL*", 1j), ("xiR*", 1j)),
    (("chiL*", 1), ("xiR*", -1)),
    (("xiL*", 1j), ("chiR*", -1j)),
)
_PLAIN_OPS = (
    (("xiL", 1), ("chiR", 1)),
    (("chiL", -1j), ("xiR", -1j)),
    (("chiL", 1), ("xiR", -1)),
    (("xiL", -1j), ("chiR", 1j)),
)
_UNITS = (ONE, I, J, K)
_UNITS_TILDE = (ONE, -I, -J, -K)


def spinor_derivative(expr: ExteriorElement, which: str) -> ExteriorElement:
    """Derivative with respect to a spinor symbol.

    ``which`` is one of ``"psiL^dag"``, ``"psiR^dag"`` (acting to the right,
    ``1/2 d* P``) or ``"psiL"``, ``"psiR"`` (acting from the right, ``1/2 P d~``).
    """
    ops = {"psiL^dag": (P_L, True), "psiR^dag": (P_R, True),
           "psiL": (P_L, False), "psiR": (P_R, False)}
    if which not in ops:
        raise ValueError(f"unknown spinor derivative {which!r}; choose from {sorted(ops)}")
    proj, daggered = ops[which]
    for key in expr.terms:
        if len(key) > 2:
            raise ValueError("spinor derivatives are defined for expressions of degree <= 2")
    total = expr.algebra.zero()
    if daggered:
        for e, comp in zip(_UNITS, _STAR_OPS):
            part = expr.algebra.zero()
            for name, c in comp:
                part = part + c * grassmann_derivative(expr, name, "left")
            total = total + (e * proj / 2) * part
    else:
        for e, comp in zip(_UNITS_TILDE, _PLAIN_OPS):
            part = expr.algebra.zero()
            for name, c in comp:
                part = part + c * grassmann_derivative(expr, name, "right")
            total = total + part * (proj * e / 2)
    return total


# -- the Dirac Lagrangian --------------------------------------------------------

def lagrangian_terms(m: float, alg: GrassmannAlgebra = DIRAC_ALGEBRA) -> list[ExteriorElement]:
    """The eight expanded terms, written out by hand."""
    s = spinor_symbols(alg)
    dag, star, til = conj_herm_ferm, conj_complex_ferm, conj_quat_ferm
    pl, pr, kl, kr = s.psi_l, s.psi_r, s.kin_l, s.kin_r
    return [
        dag(pl) * kl,
        dag(pr) * kr,
        -(til(pl) * star(kl)),
        -(til(pr) * star(kr)),
        -m * (dag(pl) * pr * J),
        -m * (J * til(pr) * star(pl)),
        m * (til(pl) * star(pr) * J),
        m * (J * dag(pr) * pl),
    ]


def lagrangian_from_conjugations(m: float, alg: GrassmannAlgebra = DIRAC_ALGEBRA) -> list[ExteriorElement]:
    """Kinetic terms, mass term and its q.c., plus the complex conjugate of each."""
    s = spinor_symbols(alg)
    dag = conj_herm_ferm
    mass = -m * (dag(s.psi_l) * s.psi_r * J)
    base = [dag(s.psi_l) * s.kin_l, dag(s.psi_r) * s.kin_r, mass, conj_quat_ferm(mass)]
    return base[:2] + [conj_complex_ferm(t) for t in base[:2]] + base[2:] + \
        [conj_complex_ferm(t) for t in base[2:]]


def _sum(items: Iterable[ExteriorElement], alg: GrassmannAlgebra) -> ExteriorElement:
    total = alg.zero()
    for t in items:
        total = total + t
    return total


def expected_dirac_equations(m: float, alg: GrassmannAlgebra = DIRAC_ALGEBRA) -> tuple[ExteriorElement, ExteriorElement]:
    """Hand-written ``i D psi_L - m psi_R J`` and ``i D~ psi_R + m psi_L J``."""
    s = spinor_symbols(alg)
    return s.kin_l - m * (s.psi_r * J), s.kin_r + m * (s.psi_l * J)


def vary_dirac_lagrangian(m: float, alg: GrassmannAlgebra = DIRAC_ALGEBRA,
                          cyclic: bool = False) -> dict:
    """Vary the expanded Lagrangian with respect to psi_L^dag and psi_R^dag.

    With ``cyclic=True`` the right-handed mass bracket ``T + T~`` (the pair
    with J on the left of psi_R^dag) is replaced by ``T' + T'~`` where ``T'``
    moves J to the right end.  Only twice the scalar part of ``T`` enters the
    bracket, so the cyclic property makes this an identity.
    """
    terms = lagrangian_terms(m, alg)
    if cyclic:
        s = spinor_symbols(alg)
        moved = m * (conj_herm_ferm(s.psi_r) * s.psi_l * J)
        terms[6], terms[7] = conj_quat_ferm(moved), moved
    lag = _sum(terms, alg)
    return {"left": spinor_derivative(lag, "psiL^dag"),
            "right": spinor_derivative(lag, "psiR^dag"),
            "lagrangian": lag}


def cyclic_real_part(a, b, c, tol: float = 1e-12) -> dict:
    """Compare scalar(abc) with scalar(bca), with the graded sign for fermions."""
    if all(isinstance(v, Biquaternion) for v in (a, b, c)):
        lhs, rhs = (a * b * c).w, (b * c * a).w
        return {"lhs": lhs, "rhs": rhs, "sign": 1, "ok": abs(lhs - rhs) <= tol}
    alg = next(v.algebra for v in (a, b, c) if isinstance(v, ExteriorElement))
    a, b, c = (v if isinstance(v, ExteriorElement) else alg.const(v) for v in (a, b, c))
    da, dbc = a.degrees, (b * c).degrees
    if len(da) > 1 or len(dbc) > 1:
        raise ValueError("graded cyclicity needs homogeneous factors")
    ka = next(iter(da), 0)
    kbc = next(iter(dbc), 0)
    sign = -1 if (ka * kbc) % 2 else 1
    lhs = (a * b * c).scalar_coefficients()
    rhs = (b * c * a).scalar_coefficients() * sign
    return {"lhs": lhs, "rhs": rhs, "sign": sign, "ok": lhs.isclose(rhs, tol)}


def mass_term_expansion(insert: Biquaternion = J, alg: GrassmannAlgebra = DIRAC_ALGEBRA) -> ExteriorElement:
    """psi_L^dag psi_R X + q.c. + c.c. for the insertion X (J, or i I)."""
    s = spinor_symbols(alg)
    t = conj_herm_ferm(s.psi_l) * s.psi_r * insert
    t = t + conj_quat_ferm(t)
    return t + conj_complex_ferm(t)


def expected_mass_components(alg: GrassmannAlgebra = DIRAC_ALGEBRA) -> ExteriorElement:
    g = alg.gen
    return (g("xiL*") * g("xiR") + g("chiL*") * g("chiR")
            + g("xiR*") * g("xiL") + g("chiR*") * g("chiL"))


def _fmt(c: complex) -> str:
    re, im = round(c.real, 12) + 0.0, round(c.imag, 12) + 0.0
    return f"{re:.12g}{im:+.12g}i"


def canonical_str(u: ExteriorElement) -> str:
    """Deterministic rendering: terms by degree then generator order."""
    if not u.terms:
        return "0"
    lines = []
    for key in sorted(u.terms, key=lambda k: (len(k), k)):
        c = u.terms[key]
        gens = " ".join(u.algebra.names[g] for g in key) or "1"
        coeff = ", ".join(_fmt(v) for v in c)
        lines.append(f"{gens} : [{coeff}]")
    return "\n".join(lines)
