"""Command-line verification tool.

Every subcommand prints one JSON report and exits with 0 (pass), 1 (a check
failed) or 2 (usage error or malformed input).
"""
from __future__ import annotations

import argparse
import cmath
import json
import math
import sys
import time
from importlib import resources
from typing import Any, Optional

import numpy as np

from . import dynamics, grassmann, maxwell
from .algebra import ZERO, Biquaternion, J, K, four_vector, minkowski_norm, FourVector
from .fields import ANALYTIC, FD, AnalyticField, constant_field, load_family
from .lorentz import LorentzGenerator, rotate_vector, transform_contravariant
from .matrix import quaternion_residual_column, weyl_dirac_residual
from .spinor import ChiralPair, apply_CPT, lorentz_transform

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# -- report plumbing ---------------------------------------------------------------

def _clean(obj: Any) -> Any:
    """Make a report JSON-safe with floats rounded to 15 significant digits."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(f"{float(obj):.15g}")
        return 0.0 if v == 0 else v
    if isinstance(obj, (complex, np.complexfloating)):
        return [_clean(obj.real), _clean(obj.imag)]
    if isinstance(obj, Biquaternion):
        return _clean(obj.to_json())
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [_clean(v) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def make_report(command: str, inputs: dict, outputs: dict, residuals: dict,
                tolerances: dict, backend: str) -> dict:
    """pass/fail is derived only from residuals against tolerances of the same name."""
    checks = {}
    for name, tol in tolerances.items():
        value = residuals[name]
        if isinstance(tol, dict):  # {"min": ...} means the residual must exceed it
            checks[name] = bool(value > tol["min"])
        else:
            checks[name] = bool(value <= tol)
    return {"command": command, "inputs": inputs, "outputs": outputs,
            "residuals": residuals, "tolerances": tolerances, "checks": checks,
            "passed": all(checks.values()), "backend": backend}


def _parse_json(text: str, what: str) -> Any:
    if text.startswith("@"):
        try:
            with open(text[1:]) as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {what} file: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON for {what}: {exc}") from exc


def _vec3(values, what: str) -> tuple[float, float, float]:
    if values is None or len(values) != 3:
        raise UsageError(f"{what} needs three numbers")
    return tuple(float(v) for v in values)


def _complex(v) -> complex:
    if isinstance(v, (list, tuple)):
        if len(v) != 2:
            raise UsageError(f"complex literal must be [re, im], got {v!r}")
        return complex(float(v[0]), float(v[1]))
    return complex(float(v))


def _tol(args, default: float) -> float:
    return args.tol if args.tol is not None else default


def _field_backend(f: AnalyticField, backend: str) -> AnalyticField:
    return f if backend == ANALYTIC else f.with_backend(FD)


# -- transformations ---------------------------------------------------------------

def _read_object(args):
    given = [n for n in ("quaternion", "vector", "spinor") if getattr(args, n) is not None]
    if len(given) != 1:
        raise UsageError("give exactly one of --quaternion, --vector, --spinor")
    kind = given[0]
    obj = _parse_json(getattr(args, kind), kind)
    if not isinstance(obj, dict):
        raise UsageError(f"{kind} must be a JSON object")
    try:
        if kind == "quaternion":
            return kind, Biquaternion.from_json(obj)
        if kind == "vector":
            unknown = set(obj) - set("txyz")
            if unknown:
                raise UsageError(f"unknown vector keys: {sorted(unknown)}")
            return kind, four_vector(*(float(obj.get(k, 0)) for k in "txyz"))
        return kind, ChiralPair.from_json(obj)
    except (ValueError, TypeError) as exc:
        raise UsageError(str(exc)) from exc


def _transform_report(command: str, args, gen: LorentzGenerator, rotation=None) -> dict:
    kind, obj = _read_object(args)
    tol = _tol(args, 1e-10)
    inputs = {kind: obj if not isinstance(obj, (FourVector, ChiralPair)) else
              (obj.components if kind == "vector" else obj.to_json()),
              "generator": gen.to_json()}
    outputs, residuals, tols = {}, {}, {}
    if kind == "quaternion":
        if rotation is not None:
            axis, angle = rotation
            try:
                out = rotate_vector(obj, axis, angle)
            except ValueError as exc:
                raise UsageError(str(exc)) from exc
        else:
            from .lorentz import exp_biquat
            from .algebra import conj_herm
            L = gen.quaternion
            out = exp_biquat(L) * obj * exp_biquat(conj_herm(L))
        outputs["result"] = out
        from .algebra import qnorm
        residuals["qnorm_change"] = abs(qnorm(out) - qnorm(obj))
        tols["qnorm_change"] = tol
    elif kind == "vector":
        out = transform_contravariant(obj, gen)
        outputs["result"] = list(out.components)
        n0, n1 = minkowski_norm(obj), minkowski_norm(out)
        outputs["minkowski_norm"] = n1.real
        residuals["norm_change"] = abs(n1 - n0)
        tols["norm_change"] = tol * max(1.0, abs(n0))
    else:
        out = lorentz_transform(obj, gen)
        outputs["result"] = out.to_json()
        if rotation is not None:
            turns = rotation[1] / (2 * math.pi)
            if abs(turns - round(turns)) < 1e-12:
                expected = obj if round(turns) % 2 == 0 else -obj
                outputs["sign_flip"] = round(turns) % 2 == 1
                residuals["full_turn"] = max((out.psi_l - expected.psi_l).magnitude(),
                                             (out.psi_r - expected.psi_r).magnitude())
                tols["full_turn"] = tol
    return make_report(command, inputs, outputs, residuals, tols, ANALYTIC)


def cmd_rotate(args) -> dict:
    axis = _vec3(args.axis, "--axis")
    if args.angle is None:
        raise UsageError("--angle is required")
    n = math.sqrt(sum(a * a for a in axis))
    if n == 0:
        raise UsageError("rotation axis must be nonzero")
    gen = LorentzGenerator.rotation(axis, args.angle)
    return _transform_report("rotate", args, gen, rotation=(tuple(a / n for a in axis), args.angle))


def cmd_boost(args) -> dict:
    if args.generator is not None:
        g = _parse_json(args.generator, "generator")
        try:
            gen = LorentzGenerator.from_json(g)
        except (ValueError, TypeError) as exc:
            raise UsageError(str(exc)) from exc
    else:
        gen = LorentzGenerator.boost(_vec3(args.rapidity, "--rapidity"))
    return _transform_report("boost", args, gen)


# -- Dirac ------------------------------------------------------------------------------

DEFAULT_POINTS = [(0.0, 0.0, 0.0, 0.0), (0.3, -0.2, 0.5, 0.1), (-0.7, 0.4, 0.1, -0.6)]


def cmd_dirac(args) -> dict:
    spec = _parse_json(args.spec, "spec")
    if not isinstance(spec, dict):
        raise UsageError("spec must be a JSON object")
    allowed = {"type", "m", "E", "p", "xiL", "chiL", "potential", "points"}
    unknown = set(spec) - allowed
    if unknown:
        raise UsageError(f"unknown spec keys: {sorted(unknown)}")
    kind = spec.get("type", "plane_wave")
    try:
        m = float(spec.get("m", 1.0))
        if kind == "rest":
            p = (0.0, 0.0, 0.0)
        elif kind == "plane_wave":
            p = _vec3(spec.get("p", (0, 0, 0)), "p")
        else:
            raise UsageError(f"unknown spec type {kind!r}")
        on_shell_E = math.sqrt(m * m + sum(c * c for c in p))
        E = float(spec.get("E", on_shell_E))
        amps = dynamics.solve_amplitudes(E, p, m, _complex(spec.get("xiL", 1.0)),
                                         _complex(spec.get("chiL", 0.0)))
        A = load_family(spec["potential"]) if "potential" in spec else constant_field(ZERO, True)
        points = [tuple(float(c) for c in pt) for pt in spec.get("points", DEFAULT_POINTS)]
    except (ValueError, TypeError, KeyError) as exc:
        raise UsageError(str(exc)) from exc
    wave = dynamics.PlaneWaveSpec(E, p, m, amps)
    fields = tuple(_field_backend(f, args.backend) for f in wave.fields())
    A = _field_backend(A, args.backend)
    tol = _tol(args, 1e-10 if args.backend == ANALYTIC else 1e-6)
    quat = oracle = diff = 0.0
    for x in points:
        left, right = dynamics.dirac_residuals(fields, A, m, x)
        q = quaternion_residual_column(left, right)
        w = weyl_dirac_residual(fields, A, m, x)
        quat = max(quat, float(np.abs(q).max()))
        oracle = max(oracle, float(np.abs(w).max()))
        diff = max(diff, float(np.abs(q - w).max()))
    outputs = {"E": E, "on_shell_E": on_shell_E, "on_shell": wave.on_shell(),
               "amplitudes": amps.to_json()}
    if kind == "rest":
        outputs["psi_L_equals_psi_R_J"] = amps.psi_l.isclose(amps.psi_r * J, 1e-12)
    residuals = {"quaternion": quat, "matrix_oracle": oracle, "oracle_difference": diff}
    tols = {"quaternion": tol, "oracle_difference": tol}
    return make_report("dirac", spec, outputs, residuals, tols, args.backend)


# -- Pauli ------------------------------------------------------------------------------

def cmd_pauli(args) -> dict:
    B = args.B
    if len(B) == 1:
        B = (0.0, 0.0, B[0])
    elif len(B) != 3:
        raise UsageError("--B takes one number (along z) or three components")
    B = tuple(float(b) for b in B)
    if args.m <= 0:
        raise UsageError("--m must be positive")
    if all(b == 0 for b in B):
        raise UsageError("--B must be nonzero")
    rng = np.random.default_rng(args.seed)
    pts = [tuple(rng.uniform(-0.5, 0.5, 4)) for _ in range(args.grid)]
    tol = _tol(args, 1e-10)
    oracle = np.sort(np.linalg.eigvalsh(dynamics.pauli_matrix_oracle(B, args.m)))
    worst = 0.0
    eig = oracle
    for x in pts:
        M = dynamics.pauli_constant_B_matrix(B, args.m, x)
        eig = np.sort(np.linalg.eigvals(M).real)
        worst = max(worst, float(np.abs(eig - oracle).max()))
    outputs = {"eigenvalues": list(eig), "oracle_eigenvalues": list(oracle),
               "splitting": float(eig[-1] - eig[0]),
               "kinetic_level": math.sqrt(sum(b * b for b in B)) / (2 * args.m)}
    if args.gaussian_units:
        outputs["gaussian_units"] = {
            "hamiltonian": "(1/2m){p - (e/c)A}^2 - (e hbar/2mc) sigma.B - e A0",
            "spin_splitting": "e hbar |B| / (m c)",
        }
    return make_report("pauli", {"B": B, "m": args.m, "grid": args.grid},
                       outputs, {"spectrum": worst}, {"spectrum": tol}, ANALYTIC)


# -- Maxwell -----------------------------------------------------------------------------

def cmd_maxwell(args) -> dict:
    spec = _parse_json(args.family, "family")
    if not isinstance(spec, dict):
        raise UsageError("family must be a JSON object")
    points = spec.pop("points", DEFAULT_POINTS[1:])
    source = spec.pop("source", "vacuum")
    if source not in ("vacuum", "constructed"):
        raise UsageError("source must be 'vacuum' or 'constructed'")
    try:
        A = load_family(spec)
        points = [tuple(float(c) for c in pt) for pt in points]
    except (ValueError, TypeError) as exc:
        raise UsageError(str(exc)) from exc
    A = _field_backend(A, args.backend)
    tol = _tol(args, 1e-12 if args.backend == ANALYTIC else 1e-8)
    table, worst = [], 0.0
    for x in points:
        j = None
        if source == "constructed":
            cs = maxwell.classical_sources(A, x)
            j = maxwell.source_from_classical(cs["rho"], cs["J"])
        res = maxwell.expand_to_real(maxwell.maxwell_residual(A, j, x))
        table.append({"point": x, "residuals": res})
        worst = max(worst, max(abs(v) for v in res.values()))
    F = maxwell.field_strength(A, points[0])
    outputs = {"table": table, "E": F.E, "B": F.B}
    spec.update({"source": source})
    return make_report("maxwell", spec, outputs, {"max_component": worst},
                       {"max_component": tol}, args.backend)


# -- CPT ----------------------------------------------------------------------------------

def cmd_cpt(args) -> dict:
    obj = _parse_json(args.spinor, "spinor")
    if not isinstance(obj, dict):
        raise UsageError("spinor must be a JSON object")
    try:
        psi0 = ChiralPair.from_json(obj).dirac
    except (ValueError, TypeError) as exc:
        raise UsageError(str(exc)) from exc
    rng = np.random.default_rng(args.seed)
    k = rng.normal(size=4)
    field = lambda x: cmath.exp(1j * float(np.dot(k, x))) * psi0
    cpt = apply_CPT(field)
    worst = 0.0
    for _ in range(args.grid):
        x = tuple(rng.uniform(-1, 1, 4))
        minus_x = tuple(-c for c in x)
        worst = max(worst, (cpt(x) - field(minus_x) * K).magnitude())
    tol = _tol(args, 1e-14)
    return make_report("cpt", obj, {"statement": "CPT psi(x) = psi(-x) K"},
                       {"cpt": worst}, {"cpt": tol}, ANALYTIC)


# -- variation ------------------------------------------------------------------------------

def golden_vary_text() -> str:
    return resources.files("quatwave").joinpath("golden/vary.txt").read_text()


def render_vary(left, right) -> str:
    return ("left: i D psi_L - m psi_R J = 0   (m = 1)\n" + grassmann.canonical_str(left)
            + "\nright: i D~ psi_R + m psi_L J = 0   (m = 1)\n" + grassmann.canonical_str(right) + "\n")


def cmd_vary(args) -> dict:
    out = grassmann.vary_dirac_lagrangian(1.0, cyclic=args.cyclic)
    text = render_vary(out["left"], out["right"])
    golden = golden_vary_text()
    mismatch = 0.0 if text == golden else 1.0
    return make_report("vary", {"m": 1.0, "cyclic": args.cyclic},
                       {"derived": text.splitlines()},
                       {"golden_mismatch": mismatch}, {"golden_mismatch": 0.0}, ANALYTIC)


# -- selftest ---------------------------------------------------------------------------------

def cmd_selftest(args) -> dict:
    from .selftest import run_all

    results = run_all(seed=args.seed)
    residuals = {name: 0.0 if ok else 1.0 for name, ok in results.items()}
    return make_report("selftest", {"seed": args.seed}, {"checks": results},
                       residuals, {name: 0.0 for name in results}, args.backend)


# -- entry point ---------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--backend", choices=(ANALYTIC, FD), default=ANALYTIC,
                        help="derivative backend for field evaluations")
    common.add_argument("--tol", type=float, default=None, help="override the pass tolerance")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled points")
    common.add_argument("--gaussian-units", action="store_true",
                        help="add Gaussian-unit formulas to the report (display only)")
    common.add_argument("--timing", action="store_true",
                        help="include wall time (makes output non-reproducible)")

    parser = argparse.ArgumentParser(prog="quatwave", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def objects(p):
        p.add_argument("--quaternion", help="biquaternion JSON {w,x,y,z: [re, im]}")
        p.add_argument("--vector", help="four-vector JSON {t,x,y,z}")
        p.add_argument("--spinor", help="spinor JSON {xiL,chiL,xiR,chiR}")

    p = sub.add_parser("rotate", parents=[common], help="rotate a quaternion, vector or spinor")
    objects(p)
    p.add_argument("--axis", type=float, nargs=3, required=True)
    p.add_argument("--angle", type=float, required=True)
    p.set_defaults(func=cmd_rotate)

    p = sub.add_parser("boost", parents=[common], help="apply a Lorentz transformation")
    objects(p)
    p.add_argument("--rapidity", type=float, nargs=3)
    p.add_argument("--generator", help='JSON {"kappa": [..], "lambda": [..]}')
    p.set_defaults(func=cmd_boost)

    p = sub.add_parser("dirac", parents=[common], help="plane-wave Dirac residuals vs the matrix oracle")
    p.add_argument("--spec", required=True, help="JSON plane-wave spec or @file")
    p.set_defaults(func=cmd_dirac)

    p = sub.add_parser("pauli", parents=[common], help="Pauli spectrum in a constant field")
    p.add_argument("--B", type=float, nargs="+", default=[1.0])
    p.add_argument("--m", type=float, default=1.0)
    p.add_argument("--grid", type=int, default=3, help="number of sample points")
    p.set_defaults(func=cmd_pauli)

    p = sub.add_parser("maxwell", parents=[common], help="8-component Maxwell residuals")
    p.add_argument("--family", required=True, help='JSON {"family": .., "params": {..}} or @file')
    p.set_defaults(func=cmd_maxwell)

    p = sub.add_parser("cpt", parents=[common], help="check CPT = right multiplication by K")
    p.add_argument("--spinor", required=True)
    p.add_argument("--grid", type=int, default=20)
    p.set_defaults(func=cmd_cpt)

    p = sub.add_parser("vary", parents=[common], help="derive the Dirac equations by variation")
    p.add_argument("--cyclic", action="store_true", help="use the cyclic rewrite of the mass term")
    p.set_defaults(func=cmd_vary)

    p = sub.add_parser("selftest", parents=[common], help="run every quick check")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_USAGE
    start = time.perf_counter()
    try:
        report = args.func(args)
    except UsageError as exc:
        print(f"quatwave {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.timing:
        report["wall_time"] = time.perf_counter() - start
    print(json.dumps(_clean(report), indent=2, sort_keys=True))
    return EXIT_PASS if report["passed"] else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
