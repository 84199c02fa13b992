"""Command-line front end: ``twistor verify|singular|reduce|area|bubble|family``.

Exit status: 0 success, 1 a check failed, 2 usage or parse error,
3 numerical accuracy failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import canonical as can
from .curve import (fullness_ratio, horizontality_error, is_infinite,
                    singularity_report)
from .document import curve_to_document, dumps, load
from .errors import (DocumentError, DomainError, PreconditionError, QuadratureAccuracyError,
                     ResolutionError, TwistorError)
from .geometry import AREA_TOL, annulus_bound, annulus_mass, bubble_limit, bubble_profile, induced_area
from .invariance import INVARIANCE_TOL, invariance_check

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_NUMERICAL = 0, 1, 2, 3
REDUCE_TOL = 1e-8


class UsageError(Exception):
    pass


def _jsonable(v):
    if isinstance(v, dict):
        return {str(_key(k)): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, np.ndarray):
        return _jsonable(v.tolist())
    if isinstance(v, (complex, np.complexfloating)):
        return [_num(v.real), _num(v.imag)]
    if isinstance(v, (np.floating, float)):
        return _num(v)
    if isinstance(v, np.integer):
        return int(v)
    if hasattr(v, "__dataclass_fields__"):
        return _jsonable(vars(v))
    return v


def _num(x):
    x = float(x)
    return x if math.isfinite(x) else ("inf" if x > 0 else "-inf" if x < 0 else "nan")


def _key(k):
    if isinstance(k, complex):
        return "inf" if is_infinite(k) else repr(k)
    return k


def _emit(args, payload) -> None:
    text = payload if isinstance(payload, str) else json.dumps(_jsonable(payload), indent=2)
    if getattr(args, "output", None):
        Path(args.output).write_text(text + "\n", encoding="utf-8")
    else:
        sys.stdout.write(text + "\n")


def _point(p):
    return "inf" if is_infinite(p) else [p.real, p.imag]


# -- subcommands -------------------------------------------------------------

def cmd_verify(args) -> int:
    c, _ = load(args.input)
    tol = args.tol
    horiz = horizontality_error(c)
    ratio = fullness_ratio(c)
    full = c.degree >= 3 and ratio > 1e-8
    report = {
        "degree": c.degree,
        "horizontality_residual": horiz,
        "horizontal": horiz <= tol,
        "fullness_ratio": ratio,
        "linearly_full": full,
    }
    if full:
        w = invariance_check(c, args.invariance_tol)
        report["invariant"] = w.invariant
        report["beta"] = w.beta
        report["invariance_residual"] = w.residual
    ok = report["horizontal"] and full
    if args.require_invariant:
        ok = ok and report.get("invariant", False)
    report["passed"] = bool(ok)
    _emit(args, report)
    return EXIT_OK if ok else EXIT_FAILED


def cmd_singular(args) -> int:
    c, _ = load(args.input)
    rep = singularity_report(c)
    payload = {
        "degree": rep.degree,
        "points": [{"point": _point(p.point), "r0": p.r0, "r1": p.r1, "r2": p.r2,
                    "multiplicity": p.multiplicity} for p in rep.finite_points],
        "infinity": list(rep.at_infinity),
        "total_r0": rep.total_r0,
        "total_r1": rep.total_r1,
        "count_verdict": rep.count_ok,
        "r0_equals_r2": rep.symmetric_ok,
        "notes": list(rep.notes),
    }
    _emit(args, payload)
    return EXIT_OK if rep.count_ok and rep.symmetric_ok else EXIT_FAILED


def cmd_reduce(args) -> int:
    c, _ = load(args.input)
    r = can.reduce(c, args.cls)
    params = {k: v for k, v in r.params.items() if k not in ("reduced",)}
    payload = {
        "class": args.cls,
        "g": r.g.matrix,
        "g_kind": r.g.kind,
        "omega": r.omega.matrix,
        "canonical": curve_to_document(r.canonical),
        "params": params,
        "residual": r.residual,
    }
    _emit(args, payload)
    return EXIT_OK if r.residual <= args.tol else EXIT_FAILED


def cmd_area(args) -> int:
    c, _ = load(args.input)
    res = induced_area(c, args.region, tol=args.tol)
    k = round(res.value / (2 * math.pi))
    payload = {
        "region": args.region,
        "area": res.value,
        "estimated_error": res.estimated_error,
        "nodes": res.nodes,
        "nearest_multiple_of_2pi": k,
        "relative_deviation": abs(res.value - 2 * math.pi * k) / (2 * math.pi * max(k, 1)),
    }
    _emit(args, payload)
    return EXIT_OK


BUBBLE_COLUMNS = ("m", "p", "annulus_mass", "paper_bound", "bubble_mass", "limit_prediction")


def _fmt(x) -> str:
    return "" if x is None else format(float(x), ".17g")


def cmd_bubble(args) -> int:
    ms = _parse_list(args.m_list)
    out = open(args.output, "w", newline="", encoding="utf-8") if args.output else sys.stdout
    try:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(BUBBLE_COLUMNS)
        for m in ms:
            try:
                _, p = can.psi5_m_coefficients(m)
            except DomainError as exc:
                print(f"skipped m={m}: {exc}", file=sys.stderr)
                continue
            mass = bound = None
            if m >= 2:
                mass = annulus_mass(m).value
                bound = annulus_bound(m)
            else:
                print(f"m={m}: annulus needs m >= 2; annulus columns left empty", file=sys.stderr)
            bub = bubble_profile(m, args.eps).value
            w.writerow([_fmt(m), _fmt(p), _fmt(mass), _fmt(bound), _fmt(bub),
                        _fmt(bubble_limit(args.eps))])
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


def _parse_list(text: str | None) -> list[float]:
    if not text:
        return []
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"--m-list must be comma-separated numbers: {exc}") from None


def _parse_value(v: str):
    try:
        x = complex(v.replace(" ", ""))
    except ValueError:
        return v
    return x.real if x.imag == 0 else x


def _parse_params(items) -> dict:
    out = {}
    for item in items or []:
        if "=" not in item:
            raise UsageError(f"--param expects K=V, got {item!r}")
        k, v = item.split("=", 1)
        out[k.strip()] = _parse_value(v.strip())
    return out


def _general_params(p: dict) -> can.Psi5GeneralParams:
    try:
        return can.Psi5GeneralParams(**{k: p[k] for k in "ahrlms"})
    except KeyError as exc:
        raise UsageError(f"missing parameter {exc}") from None


FAMILIES = {
    "psi3": lambda p: can.psi3(),
    "psi5_eta": lambda p: can.psi5_eta(p["eta"]),
    "psi5_m": lambda p: can.psi5_m(p["m"]),
    "psi5_m_limit": lambda p: can.psi5_m_limit(),
    "psi4_a": lambda p: can.psi4_a(p["a"]),
    "psi5_0": lambda p: can.psi5_0(),
    "psi5_1": lambda p: can.psi5_1(),
    "psi5_2": lambda p: can.psi5_2(),
    "bryant": lambda p: can.bryant_canonical(int(p["k1"]), int(p["k2"])),
    "psi5_general": lambda p: can.psi5_general(_general_params(p)),
    "gamma": lambda p: can.gamma_path(p["t"]),
    "path": lambda p: can.deformation_path(
        p["case"], p["t"], _general_params(p) if p.get("case") in ("case1", "case2", "case3") else None),
}


def cmd_family(args) -> int:
    if args.family not in FAMILIES:
        raise UsageError(f"unknown family {args.family!r}; choose from {', '.join(FAMILIES)}")
    params = _parse_params(args.param)
    try:
        c = FAMILIES[args.family](params)
    except KeyError as exc:
        raise UsageError(f"family {args.family} needs parameter {exc}") from None
    except (DomainError, PreconditionError, TypeError, ValueError) as exc:
        raise UsageError(f"family {args.family}: {exc}") from None
    _emit(args, dumps(c, {"family": args.family, "params": _jsonable(params)}))
    return EXIT_OK


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="twistor", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, func, help_, needs_input=True):
        sp = sub.add_parser(name, help=help_)
        if needs_input:
            sp.add_argument("--input", required=True, help="curve JSON document")
        sp.add_argument("--output", help="write result here instead of stdout")
        sp.set_defaults(func=func)
        return sp

    sp = add("verify", cmd_verify, "horizontality, fullness and invariance checks")
    sp.add_argument("--tol", type=float, default=1e-10, help="horizontality tolerance (relative)")
    sp.add_argument("--invariance-tol", type=float, default=INVARIANCE_TOL)
    sp.add_argument("--require-invariant", action="store_true",
                    help="fail unless the curve is antipodally invariant")

    add("singular", cmd_singular, "higher singularities with ramification indices")

    sp = add("reduce", cmd_reduce, "reduce to canonical form")
    sp.add_argument("--class", dest="cls", required=True, choices=sorted(can.REDUCTION_CLASSES))
    sp.add_argument("--tol", type=float, default=REDUCE_TOL, help="projective residual allowed")

    sp = add("area", cmd_area, "induced area by quadrature")
    sp.add_argument("--region", choices=["sphere", "disk", "unit_disk"], default="sphere")
    sp.add_argument("--tol", type=float, default=AREA_TOL, help="quadrature refinement tolerance")

    sp = add("bubble", cmd_bubble, "annulus and bubble masses along the m-family (CSV)", False)
    sp.add_argument("--m-list", default="", help="comma-separated m values")
    sp.add_argument("--eps", type=float, default=0.1, help="radius of the bubble disk")

    sp = add("family", cmd_family, "write a canonical family member as a curve document", False)
    sp.add_argument("--family", required=True, help=", ".join(FAMILIES))
    sp.add_argument("--param", action="append", metavar="K=V", help="family parameter (repeatable)")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, DocumentError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (QuadratureAccuracyError, ResolutionError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (PreconditionError, TwistorError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    raise SystemExit(main())
