"""Command-line interface: JSON reports on stdout, exit status from the report.

Exit codes: 0 when the report's expectations hold, 1 on a mismatch or a
negative answer, 2 on bad usage or unreadable input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from .algebra.groebner import BudgetExceeded
from .algebra.scalars import GaussianRational, is_rational, rational_str
from .algebra.series import AtLeast
from .curves import (
    CompleteIntersectionCurve,
    LiftingError,
    NotOnCurveError,
    ProjectivePoint,
    SingularPointError,
    smoothness_certificate,
)
from .limits import NodalVanishingData, classify_limit, LimitClass
from .linear_series import (
    ModelInconsistencyError,
    PointAnalysis,
    TruncationError,
    ramification_and_weight,
    vanishing_sequence,
)
from .parser import ParseError, parse_polynomial
from .witnesses import WITNESS_BUILDERS, dimension_ledger, parity_family_check, verify_example

# totals the dimension ledgers are expected to reach
LEDGER_TOTALS = {"3.1": 10, "3.2": 14, "3.3": 15, "3.4": 16}

INPUT_ERRORS = (
    ParseError,
    NotOnCurveError,
    SingularPointError,
    KeyError,
    ValueError,
    TypeError,
    FileNotFoundError,
    json.JSONDecodeError,
)
COMPUTE_ERRORS = (BudgetExceeded, TruncationError, ModelInconsistencyError, LiftingError, RuntimeError)


class UsageError(Exception):
    pass


def _jsonable(obj):
    if isinstance(obj, GaussianRational):
        return str(obj)
    if isinstance(obj, AtLeast):
        return f">={obj.bound}"
    if isinstance(obj, Fraction) or is_rational(obj):
        if getattr(obj, "denominator", 1) == 1:
            return int(obj)
        return rational_str(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, (set, tuple)):
        return list(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(report: dict) -> str:
    return json.dumps(report, default=_jsonable, indent=2)


def exit_status(report: dict) -> int:
    if report.get("error_kind") == "input":
        return 2
    return 0 if report.get("verified") else 1


# --- input -----------------------------------------------------------------


def _load(args) -> dict:
    if getattr(args, "json", None):
        return json.loads(args.json)
    src = getattr(args, "input", None)
    if src is None:
        raise UsageError("an input file (or - for stdin, or --json) is required")
    text = sys.stdin.read() if src == "-" else Path(src).read_text()
    return json.loads(text)


def _curve_from(data: dict) -> tuple[CompleteIntersectionCurve, ProjectivePoint]:
    names = list(data["variables"])
    if "ambient_dim" in data and int(data["ambient_dim"]) != len(names) - 1:
        raise ValueError("ambient_dim does not match the number of variables")
    forms = [parse_polynomial(f, names) for f in data["forms"]]
    curve = CompleteIntersectionCurve(forms, names)
    point = ProjectivePoint([Fraction(str(c)) for c in data["point"]])
    if not curve.contains(point):
        raise NotOnCurveError("the point does not lie on the curve")
    return curve, point


def _expectations(report: dict, data: dict) -> dict:
    """Compare against an optional ``expected`` block in the input."""
    expected = data.get("expected") or {}
    mism = [k for k, v in expected.items() if k in report and report[k] != v]
    report["mismatches"] = mism
    report["verified"] = not mism
    return report


# --- subcommands -------------------------------------------------------------


def cmd_verify_example(args) -> dict:
    if args.example not in WITNESS_BUILDERS:
        raise KeyError(f"unknown example {args.example!r}; choose from {sorted(WITNESS_BUILDERS)}")
    return verify_example(args.example, seed=args.seed, order=args.order, budget=args.budget)


def _analysis(args):
    data = _load(args)
    curve, point = _curve_from(data)
    order = args.order or data.get("order")
    return data, curve, point, PointAnalysis(curve, point, order)


def cmd_gaps(args) -> dict:
    data, curve, point, pa = _analysis(args)
    report = {
        "genus": pa.g,
        "gaps": list(pa.gaps().gaps),
        "h0_table": pa.h0_table(),
        "semigroup_ok": pa.report()["semigroup_ok"],
    }
    if args.certify:
        report["smooth"] = smoothness_certificate(curve, args.budget).status
    return _expectations(report, data)


def cmd_vanishing(args) -> dict:
    data, curve, point, pa = _analysis(args)
    if "series" in data:
        forms = [parse_polynomial(f, curve.names) for f in data["series"]]
        van = vanishing_sequence(forms, curve, point, pa.branch, data.get("d"))
    else:
        van = pa.canonical_vanishing()
    ram = ramification_and_weight(van)
    report = {"vanishing": list(van.orders), "ramification": list(ram.alphas), "weight": ram.weight}
    return _expectations(report, data)


def cmd_subcanonical(args) -> dict:
    data, curve, point, pa = _analysis(args)
    gaps = pa.gaps().gaps
    report = {"genus": pa.g, "gaps": list(gaps), "subcanonical": gaps[-1] == 2 * pa.g - 1}
    report = _expectations(report, data)
    if "expected" not in data:
        report["verified"] = report["subcanonical"]
    return report


def cmd_dim_ledger(args) -> dict:
    ledger = dimension_ledger(args.example)
    report = ledger.as_dict()
    report["expected_total"] = LEDGER_TOTALS.get(args.example)
    report["verified"] = ledger.total == report["expected_total"]
    return report


def cmd_limit_compat(args) -> dict:
    if args.json or args.input:
        data = _load(args)
    else:
        if None in (args.d, args.r, args.a1, args.a2):
            raise UsageError("give an input file or all of --d --r --a1 --a2")
        data = {"d": args.d, "r": args.r, "a1": args.a1, "a2": args.a2}
    nv = NodalVanishingData(int(data["d"]), int(data["r"]), tuple(data["a1"]), tuple(data["a2"]))
    cls = classify_limit(nv)
    sums = [x + y for x, y in zip(nv.a1, reversed(nv.a2))]
    return {"class": cls.value, "node_sums": sums, "d": nv.d, "verified": cls is not LimitClass.NOT_LIMIT}


def cmd_parity_family(args) -> dict:
    report = parity_family_check(args.samples, args.seed, budget=args.budget)
    report["verified"] = report["all_odd"] and not report["partial"]
    return report


def _surface_data(args) -> dict:
    from .surface.pipeline import SCHWARZ

    data = dict(SCHWARZ) if args.schwarz else _load(args)
    if args.theta is not None:
        data["theta"] = args.theta
    return data


def cmd_surface_periods(args) -> dict:
    from .surface.pipeline import run_surface

    data = _surface_data(args)
    run = run_surface(data, quad_nodes=args.quad_nodes, tol=args.tol, lattice_tol=args.lattice_tol)
    return run.report()


def cmd_surface_mesh(args) -> dict:
    from .surface.mesh import export_obj
    from .surface.pipeline import mesh_report, run_mesh

    data = _surface_data(args)
    mesh_tol = args.tol or float(data.get("mesh_tol", 1e-9))
    run, mesh = run_mesh(data, resolution=args.resolution, seed=args.seed, quad_nodes=args.quad_nodes, tol=mesh_tol)
    report = {"surface": run.report()}
    if mesh is None:
        report["verified"] = False
        report["mesh"] = None
        return report
    report["mesh"] = mesh_report(mesh, mesh_tol)
    if args.out:
        export_obj(mesh, args.out)
        report["mesh"]["obj"] = str(args.out)
    report["verified"] = report["mesh"]["verified"]
    return report


# --- parser ----------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


SURFACE_HELP = """\
Input JSON: {"f": "z^8 - 14*z^4 + 1", "q0": "1", "q1": "z", "theta": "pi/4",
"tol": 1e-10, "quad_nodes": 64}.  Polynomials are in z with rational or
Gaussian-rational coefficients (write the imaginary unit as i).  Spinor data
with irrational normalizations such as 1/sqrt(2) should be rescaled by a
rational factor first: this scales the period lattice homothetically and does
not change whether it closes."""


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="subcanon", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, curve=False):
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--budget", type=int, default=20000, help="Groebner step budget")
        if curve:
            sp.add_argument("input", nargs="?", help="curve JSON file, or - for stdin")
            sp.add_argument("--json", help="curve JSON given inline")
            sp.add_argument("--order", type=int, default=None, help="branch truncation order")

    sp = sub.add_parser("verify-example", help="verify one of the worked examples")
    sp.add_argument("example", help="3.1, 3.2, 3.3 or 3.4")
    sp.add_argument("--order", type=int, default=None)
    common(sp)
    sp.set_defaults(func=cmd_verify_example)

    for name, func, helptext in (
        ("gaps", cmd_gaps, "Weierstrass gaps and h0(np) table at a point"),
        ("vanishing", cmd_vanishing, "vanishing and ramification sequence at a point"),
        ("subcanonical", cmd_subcanonical, "is (2g-2)p canonical? exit 0 if yes"),
    ):
        sp = sub.add_parser(name, help=helptext)
        common(sp, curve=True)
        if name == "gaps":
            sp.add_argument("--certify", action="store_true", help="also certify smoothness")
        sp.set_defaults(func=func)

    sp = sub.add_parser("dim-ledger", help="dimension count for an example")
    sp.add_argument("example")
    sp.set_defaults(func=cmd_dim_ledger)

    sp = sub.add_parser("limit-compat", help="classify aspect vanishing data at a node")
    sp.add_argument("input", nargs="?")
    sp.add_argument("--json")
    sp.add_argument("--d", type=int)
    sp.add_argument("--r", type=int)
    sp.add_argument("--a1", type=lambda s: [int(x) for x in s.split(",")])
    sp.add_argument("--a2", type=lambda s: [int(x) for x in s.split(",")])
    sp.set_defaults(func=cmd_limit_compat)

    sp = sub.add_parser("parity-family", help="h0(5p) parity across a quintic family")
    sp.add_argument("--samples", type=int, default=100)
    common(sp)
    sp.set_defaults(func=cmd_parity_family)

    for name, func in (("surface-periods", cmd_surface_periods), ("surface-mesh", cmd_surface_mesh)):
        sp = sub.add_parser(name, help=f"spinor data -> {name.split('-')[1]}", description=SURFACE_HELP,
                            formatter_class=argparse.RawDescriptionHelpFormatter)
        sp.add_argument("input", nargs="?", help="surface JSON file, or - for stdin")
        sp.add_argument("--json")
        sp.add_argument("--schwarz", action="store_true", help="use w^2 = z^8 - 14 z^4 + 1, (q0, q1) = (1, z)")
        sp.add_argument("--theta", default=None, help="associate-family angle, e.g. 0.5 or pi/4")
        sp.add_argument("--tol", type=float, default=None, help="quadrature tolerance")
        sp.add_argument("--quad-nodes", type=int, default=None)
        sp.add_argument("--lattice-tol", type=float, default=None)
        sp.add_argument("--seed", type=int, default=0)
        if name == "surface-mesh":
            sp.add_argument("--resolution", type=int, default=16)
            sp.add_argument("--out", help="write the mesh as Wavefront OBJ")
        sp.set_defaults(func=func)
    return p


def run(argv: list[str] | None = None) -> tuple[int, dict]:
    try:
        args = build_parser().parse_args(argv)
        report = args.func(args)
    except UsageError as exc:
        report = {"error": str(exc), "error_kind": "input", "verified": False}
    except INPUT_ERRORS as exc:
        report = {"error": f"{type(exc).__name__}: {exc}", "error_kind": "input", "verified": False}
    except COMPUTE_ERRORS as exc:
        report = {"error": f"{type(exc).__name__}: {exc}", "error_kind": "compute", "verified": False}
    return exit_status(report), report


def main(argv: list[str] | None = None) -> int:
    code, report = run(argv)
    print(dumps(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
