"""Explicit subcanonical witnesses: construction, verification, dimension counts."""

from __future__ import annotations

import random
import time
from collections import Counter
from dataclasses import dataclass, field
from math import comb, prod
from typing import Sequence

from .algebra.linalg import matrix_rank, nullspace, rref
from .algebra.poly import MultiPoly, monomials_of_degree
from .algebra.scalars import QQ
from .curves import (
    CompleteIntersectionCurve,
    ProjectivePoint,
    genus,
    is_smooth_at,
    local_branch,
    smoothness_certificate,
    vanishing_order,
)
from .limits import expected_dimension, gaps_from_ramification
from .linear_series import PointAnalysis, ramification_and_weight, semigroup_check, vanishing_sequence
from .parser import parse_polynomial

P3 = ("x", "y", "z", "t")
P2 = ("x", "y", "z")

QUADRIC_S = "x*z - y^2 + t^2"
QUARTIC_T = (
    "x^4 + x^3*z - x^2*y^2 + x^2*y*z - x*y^3 + x^2*z^2 + x*y^2*z - 2*y^4"
    " + x*y*z^2 - y^3*z + x*z^3 - y^2*z^2 + t*z^3 + t^4"
)


class WitnessSearchError(RuntimeError):
    pass


@dataclass
class ExampleWitness:
    id: str
    curve: CompleteIntersectionCurve
    point: ProjectivePoint
    flag: MultiPoly
    contact: int
    expected_gaps: tuple | None = None
    expected_ramification: tuple | None = None
    expected_h0: dict = field(default_factory=dict)
    ledger_total: int | None = None
    surfaces: list = field(default_factory=list)
    # expectations a mismatch of which is reported but not a failure
    soft: tuple = ()
    seed: int | None = None
    attempts: int = 0


@dataclass
class DimensionLedger:
    example: str
    items: list  # (label, signed contribution)

    @property
    def total(self) -> int:
        return sum(v for _, v in self.items)

    def as_dict(self) -> dict:
        return {"example": self.example, "items": [[k, v] for k, v in self.items], "total": self.total}


def _p3(text: str) -> MultiPoly:
    return parse_polynomial(text, P3)


def _p2(text: str) -> MultiPoly:
    return parse_polynomial(text, P2)


def coordinate_form(j: int, point: ProjectivePoint) -> MultiPoly:
    """x_j - p_j x_c, a linear form through ``point``."""
    nv = len(point)
    coeffs = [QQ(0)] * nv
    coeffs[j] = QQ(1)
    coeffs[point.chart] = coeffs[point.chart] - point.coords[j]
    return MultiPoly.linear(coeffs)


# ---------------------------------------------------------------------------
# a smooth quadric and quartic meeting in a genus-9 curve


def example_quadric_quartic() -> ExampleWitness:
    S, T = _p3(QUADRIC_S), _p3(QUARTIC_T)
    return ExampleWitness(
        id="3.2",
        curve=CompleteIntersectionCurve([S, T], P3),
        point=ProjectivePoint([0, 0, 1, 0]),
        flag=_p3("t"),
        contact=8,
        expected_gaps=(1, 2, 3, 4, 5, 9, 10, 11, 17),
        expected_ramification=(0, 0, 0, 0, 0, 3, 3, 3, 8),
        expected_h0={8: 4},
        ledger_total=14,
        surfaces=[("S", S), ("T", T)],
    )


# ---------------------------------------------------------------------------
# constructing inflection witnesses


def _contact_nullspace(degree: int, nvars: int, branch, contact: int) -> tuple[list, list]:
    monos = monomials_of_degree(nvars, degree)
    cols = [branch.compose(MultiPoly.monomial(m)).coeffs[:contact] for m in monos]
    conditions = [list(r) for r in zip(*cols)] if contact else []
    return monos, nullspace(conditions, len(monos)) if conditions else nullspace([], len(monos))


def _random_member(monos, basis, rng: random.Random, bound: int) -> MultiPoly:
    coeffs = [0] * len(monos)
    for vec in basis:
        r = rng.randint(-bound, bound)
        if r:
            coeffs = [c + r * v for c, v in zip(coeffs, vec)]
    return MultiPoly(len(monos[0]), {m: c for m, c in zip(monos, coeffs)})


def default_aux_forms(point: ProjectivePoint, flag: MultiPoly, count: int) -> list[MultiPoly]:
    out = []
    for j in range(len(point)):
        if j == point.chart or len(out) == count:
            continue
        cand = coordinate_form(j, point)
        if matrix_rank([_linear_coeffs(f) for f in [flag, *out, cand]]) == len(out) + 2:
            out.append(cand)
    if len(out) < count:
        raise ValueError("could not find auxiliary linear forms through the point")
    return out


def _linear_coeffs(f: MultiPoly) -> list:
    n = f.nvars
    return [f.coefficient(tuple(1 if k == j else 0 for k in range(n))) for j in range(n)]


def build_inflection_instance(
    ambient_dim: int,
    degrees: Sequence[int],
    point: ProjectivePoint,
    flag: MultiPoly,
    contact: int,
    *,
    fixed: Sequence[MultiPoly] = (),
    aux: Sequence[MultiPoly] | None = None,
    constraints: dict | None = None,
    seed: int = 0,
    attempts: int = 40,
    coeff_bound: int = 4,
    names: Sequence[str] | None = None,
    certify: bool = True,
    budget: int = 20000,
) -> ExampleWitness:
    """Find a smooth complete intersection with ``(C . flag)_p`` exactly ``contact``.

    Form j (after the ``fixed`` ones) is drawn from the exact nullspace of the
    conditions "order along a constraint curve >= m_j".  By default the
    constraint curve of form j is cut by ``flag``, ``aux[:n-2-j]`` and the
    previously chosen forms, with m_j the full contact d_0*...*d_j (and the
    requested ``contact`` for the last form).  ``constraints`` maps a form
    index to ``(linear_forms, m_j)`` and overrides that default.
    """
    n = ambient_dim
    nv = n + 1
    degrees = tuple(degrees)
    if len(degrees) != n - 1:
        raise ValueError(f"need {n - 1} degrees in P^{n}")
    if flag.evaluate(point.coords) != 0:
        raise ValueError("flag must pass through the point")
    if contact > comb(degrees[-1] + n, n):
        raise ValueError("contact order exceeds the dimension of the linear system")
    if aux is None:
        aux = default_aux_forms(point, flag, n - 2)
    constraints = dict(constraints or {})
    rng = random.Random(seed)
    last_error = "no attempt made"
    for attempt in range(1, attempts + 1):
        forms = list(fixed)
        ok = True
        for j in range(len(fixed), n - 1):
            if j in constraints:
                linear, m_j = constraints[j]
                cut = list(linear)
            else:
                cut = [flag, *aux[: n - 2 - j], *forms[:j]]
                m_j = contact if j == n - 2 else prod(degrees[: j + 1])
            cut_curve = CompleteIntersectionCurve(cut, names)
            if not is_smooth_at(cut_curve, point):
                ok = False
                last_error = f"constraint curve for form {j} is singular at the point"
                break
            branch = local_branch(cut_curve, point, order=m_j + 1)
            monos, basis = _contact_nullspace(degrees[j], nv, branch, m_j)
            form = _random_member(monos, basis, rng, coeff_bound)
            if form.is_zero():
                ok = False
                last_error = "drew the zero form"
                break
            if branch.compose(form).valuation() != m_j:
                ok = False
                last_error = f"form {j} has contact != {m_j}"
                break
            forms.append(form)
        if not ok:
            continue
        curve = CompleteIntersectionCurve(forms, names)
        if not curve.contains(point) or not is_smooth_at(curve, point):
            last_error = "curve singular at the point"
            continue
        branch = local_branch(curve, point, order=contact + 1)
        if vanishing_order(flag, branch) != contact:
            last_error = "contact with the flag is not exact"
            continue
        if certify:
            cert = smoothness_certificate(curve, budget)
            if not cert.smooth:
                last_error = f"smoothness certificate: {cert.status}"
                continue
        return ExampleWitness(
            id="constructed",
            curve=curve,
            point=point,
            flag=flag,
            contact=contact,
            seed=seed,
            attempts=attempt,
        )
    raise WitnessSearchError(f"no smooth member after {attempts} attempts ({last_error})")


def example_plane_quintic(seed: int = 0) -> ExampleWitness:
    """Smooth plane quintic with a 5-fold inflection at (0:0:1) along y = 0."""
    w = build_inflection_instance(2, (5,), ProjectivePoint([0, 0, 1]), _p2("y"), 5, seed=seed, names=P2)
    w.id = "3.1"
    w.expected_gaps = (1, 2, 3, 6, 7, 11)
    w.expected_ramification = (0, 0, 0, 2, 2, 5)
    w.expected_h0 = {5: 3}
    w.ledger_total = 10
    return w


def example_quadric_cone(seed: int = 0) -> ExampleWitness:
    """Quadric cone xz = y^2 and a quartic meeting the ruling x = y = 0 only at p."""
    cone = _p3("x*z - y^2")
    p = ProjectivePoint([0, 0, 1, 0])
    w = build_inflection_instance(
        3,
        (2, 4),
        p,
        _p3("x"),
        8,
        fixed=[cone],
        constraints={1: ([_p3("x"), _p3("y")], 4)},
        seed=seed,
        names=P3,
    )
    w.id = "3.3"
    w.expected_gaps = (1, 2, 3, 5, 6, 9, 10, 13, 17)
    w.expected_ramification = (0, 0, 0, 1, 1, 3, 3, 5, 8)
    w.expected_h0 = {8: 4}
    w.ledger_total = 15
    w.soft = ("gaps", "ramification")
    return w


def example_two_cubics(seed: int = 0) -> ExampleWitness:
    """Two cubics whose plane sections by t = 0 meet only at p, the first with a flex there."""
    p = ProjectivePoint([0, 0, 1, 0])
    w = build_inflection_instance(3, (3, 3), p, _p3("t"), 9, seed=seed, names=P3)
    w.id = "3.4"
    w.expected_ramification = (0, 0, 0, 0, 0, 1, 3, 3, 4, 9)
    w.expected_gaps = gaps_from_ramification(w.expected_ramification)
    w.expected_h0 = {9: 4}
    w.ledger_total = 16
    w.soft = ("gaps", "ramification")
    return w


WITNESS_BUILDERS = {
    "3.1": example_plane_quintic,
    "3.2": lambda seed=0: example_quadric_quartic(),
    "3.3": example_quadric_cone,
    "3.4": example_two_cubics,
}


# ---------------------------------------------------------------------------
# conditions imposed on |O_S(4)|


def graded_quotient_basis(forms: Sequence[MultiPoly], k: int) -> list[MultiPoly]:
    """Monomials of degree k independent modulo the ideal generated by ``forms``."""
    nv = forms[0].nvars
    monos = monomials_of_degree(nv, k)
    index = {m: i for i, m in enumerate(monos)}
    rows = []
    for f in forms:
        if f.degree > k:
            continue
        for m in monomials_of_degree(nv, k - f.degree):
            g = f * MultiPoly.monomial(m)
            row = [0] * len(monos)
            for mm, c in g.terms.items():
                row[index[mm]] = c
            rows.append(row)
    pivots = set(rref(rows)[1]) if rows else set()
    return [MultiPoly.monomial(m) for i, m in enumerate(monos) if i not in pivots]


def imposed_conditions_rank(
    system: Sequence[MultiPoly],
    parametrization: Sequence[MultiPoly],
    m: int,
    on: Sequence[MultiPoly] = (),
) -> int:
    """Rank of the first m Taylor conditions at s = 0 on the restricted system.

    ``parametrization`` gives the homogeneous coordinates of a rational curve
    D as polynomials in one variable s; it is checked against the forms ``on``.
    """
    for f in on:
        if not f.substitute(parametrization).is_zero():
            raise ValueError(f"parametrization does not lie on {f}")
    rows = []
    for form in system:
        coeffs = form.substitute(parametrization).univariate_coefficients()
        coeffs = coeffs + [QQ(0)] * max(0, m - len(coeffs))
        rows.append(coeffs[:m])
    conditions = [list(c) for c in zip(*rows)]
    return matrix_rank(conditions)


def conic_parametrization() -> list[MultiPoly]:
    """(s^2 : s : 1 : 0), the conic S cap {t = 0} with s = 0 at p = (0:0:1:0)."""
    s = MultiPoly.variable(0, 1)
    one = MultiPoly.constant(1, 1)
    return [s * s, s, one, MultiPoly.zero(1)]


def quartic_system_on_quadric() -> list[MultiPoly]:
    return graded_quotient_basis([_p3(QUADRIC_S)], 4)


def quadric_quartic_conditions_rank(m: int) -> int:
    return imposed_conditions_rank(
        quartic_system_on_quadric(), conic_parametrization(), m, on=[_p3(QUADRIC_S), _p3("t")]
    )


# ---------------------------------------------------------------------------
# dimension counts


def dimension_ledger(example_id: str) -> DimensionLedger:
    if example_id == "3.1":
        items = [
            ("choice of the quintic", comb(5 + 2, 2) - 1),
            ("choice of the line", 2),
            ("choice of p on the line", 1),
            ("(C.l)_p >= 5", -5),
            ("PGL(3)", -8),
        ]
    elif example_id == "3.2":
        items = [
            ("choice of S", comb(2 + 3, 3) - 1),
            ("choice of T|S", comb(4 + 3, 3) - comb(2 + 3, 3) - 1),
            ("choice of p", 1),
            ("choice of H", 3),
            ("(C.H)_p >= 8", -8),
            ("PGL(4)", -15),
        ]
    elif example_id == "3.3":
        items = [
            ("choice of the quadric cone S", comb(2 + 3, 3) - 2),
            ("choice of p on S", 2),
            ("choice of the ruling through p", 0),
            ("choice of T|S", comb(4 + 3, 3) - comb(2 + 3, 3) - 1),
            ("(C.l)_p >= 4", -4),
            ("PGL(4)", -15),
        ]
    elif example_id == "3.4":
        items = [
            ("choice of the pencil of cubics", 2 * (comb(3 + 3, 3) - 2)),
            ("choice of H", 3),
            ("choice of p on H", 2),
            ("(C.H)_p >= 9 on the pencil of plane sections", -10),
            ("PGL(4)", -15),
        ]
    else:
        raise KeyError(f"unknown example id {example_id!r}")
    return DimensionLedger(example_id, items)


# ---------------------------------------------------------------------------
# verification


def verify_witness(w: ExampleWitness, order: int | None = None, budget: int = 20000) -> dict:
    """Run every check on a witness; returns a JSON-ready report."""
    started = time.perf_counter()
    checks: dict = {}
    mismatches: list = []
    recorded: list = []

    def check(name: str, ok: bool, soft: bool = False):
        checks[name] = bool(ok)
        if not ok:
            (recorded if soft else mismatches).append(name)

    cert = smoothness_certificate(w.curve, budget)
    check("curve_smooth", cert.smooth)
    for label, form in w.surfaces:
        c = smoothness_certificate([form], budget)
        check(f"{label}_smooth", c.smooth)

    analysis = PointAnalysis(w.curve, w.point, order)
    contact = vanishing_order(w.flag, analysis.branch)
    check("contact", contact == w.contact)
    report = analysis.report()
    g = analysis.g
    if w.expected_gaps is not None:
        check("gaps", tuple(report["gaps"]) == tuple(w.expected_gaps), "gaps" in w.soft)
    if w.expected_ramification is not None:
        check(
            "ramification",
            tuple(report["ramification"]) == tuple(w.expected_ramification),
            "ramification" in w.soft,
        )
    for n, val in w.expected_h0.items():
        check(f"h0_{n}p", analysis.h0(n) == val)
    check("subcanonical", report["subcanonical"])
    check("semigroup", report["semigroup_ok"])
    # both routes to the gap sequence must agree
    check("gap_vanishing_agreement", [a + 1 for a in report["vanishing"]] == report["gaps"])
    check(
        "duality",
        all(analysis.h0(n) - analysis.h0_dual(n) == n - g + 1 for n in range(2 * g - 1)),
    )
    ledger = None
    if w.id in ("3.1", "3.2", "3.3", "3.4"):
        ledger = dimension_ledger(w.id)
        if w.ledger_total is not None:
            check("ledger_total", ledger.total == w.ledger_total)
    report.update(
        {
            "example": w.id,
            "curve": [f.to_string(w.curve.names) for f in w.curve.forms],
            "point": [str(c) for c in w.point.coords],
            "flag": w.flag.to_string(w.curve.names),
            "contact": contact if isinstance(contact, int) else str(contact),
            "smoothness": {"curve": cert.status, "charts": {str(k): v for k, v in cert.charts.items()}},
            "expected_gaps": list(w.expected_gaps) if w.expected_gaps else None,
            "expected_ramification": list(w.expected_ramification) if w.expected_ramification else None,
            "ledger": ledger.as_dict() if ledger else None,
            "checks": checks,
            "mismatches": mismatches,
            "recorded_mismatches": recorded,
            "verified": not mismatches,
            "seconds": round(time.perf_counter() - started, 3),
        }
    )
    if w.seed is not None:
        report["seed"] = w.seed
        report["attempts"] = w.attempts
    return report


def verify_example(example_id: str, seed: int = 0, order: int | None = None, budget: int = 20000) -> dict:
    if example_id not in WITNESS_BUILDERS:
        raise KeyError(f"unknown example id {example_id!r}")
    w = WITNESS_BUILDERS[example_id](seed=seed)
    report = verify_witness(w, order, budget)
    if example_id == "3.1":
        lines = [_p2("x"), _p2("y"), _p2("z")]
        van = vanishing_sequence(lines, w.curve, w.point, d=5)
        report["plane_section_vanishing"] = list(van.orders)
        ok = van.orders == (0, 1, 5)
        report["checks"]["plane_section_vanishing"] = ok
        if not ok:
            report["mismatches"].append("plane_section_vanishing")
            report["verified"] = False
    if example_id == "3.2":
        rank = quadric_quartic_conditions_rank(8)
        report["imposed_conditions_rank"] = rank
        report["checks"]["imposed_conditions"] = rank == 8
        report["expected_dimension"] = expected_dimension(9, 3)
        if rank != 8:
            report["mismatches"].append("imposed_conditions")
            report["verified"] = False
    return report


# ---------------------------------------------------------------------------
# parity of h^0(5p) across the quintic family


def parity_family_check(samples: int = 100, seed: int = 0, attempts_per_sample: int = 20, budget: int = 20000) -> dict:
    """Sample smooth quintics with a 5-fold inflection at a fixed (p, l)."""
    p = ProjectivePoint([0, 0, 1])
    line = _p2("y")
    cut = CompleteIntersectionCurve([line], P2)
    branch = local_branch(cut, p, order=6)
    monos, basis = _contact_nullspace(5, 3, branch, 5)
    rng = random.Random(seed)
    h0_values: list = []
    ramifications: Counter = Counter()
    rejected = 0
    started = time.perf_counter()
    while len(h0_values) < samples and rejected <= attempts_per_sample * samples:
        form = _random_member(monos, basis, rng, 4)
        curve = CompleteIntersectionCurve([form], P2)
        if form.is_zero() or not is_smooth_at(curve, p):
            rejected += 1
            continue
        if not smoothness_certificate(curve, budget).smooth:
            rejected += 1
            continue
        analysis = PointAnalysis(curve, p)
        if vanishing_order(line, analysis.branch) != 5:
            rejected += 1
            continue
        h0_values.append(analysis.h0(5))
        ramifications[tuple(ramification_and_weight(analysis.canonical_vanishing()).alphas)] += 1
    parities = {v % 2 for v in h0_values}
    return {
        "samples_requested": samples,
        "samples": len(h0_values),
        "partial": len(h0_values) < samples,
        "rejected": rejected,
        "seed": seed,
        "h0_multiset": {str(k): v for k, v in sorted(Counter(h0_values).items())},
        "parity": parities.pop() if len(parities) == 1 else None,
        "all_odd": bool(h0_values) and all(v % 2 == 1 for v in h0_values),
        "ramification_multiset": {",".join(map(str, k)): v for k, v in ramifications.items()},
        "seconds": round(time.perf_counter() - started, 3),
    }
