"""Complete-intersection curves: genus, smoothness, local branches, orders."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from math import prod
from typing import Sequence

from .algebra.groebner import BudgetExceeded, contains_one, rational_points
from .algebra.linalg import determinant, matrix_rank, nullspace
from .algebra.poly import MultiPoly
from .algebra.scalars import QQ, rational_str
from .algebra.series import AtLeast, TruncatedSeries

DEFAULT_NAMES = {3: ("x", "y", "z"), 4: ("x", "y", "z", "t")}


class NotOnCurveError(ValueError):
    pass


class SingularPointError(ValueError):
    pass


class LiftingError(RuntimeError):
    pass


@dataclass(frozen=True)
class ProjectivePoint:
    """Homogeneous coordinates scaled so the last nonzero entry is 1."""

    coords: tuple

    def __init__(self, coords: Sequence):
        cs = [QQ(c) for c in coords]
        nz = [i for i, c in enumerate(cs) if c]
        if not nz:
            raise ValueError("the zero vector is not a projective point")
        last = cs[nz[-1]]
        object.__setattr__(self, "coords", tuple(c / last for c in cs))

    @property
    def chart(self) -> int:
        """Index of the coordinate normalised to 1."""
        return max(i for i, c in enumerate(self.coords) if c)

    def affine(self) -> tuple:
        c = self.chart
        return self.coords[:c] + self.coords[c + 1:]

    def __len__(self):
        return len(self.coords)

    def __str__(self):
        return "(" + ":".join(rational_str(c) for c in self.coords) + ")"


class CompleteIntersectionCurve:
    """Curve in P^n cut out by n-1 homogeneous forms."""

    def __init__(self, forms: Sequence[MultiPoly], names: Sequence[str] | None = None):
        forms = list(forms)
        if not forms:
            raise ValueError("need at least one defining form")
        nv = forms[0].nvars
        if any(f.nvars != nv for f in forms):
            raise ValueError("forms live in different rings")
        if len(forms) != nv - 2:
            raise ValueError(f"a curve in P^{nv - 1} needs {nv - 2} forms, got {len(forms)}")
        for f in forms:
            if f.is_zero() or not f.is_homogeneous():
                raise ValueError("defining forms must be nonzero and homogeneous")
        self.forms = forms
        self.n = nv - 1
        self.names = tuple(names) if names else DEFAULT_NAMES.get(nv, tuple(f"x{i}" for i in range(nv)))
        self.degrees = tuple(f.degree for f in forms)

    @property
    def nvars(self) -> int:
        return self.n + 1

    @property
    def canonical_twist(self) -> int:
        """k with omega_C = O_C(k), by adjunction."""
        return sum(self.degrees) - self.n - 1

    @property
    def degree(self) -> int:
        return prod(self.degrees)

    @property
    def genus(self) -> int:
        return genus(self)

    def contains(self, point: ProjectivePoint) -> bool:
        return all(f.evaluate(point.coords) == 0 for f in self.forms)

    def __repr__(self):
        body = ", ".join(f.to_string(self.names) for f in self.forms)
        return f"CompleteIntersectionCurve(P^{self.n}: {body})"


def genus(curve: CompleteIntersectionCurve) -> int:
    """Genus from 2g - 2 = (sum d_i - n - 1) * prod d_i.

    Degree data with non-positive canonical twist is rejected.
    """
    k = curve.canonical_twist
    if k <= 0:
        raise ValueError(f"canonical twist {k} <= 0: adjunction genus formula not applicable here")
    two_g_minus_2 = k * curve.degree
    return two_g_minus_2 // 2 + 1


# ---------------------------------------------------------------------------
# smoothness


def jacobian(forms: Sequence[MultiPoly]) -> list[list[MultiPoly]]:
    return [f.gradient() for f in forms]


def jacobian_rank_at(forms: Sequence[MultiPoly], coords: Sequence) -> int:
    rows = [[d.evaluate(coords) for d in f.gradient()] for f in forms]
    return matrix_rank(rows)


def is_smooth_at(curve, point: ProjectivePoint) -> bool:
    forms = curve.forms if isinstance(curve, CompleteIntersectionCurve) else list(curve)
    if not all(f.evaluate(point.coords) == 0 for f in forms):
        raise NotOnCurveError(f"{point} does not lie on the curve")
    return jacobian_rank_at(forms, point.coords) == len(forms)


@dataclass
class SmoothnessCertificate:
    status: str  # "smooth", "singular" or "inconclusive"
    witness: ProjectivePoint | None = None
    charts: dict = field(default_factory=dict)

    @property
    def smooth(self) -> bool:
        return self.status == "smooth"

    def __bool__(self):
        return self.smooth


def singular_locus_equations(forms: Sequence[MultiPoly]) -> list[MultiPoly]:
    """Forms plus all maximal minors of their Jacobian."""
    m = len(forms)
    jac = jacobian(forms)
    nv = forms[0].nvars
    eqs = list(forms)
    for cols in combinations(range(nv), m):
        sub = [[jac[i][j] for j in cols] for i in range(m)]
        eqs.append(_poly_det(sub))
    return [e for e in eqs if not e.is_zero()]


def _poly_det(mat: list[list[MultiPoly]]) -> MultiPoly:
    n = len(mat)
    if n == 1:
        return mat[0][0]
    total = MultiPoly.zero(mat[0][0].nvars)
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in mat[1:]]
        term = mat[0][j] * _poly_det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def smoothness_certificate(curve, budget: int = 20000) -> SmoothnessCertificate:
    """Decide global smoothness by exact elimination chart by chart.

    The singular locus equations are dehomogenised at each coordinate; the
    variety is smooth iff 1 lies in every chart ideal.  Accepts a curve or a
    plain list of homogeneous forms (e.g. a single surface).
    """
    forms = curve.forms if isinstance(curve, CompleteIntersectionCurve) else list(curve)
    eqs = singular_locus_equations(forms)
    nv = forms[0].nvars
    charts = {}
    status = "smooth"
    witness = None
    for c in range(nv):
        affine = [e.dehomogenize(c) for e in eqs]
        try:
            ok = contains_one(affine, budget)
        except BudgetExceeded:
            charts[c] = "inconclusive"
            if status == "smooth":
                status = "inconclusive"
            continue
        charts[c] = "smooth" if ok else "singular"
        if not ok:
            status = "singular"
            if witness is None:
                try:
                    pts = rational_points(affine, budget)
                except BudgetExceeded:
                    pts = []
                if pts:
                    pt = list(pts[0])
                    witness = ProjectivePoint(pt[:c] + [QQ(1)] + pt[c:])
    return SmoothnessCertificate(status, witness, charts)


# ---------------------------------------------------------------------------
# local branches


@dataclass
class LocalBranch:
    """Power-series parametrisation of the unique branch at a smooth point.

    ``coords[j]`` is the homogeneous coordinate j as a series in the local
    parameter s; the chart coordinate is the constant 1 and the uniformizer
    composes to exactly ``s``.
    """

    center: ProjectivePoint
    chart: int
    uniformizer: MultiPoly
    coords: list
    order: int

    def compose(self, form: MultiPoly) -> TruncatedSeries:
        return compose(form, self.coords, self.order)


def compose(poly: MultiPoly, series: Sequence[TruncatedSeries], order: int) -> TruncatedSeries:
    """Evaluate a polynomial at power series, truncated at ``order``."""
    result = [QQ(0)] * (order + 1)
    powers: dict = {}

    def power(j: int, e: int) -> TruncatedSeries:
        key = (j, e)
        if key not in powers:
            if e == 1:
                powers[key] = series[j].truncate(order) if series[j].order > order else series[j]
            else:
                powers[key] = power(j, e - 1) * power(j, 1)
        return powers[key]

    for m, c in poly.terms.items():
        term: TruncatedSeries | None = None
        for j, e in enumerate(m):
            if e:
                pj = power(j, e)
                term = pj if term is None else term * pj
        if term is None:
            result[0] += c
        else:
            for i, v in enumerate(term.coeffs):
                if v:
                    result[i] += c * v
    return TruncatedSeries(result, order)


def _series_solve(mat: list[list[TruncatedSeries]], rhs: list[TruncatedSeries]) -> list[TruncatedSeries]:
    """Solve a square system over the power-series ring with invertible constant part."""
    n = len(mat)
    a = [list(r) + [b] for r, b in zip(mat, rhs)]
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c].coeffs[0]), None)
        if p is None:
            raise LiftingError("Jacobian constant term is singular")
        a[c], a[p] = a[p], a[c]
        inv = a[c][c].inverse()
        a[c] = [x * inv for x in a[c]]
        for i in range(n):
            if i != c and any(a[i][c].coeffs):
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [a[i][n] for i in range(n)]


def default_order(curve: CompleteIntersectionCurve) -> int:
    try:
        return 4 * genus(curve)
    except ValueError:
        return 20


def tangent_direction(curve: CompleteIntersectionCurve, point: ProjectivePoint) -> list:
    """Affine tangent vector in the chart of ``point``."""
    c = point.chart
    a = point.affine()
    rows = []
    for f in curve.forms:
        g = f.dehomogenize(c)
        rows.append([d.evaluate(a) for d in g.gradient()])
    ns = nullspace(rows, curve.n)
    if len(ns) != 1:
        raise SingularPointError(f"{point} is not a smooth point")
    return ns[0]


def choose_uniformizer(curve: CompleteIntersectionCurve, point: ProjectivePoint, seed: int = 0) -> MultiPoly:
    """Linear form through ``point`` restricting to a local parameter.

    Coordinate forms x_j - p_j x_c are tried first, then seeded random
    rational combinations.
    """
    c = point.chart
    v = tangent_direction(curve, point)
    nv = curve.nvars
    amb = [j for j in range(nv) if j != c]
    for idx, j in enumerate(amb):
        if v[idx]:
            coeffs = [QQ(0)] * nv
            coeffs[j] = QQ(1)
            coeffs[c] = -point.coords[j]
            return MultiPoly.linear(coeffs)
    rng = random.Random(seed)
    for _ in range(100):  # pragma: no cover - a nonzero tangent has a nonzero coordinate
        w = [QQ(rng.randint(-9, 9)) for _ in amb]
        if sum(a * b for a, b in zip(w, v)):
            coeffs = [QQ(0)] * nv
            for idx, j in enumerate(amb):
                coeffs[j] = w[idx]
            coeffs[c] = -sum(w[idx] * point.coords[j] for idx, j in enumerate(amb))
            return MultiPoly.linear(coeffs)
    raise LiftingError("no uniformizer found")


def local_branch(
    curve: CompleteIntersectionCurve,
    point: ProjectivePoint,
    order: int | None = None,
    uniformizer: MultiPoly | None = None,
    seed: int = 0,
) -> LocalBranch:
    """Lift the branch at a smooth rational point by Newton iteration on series."""
    if not is_smooth_at(curve, point):
        raise SingularPointError(f"{point} is a singular point of the curve")
    N = default_order(curve) if order is None else order
    c = point.chart
    nv = curve.nvars
    if uniformizer is None:
        uniformizer = choose_uniformizer(curve, point, seed)
    if uniformizer.degree != 1 or not uniformizer.is_homogeneous():
        raise ValueError("uniformizer must be a linear form")
    if uniformizer.evaluate(point.coords) != 0:
        raise ValueError("uniformizer must vanish at the point")
    v = tangent_direction(curve, point)
    ell = uniformizer.dehomogenize(c)
    if not sum(d.evaluate(point.affine()) * vi for d, vi in zip(ell.gradient(), v)):
        raise ValueError("uniformizer is tangent to the curve")

    eqs = [f.dehomogenize(c) for f in curve.forms] + [ell]
    grads = [[g.diff(j) for j in range(curve.n)] for g in eqs]
    a = point.affine()
    u = [TruncatedSeries([ai], 0) for ai in a]
    prec = 1
    while prec < N + 1:
        prec = min(2 * prec, N + 1)
        o = prec - 1
        u = [TruncatedSeries(s.coeffs, o) for s in u]
        resid = [compose(g, u, o) for g in eqs]
        resid[-1] = resid[-1] - TruncatedSeries.variable(o)
        jac = [[compose(d, u, o) for d in row] for row in grads]
        delta = _series_solve(jac, [-r for r in resid])
        u = [ui + di for ui, di in zip(u, delta)]

    coords = []
    k = 0
    for j in range(nv):
        if j == c:
            coords.append(TruncatedSeries.constant(1, N))
        else:
            coords.append(u[k])
            k += 1
    branch = LocalBranch(point, c, uniformizer, coords, N)
    for f in curve.forms:
        if compose(f, coords, N).valuation() != AtLeast(N + 1):
            raise LiftingError(f"branch does not satisfy {f} to order {N}")
    if branch.compose(uniformizer).valuation() != 1:
        raise LiftingError("uniformizer does not compose to order 1")
    return branch


def vanishing_order(form: MultiPoly, branch: LocalBranch) -> int | AtLeast:
    """Order of ``form`` along the branch, i.e. the local intersection number."""
    if not form.is_homogeneous():
        raise ValueError("form must be homogeneous")
    return branch.compose(form).valuation()


def branch_from_parametrization(point: ProjectivePoint, coords: Sequence[TruncatedSeries], uniformizer: MultiPoly) -> LocalBranch:
    """Wrap an explicitly known parametrisation as a :class:`LocalBranch`."""
    order = min(s.order for s in coords)
    return LocalBranch(point, point.chart, uniformizer, list(coords), order)
