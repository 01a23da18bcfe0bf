from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from subcanon.algebra.groebner import BudgetExceeded, contains_one, groebner, rational_points, reduce_poly
from subcanon.algebra.linalg import determinant, inverse, matrix_rank, nullspace, rref, solve
from subcanon.algebra.poly import MultiPoly, monomials_of_degree
from subcanon.algebra.scalars import QQ, GaussianRational, rational_str
from subcanon.algebra.series import AtLeast, TruncatedSeries
from subcanon.parser import parse_polynomial

NAMES = ["x", "y", "z"]
small = st.integers(-5, 5)
rationals = st.builds(lambda a, b: QQ(a, b), st.integers(-9, 9), st.integers(1, 6))


@st.composite
def polys(draw, nvars=3, max_deg=3, homogeneous=None):
    terms = {}
    for _ in range(draw(st.integers(0, 5))):
        if homogeneous is not None:
            monos = monomials_of_degree(nvars, homogeneous)
            exps = draw(st.sampled_from(monos))
        else:
            exps = tuple(draw(st.integers(0, max_deg)) for _ in range(nvars))
        terms[exps] = draw(rationals)
    return MultiPoly(nvars, terms)


def to_sympy(p: MultiPoly):
    xs = sympy.symbols(NAMES[: p.nvars])
    return sympy.Poly(sympy.sympify(p.to_string(NAMES[: p.nvars]).replace("^", "**")), *xs)


# --- scalars ---------------------------------------------------------------


def test_rational_backend_agrees_with_fraction():
    q = QQ(6, 4)
    assert q == Fraction(3, 2) and hash(q) == hash(Fraction(3, 2))
    assert rational_str(q) == "3/2" and rational_str(QQ(4)) == "4"
    assert QQ("-7/21") == Fraction(-1, 3)


@given(rationals, rationals, rationals, rationals)
def test_gaussian_field_axioms(a, b, c, d):
    u, v = GaussianRational(a, b), GaussianRational(c, d)
    assert u * v == v * u
    assert (u + v) - v == u
    if v:
        assert (u / v) * v == u
    assert (u * u.conjugate()).im == 0
    assert GaussianRational(a, 0) == a and hash(GaussianRational(a, 0)) == hash(a)


def test_imaginary_unit_squares_to_minus_one():
    i = GaussianRational(0, 1)
    assert i * i == -1 and i**4 == 1 and str(i) == "i" and str(-i) == "-i"


# --- polynomials -----------------------------------------------------------


@given(polys(), polys(), polys())
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == MultiPoly.zero(3)


@given(polys(), polys())
def test_multiplication_matches_sympy(p, q):
    # second route: sympy's dense arithmetic
    if p.is_zero() or q.is_zero():
        return
    assert to_sympy(p * q) == to_sympy(p) * to_sympy(q)


@given(polys(homogeneous=2), polys(homogeneous=3))
def test_homogeneity_closed_under_product(p, q):
    prod = p * q
    assert prod.is_homogeneous()
    if not prod.is_zero():
        assert prod.degree == 5


@given(polys(homogeneous=3), st.lists(rationals, min_size=3, max_size=3), rationals)
def test_homogeneous_scaling(p, pt, lam):
    scaled = [lam * c for c in pt]
    assert p.evaluate(scaled) == lam**3 * p.evaluate(pt)


@given(polys(homogeneous=3))
def test_dehomogenize_homogenize_roundtrip(p):
    if p.is_zero() or p.coefficient((0, 0, 3)) == 0 and all(e[2] > 0 for e in p.terms):
        return
    d = p.dehomogenize(2)
    back = d.homogenize(2, 3)
    assert back == p


def test_derivative_and_substitution():
    p = parse_polynomial("x^3*y - 2*y^2 + 5", NAMES)
    assert p.diff(0) == parse_polynomial("3*x^2*y", NAMES)
    x = MultiPoly.variable(0, 3)
    y = MultiPoly.variable(1, 3)
    assert p.substitute([y, x, MultiPoly.variable(2, 3)]) == parse_polynomial("y^3*x - 2*x^2 + 5", NAMES)


# --- series ----------------------------------------------------------------


def test_series_valuation_and_sentinel():
    s = TruncatedSeries([0, 0, 3, 1], order=5)
    assert s.valuation() == 2
    z = TruncatedSeries([0, 0, 0], order=2)
    assert z.valuation() == AtLeast(3)


@given(st.lists(rationals, min_size=1, max_size=8), rationals)
def test_series_inverse(coeffs, c0):
    if c0 == 0:
        return
    s = TruncatedSeries([c0] + coeffs, order=len(coeffs))
    assert s * s.inverse() == TruncatedSeries.constant(1, len(coeffs))


def test_geometric_series():
    one_minus_t = TruncatedSeries([1, -1], order=6)
    assert one_minus_t.inverse() == TruncatedSeries([1] * 7, order=6)


# --- linear algebra --------------------------------------------------------

matrices = st.lists(st.lists(st.integers(-4, 4), min_size=4, max_size=4), min_size=1, max_size=5)


@given(matrices)
def test_rank_matches_sympy(rows):
    assert matrix_rank([[QQ(x) for x in r] for r in rows]) == sympy.Matrix(rows).rank()


@given(matrices)
def test_nullspace_annihilates(rows):
    q = [[QQ(x) for x in r] for r in rows]
    ker = nullspace(q, 4)
    assert len(ker) == 4 - matrix_rank(q)
    for v in ker:
        assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in q)


@given(matrices, st.integers(0, 4), st.integers(0, 4), rationals)
def test_rank_stable_under_row_operations(rows, i, j, lam):
    q = [[QQ(x) for x in r] for r in rows]
    n = len(q)
    i, j = i % n, j % n
    before = matrix_rank(q)
    if i != j:
        q[i] = [a + lam * b for a, b in zip(q[i], q[j])]
    assert matrix_rank(q) == before


def test_pivots_are_leftmost():
    red, piv = rref([[0, 2, 4], [0, 1, 3]])
    assert piv == [1, 2]


@given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=3, max_size=3))
def test_determinant_inverse_solve(rows):
    q = [[QQ(x) for x in r] for r in rows]
    det = determinant(q)
    assert det == sympy.Matrix(rows).det()
    if det:
        inv = inverse(q)
        prod = [[sum(q[i][k] * inv[k][j] for k in range(3)) for j in range(3)] for i in range(3)]
        assert prod == [[int(i == j) for j in range(3)] for i in range(3)]
        x = solve(q, [QQ(1), QQ(2), QQ(3)])
        assert [sum(a * b for a, b in zip(r, x)) for r in q] == [1, 2, 3]


# --- Groebner --------------------------------------------------------------

SYSTEMS = [
    ["x^2 + y^2 - z", "x*y - 1", "z - 2*x*y - 3"],
    ["x^2 - y", "y^2 - z", "x*z - 1"],
    ["x*y - z^2", "x^2 - y*z", "y^3 - x*z"],
]


@pytest.mark.parametrize("system", SYSTEMS)
@pytest.mark.parametrize("order", ["grevlex", "lex"])
def test_reduced_basis_matches_sympy(system, order):
    polys_ = [parse_polynomial(s, NAMES) for s in system]
    ours = groebner(polys_, order=order)
    xs = sympy.symbols(NAMES)
    theirs = sympy.groebner([sympy.sympify(s.replace("^", "**")) for s in system], *xs, order=order)
    ours_sym = {sympy.expand(sympy.sympify(p.to_string(NAMES).replace("^", "**"))) for p in ours}
    theirs_sym = {sympy.expand(g / sympy.Poly(g, *xs).LC(order=order)) for g in theirs.exprs}
    assert ours_sym == theirs_sym


def test_ideal_membership_by_reduction():
    basis = groebner([parse_polynomial(s, NAMES) for s in SYSTEMS[1]])
    member = parse_polynomial("(x^2 - y)*(x + z) + (y^2 - z)*y^3", NAMES)
    assert reduce_poly(member, basis).is_zero()


def test_unit_ideal_and_points():
    assert contains_one([parse_polynomial(s, NAMES) for s in ["x*y - 1", "x", "z"]])
    pts = rational_points([parse_polynomial(s, NAMES) for s in ["x^2 - 1", "y - x", "z - 2"]])
    assert sorted(pts) == [(-1, -1, 2), (1, 1, 2)]


def test_budget_is_enforced():
    polys_ = [parse_polynomial(s, NAMES) for s in SYSTEMS[2]]
    with pytest.raises(BudgetExceeded):
        groebner(polys_, budget=1)
