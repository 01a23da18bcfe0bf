import pytest
from hypothesis import given, strategies as st

from oracles import monomial_pole_orders
from subcanon.curves import CompleteIntersectionCurve, ProjectivePoint
from subcanon.linear_series import (
    GapSequence,
    PointAnalysis,
    TruncationError,
    VanishingSequence,
    canonical_system,
    hyperelliptic_h0,
    hyperelliptic_h0_bruteforce,
    ramification_and_weight,
    semigroup_check,
    vanishing_sequence,
)
from subcanon.parser import parse_polynomial

P2 = ["x", "y", "z"]


def plane(text):
    return CompleteIntersectionCurve([parse_polynomial(text, P2)], P2)


def test_quadric_quartic_point(quadric_quartic):
    w, pa = quadric_quartic
    rep = pa.report()
    assert rep["genus"] == 9
    assert rep["gaps"] == [1, 2, 3, 4, 5, 9, 10, 11, 17]
    assert rep["vanishing"] == [0, 1, 2, 3, 4, 8, 9, 10, 16]
    assert rep["ramification"] == [0, 0, 0, 0, 0, 3, 3, 3, 8]
    assert rep["weight"] == 17
    assert pa.h0(8) == 4 and pa.h0(16) == 9
    assert rep["subcanonical"] and rep["semigroup_ok"]


def test_quadric_quartic_duality(quadric_quartic):
    _, pa = quadric_quartic
    for n in range(0, 17):
        assert pa.h0(n) - pa.h0_dual(n) == n - 9 + 1


def test_canonical_system_dimension(quadric_quartic):
    w, _ = quadric_quartic
    assert canonical_system(w.curve).dimension == 9


def test_hyperflex_of_fermat_quartic():
    # hand derivation: canonical series = lines; at a hyperflex the orders are 0, 1, 4
    pa = PointAnalysis(plane("x^4 + y^4 - z^4"), ProjectivePoint([0, 1, 1]))
    assert pa.gaps().gaps == (1, 2, 5)
    assert pa.is_subcanonical()
    assert ramification_and_weight(pa.canonical_vanishing()).alphas == (0, 0, 2)


def test_ordinary_flex_of_klein_quartic():
    pa = PointAnalysis(plane("x^3*y + y^3*z + z^3*x"), ProjectivePoint([1, 0, 0]))
    assert pa.gaps().gaps == (1, 2, 4)
    assert not pa.is_subcanonical()
    assert pa.canonical_vanishing().orders == (0, 1, 3)


def test_plane_section_series():
    c = plane("x^4 + y^4 - z^4")
    lines = [parse_polynomial(v, P2) for v in P2]
    assert vanishing_sequence(lines, c, ProjectivePoint([0, 1, 1]), d=4).orders == (0, 1, 4)


def test_truncation_guard():
    with pytest.raises(TruncationError):
        PointAnalysis(plane("x^4 + y^4 - z^4"), ProjectivePoint([0, 1, 1]), order=2)


def test_sequence_validation():
    with pytest.raises(ValueError):
        VanishingSequence((0, 2, 2), 4)
    with pytest.raises(ValueError):
        VanishingSequence((0, 1, 5), 4)
    assert GapSequence((1, 2, 5)).genus == 3


@pytest.mark.parametrize("g", range(2, 9))
def test_hyperelliptic_three_routes(g):
    for n in range(0, 2 * g - 1):
        expected = (n + 2) // 2
        assert hyperelliptic_h0(g, n) == expected
        assert hyperelliptic_h0_bruteforce(g, n) == expected
        assert monomial_pole_orders(g, n) == expected


def test_hyperelliptic_range_checked():
    with pytest.raises(ValueError):
        hyperelliptic_h0(1, 0)
    with pytest.raises(ValueError):
        hyperelliptic_h0(3, 5)


@given(st.lists(st.integers(1, 12), min_size=1, max_size=6, unique=True))
def test_semigroup_check_matches_definition(gaps):
    gaps = sorted(gaps)
    holes = set(gaps)
    closed = all((a + b) not in holes for a in range(1, max(gaps) + 1) if a not in holes
                 for b in range(1, max(gaps) + 1) if b not in holes)
    assert semigroup_check(gaps) == closed
