from fractions import Fraction
from itertools import combinations

import pytest

from oracles import classify_by_definition, torsion_order_bruteforce, vanishing_sequences
from subcanon.limits import (
    LimitClass,
    NodalVanishingData,
    TorsionCoordinate,
    classify_limit,
    elliptic_tail_sequences,
    expected_dimension,
    gaps_from_ramification,
    minimal_ramification,
    naive_bound,
    torsion_gate,
    torsion_order,
    vanishing_from_ramification,
)


def test_classify_examples():
    assert classify_limit(NodalVanishingData(8, 3, (0, 1, 2, 8), (0, 6, 7, 8))) is LimitClass.REFINED
    assert classify_limit(NodalVanishingData(8, 3, (0, 1, 2, 8), (0, 5, 6, 7))) is LimitClass.NOT_LIMIT
    assert classify_limit(NodalVanishingData(8, 1, (1, 8), (0, 8))) is LimitClass.CRUDE


@pytest.mark.parametrize("r", [0, 1, 2, 3])
def test_classify_exhaustive(r):
    for d in range(r, 11):
        seqs = vanishing_sequences(d, r)
        for a1 in seqs:
            for a2 in seqs:
                got = classify_limit(NodalVanishingData(d, r, a1, a2)).value
                assert got == classify_by_definition(d, r, a1, a2)
                # the condition is symmetric in the two aspects
                assert got == classify_limit(NodalVanishingData(d, r, a2, a1)).value


def test_elliptic_tail_examples():
    assert elliptic_tail_sequences(6, 2, (1, 2, 5)) == ((0, 3, 4), (0, 1, 5))
    assert elliptic_tail_sequences(3, 1, (1, 2)) == ((0, 1), (0, 2))


@pytest.mark.parametrize("g", range(3, 9))
def test_elliptic_tails_refined_and_monotone(g):
    for r in range(1, 4):
        for c in combinations(range(1, g), r + 1):
            if c[-1] != g - 1:
                continue
            b, a = elliptic_tail_sequences(g, r, c)
            assert classify_limit(NodalVanishingData(g - 1, r, c, b)) is LimitClass.REFINED
            assert all(x < y for x, y in zip(a, a[1:]))
            assert all(x < y for x, y in zip(b, b[1:]))
            assert a[-1] == g - 1


def test_elliptic_tail_rejects_bad_c():
    with pytest.raises(ValueError):
        elliptic_tail_sequences(6, 2, (0, 2, 5))
    with pytest.raises(ValueError):
        elliptic_tail_sequences(6, 2, (1, 2, 4))


def test_torsion_gate_grid():
    pts = {Fraction(n, d) for d in range(1, 25) for n in range(d)}
    pts = sorted(pts)
    for g in range(3, 14):
        for u in pts:
            for v in pts[:: 7]:
                t = TorsionCoordinate(u, v)
                n = torsion_order_bruteforce(u, v)
                assert torsion_order(t) == n
                assert torsion_gate(g, t) == (n == 2 * g - 2)


def test_torsion_gate_examples():
    assert torsion_gate(3, TorsionCoordinate(Fraction(1, 4), 0))
    assert not torsion_gate(3, TorsionCoordinate(Fraction(1, 2), 0))
    assert torsion_gate(4, TorsionCoordinate(Fraction(1, 2), Fraction(1, 3)))
    assert TorsionCoordinate(Fraction(5, 4), Fraction(-1, 3)) == TorsionCoordinate(Fraction(1, 4), Fraction(2, 3))
    with pytest.raises(ValueError):
        torsion_gate(2, TorsionCoordinate(0, 0))


def test_dimension_formulas():
    assert expected_dimension(6, 2) == 10
    assert expected_dimension(9, 3) == 14
    assert naive_bound(9, 3) == 8


def test_ramification_conversions():
    ram = minimal_ramification(9, 3)
    assert ram.alphas == (0, 0, 0, 0, 0, 3, 3, 3, 8)
    assert vanishing_from_ramification(ram.alphas) == (0, 1, 2, 3, 4, 8, 9, 10, 16)
    assert gaps_from_ramification(ram.alphas) == (1, 2, 3, 4, 5, 9, 10, 11, 17)
