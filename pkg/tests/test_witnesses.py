import pytest

from subcanon.linear_series import PointAnalysis
from subcanon.witnesses import (
    WITNESS_BUILDERS,
    dimension_ledger,
    parity_family_check,
    quadric_quartic_conditions_rank,
    verify_example,
)

FROZEN_QUINTIC = (
    "2*x^5 + 2*x^4*y - 4*x^3*y^2 + 4*x^2*y^3 + 3*x^2*y^2*z + 2*x^2*y*z^2 + 3*x*y^3*z"
    " + x*y^2*z^2 - x*y*z^3 + 4*y^5 - 2*y^4*z - 2*y^2*z^3 - 3*y*z^4"
)


@pytest.mark.parametrize("eid", ["3.1", "3.2", "3.3", "3.4"])
def test_examples_verify(eid):
    r = verify_example(eid)
    assert r["verified"], r["mismatches"]
    assert r["checks"]["duality"] and r["checks"]["semigroup"]
    assert r["checks"]["gap_vanishing_agreement"]


def test_quintic_values():
    r = verify_example("3.1")
    assert r["h0_table"][5] == 3
    assert r["ramification"] == [0, 0, 0, 2, 2, 5]
    assert r["plane_section_vanishing"] == [0, 1, 5]


def test_quintic_seed_regression():
    w = WITNESS_BUILDERS["3.1"](seed=0)
    assert w.curve.forms[0].to_string(w.curve.names) == FROZEN_QUINTIC
    assert PointAnalysis(w.curve, w.point).h0(5) == 3


def test_quintic_seeds_differ_but_agree():
    a = WITNESS_BUILDERS["3.1"](seed=1)
    pa = PointAnalysis(a.curve, a.point)
    assert pa.h0(5) == 3


def test_ledgers():
    totals = {k: dimension_ledger(k).total for k in ("3.1", "3.2", "3.3", "3.4")}
    assert totals == {"3.1": 10, "3.2": 14, "3.3": 15, "3.4": 16}
    with pytest.raises(KeyError):
        dimension_ledger("9.9")


def test_imposed_conditions_rank():
    assert quadric_quartic_conditions_rank(8) == 8


def test_unknown_example():
    with pytest.raises(KeyError):
        verify_example("2.7")


def test_small_parity_sample():
    r = parity_family_check(samples=8, seed=3)
    assert r["samples"] == 8 and r["all_odd"]
    assert r["h0_multiset"] == {"3": 8}
