import pytest
from hypothesis import given, strategies as st

from subcanon.algebra.poly import MultiPoly
from subcanon.parser import ParseError, format_polynomial, parse_polynomial
from subcanon.witnesses import QUADRIC_S

P3 = ["x", "y", "z", "t"]


def test_quadric_form():
    s = parse_polynomial(QUADRIC_S, P3)
    assert s.terms == {(1, 0, 1, 0): 1, (0, 2, 0, 0): -1, (0, 0, 0, 2): 1}
    assert format_polynomial(s, P3) == "x*z - y^2 + t^2"


def test_zero():
    assert parse_polynomial("0", P3) == MultiPoly.zero(4)


def test_dangling_operator_position():
    with pytest.raises(ParseError) as err:
        parse_polynomial("x + ", P3)
    assert err.value.position == 4 and "offset 4" in str(err.value)


@pytest.mark.parametrize("text, pos", [("x + w", 4), ("x ** 2", 3), ("(x + y", 6), ("x / y", 4), ("x ^ y", 4), ("x $ y", 2)])
def test_errors_carry_positions(text, pos):
    with pytest.raises(ParseError) as err:
        parse_polynomial(text, P3)
    assert err.value.position == pos


def test_precedence_and_division_by_constants():
    assert parse_polynomial("-x^2", P3) == -parse_polynomial("x*x", P3)
    assert parse_polynomial("(x + y)^2 / 2", P3) == parse_polynomial("1/2*x^2 + x*y + 1/2*y^2", P3)
    assert parse_polynomial("2 - -x", P3) == parse_polynomial("x + 2", P3)


@st.composite
def expressions(draw, depth=0):
    if depth > 2 or draw(st.booleans()):
        return draw(st.sampled_from(["x", "y", "z", "t", "3", "0", "12"]))
    op = draw(st.sampled_from(["+", "-", "*", "^"]))
    a = draw(expressions(depth=depth + 1))
    if op == "^":
        return f"({a})^{draw(st.integers(0, 3))}"
    return f"({a}) {op} ({draw(expressions(depth=depth + 1))})"


@given(expressions())
def test_print_parse_roundtrip(text):
    p = parse_polynomial(text, P3)
    assert parse_polynomial(format_polynomial(p, P3), P3) == p


def test_gaussian_coefficients():
    p = parse_polynomial("i*z^2 + i", ["z"], imaginary="i")
    assert parse_polynomial(p.to_string(["z"]), ["z"], imaginary="i") == p
    with pytest.raises(ParseError):
        parse_polynomial("i*z", ["z"])
