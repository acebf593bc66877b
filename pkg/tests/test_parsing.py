from fractions import Fraction

import pytest

from hyperterm.errors import ParseError
from hyperterm.parsing import (
    format_multipoly,
    format_unipoly,
    parse_multipoly,
    parse_unipoly,
)
from hyperterm.poly import MultiPoly


def test_parse_basic():
    p = parse_multipoly("3*z1^2*z2 - 7/2*z1 + 1", 2)
    assert p.coefficient((2, 1)) == 3
    assert p.coefficient((1, 0)) == Fraction(-7, 2)
    assert p.coefficient((0, 0)) == 1


def test_parse_parens_and_unary_minus():
    p = parse_multipoly("-(z1 - z2)^2", 2)
    q = parse_multipoly("-z1^2 + 2*z1*z2 - z2^2", 2)
    assert p == q


def test_parse_rational_literal():
    assert parse_multipoly("-7/2", 1) == MultiPoly.constant(1, Fraction(-7, 2))


def test_whitespace_insignificant():
    assert parse_multipoly(" z1 +  2 ", 1) == parse_multipoly("z1+2", 1)


def test_no_implicit_multiplication():
    with pytest.raises(ParseError):
        parse_multipoly("2 z1", 1)


def test_unknown_variable():
    with pytest.raises(ParseError):
        parse_multipoly("z3 + 1", 2)
    with pytest.raises(ParseError):
        parse_multipoly("x + 1", 2)


def test_bad_exponent():
    with pytest.raises(ParseError):
        parse_multipoly("z1^(2)", 1)


def test_round_trip_multipoly():
    for text, k in [
        ("z1^2 - 7/2*z2 + 1", 2),
        ("0", 3),
        ("-z1*z2*z3", 3),
        ("2/3", 1),
        ("z1^4 - z1^2 + 5", 1),
    ]:
        p = parse_multipoly(text, k)
        assert parse_multipoly(format_multipoly(p), k) == p


def test_round_trip_unipoly():
    for text in ["2*t + 1", "t^3 - t", "-1/2", "0", "t^2 - 3*t + 2"]:
        q = parse_unipoly(text)
        assert parse_unipoly(format_unipoly(q)) == q
