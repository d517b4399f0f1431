from __future__ import annotations

import pytest

from gvh.parse import ParseError, parse_classical, parse_operator, tokenize
from gvh.poly import Polynomial
from gvh.weyl import WeylElement


@pytest.mark.parametrize(
    "text,n,position",
    [
        ("q^", 1, 2),
        ("q + * p", 1, 4),
        ("q3", 2, 0),
        ("q + p2", 1, 4),
        ("(q + p", 1, 6),
        ("q $ p", 1, 2),
        ("1/0", 1, 0),
        ("", 1, 0),
        ("q^1/2", 1, 2),
        ("x", 1, 0),
        ("q p", 1, 2),
    ],
)
def test_errors_report_position(text, n, position):
    with pytest.raises(ParseError) as info:
        parse_classical(text, n)
    assert info.value.position == position
    assert info.value.pointer().splitlines()[1] == " " * position + "^"


def test_bare_names_need_n_equal_one():
    with pytest.raises(ParseError, match="bare"):
        parse_classical("q", 2)
    assert parse_classical("q1", 1) == parse_classical("q", 1)


def test_precedence_and_unary_minus():
    P = lambda t: parse_classical(t, 1)  # noqa: E731
    assert P("2*q^2") == P("2*(q^2)")
    assert P("-q^2") == P("-(q^2)")
    assert P("(q+p)^2") == P("q^2 + 2*q*p + p^2")
    assert P("- - q") == P("q")
    assert P("3/6*q") == P("1/2*q")
    assert P(" q  *  p ") == P("q*p")


def test_classical_rejects_operator_symbols():
    with pytest.raises(ParseError, match="unknown name 'hbar'"):
        parse_classical("hbar*q", 1)


def test_operator_products_are_noncommutative():
    assert parse_operator("p*q", 1) == parse_operator("q*p - i*hbar", 1)
    assert parse_operator("q1*p2", 2) == parse_operator("p2*q1", 2)
    assert parse_operator("(3/2 + i*hbar^2)*I", 1) == WeylElement.scalar(parse_operator("3/2 + i*hbar^2", 1).scalar_part(), 1)


def test_tokenize_kinds():
    kinds = [t.kind for t in tokenize("q1^2 * 3/4")]
    assert kinds == ["NAME", "OP", "NUM", "OP", "NUM", "END"]


def test_polynomial_parse_alias():
    assert Polynomial.parse("q*p", 1) == parse_classical("p*q", 1)
