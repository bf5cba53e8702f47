"""Expression grammar and canonical rendering."""

import pytest

from src.errors import ParseError
from src.freepoly import FieldMode, Polynomial
from src.generators import PolynomialGenerator
from src.parser import format_poly, format_scalar, parse_poly

QI = FieldMode.GAUSSIAN_RATIONAL


def x(index, g=2, starred=False, field=FieldMode.RATIONAL):
    return Polynomial.variable(index, g, field, starred)


def test_parse_commutator_plus_one():
    p = parse_poly("x1*x2 - x2*x1 + 1", 2)
    assert p == x(1) * x(2) - x(2) * x(1) + 1


def test_involution_mark_reverses_products():
    assert parse_poly("(x1*x2)'", 2) == x(2, starred=True) * x(1, starred=True)
    assert parse_poly("x1'", 2) == x(1, starred=True)


def test_powers_and_rationals():
    assert parse_poly("1/2*x1^2 - 3", 1) == (x(1, 1) * x(1, 1)).scale("1/2") - 3
    assert parse_poly("(x1 + 1)^2", 1) == x(1, 1) * x(1, 1) + x(1, 1).scale(2) + 1
    assert parse_poly("x1^2'", 1) == parse_poly("x1'*x1'", 1)


def test_leading_minus_and_whitespace():
    assert parse_poly("-x1+x2", 2) == x(2) - x(1)
    assert parse_poly("  - 2 * x1  ", 2) == x(1).scale(-2)


def test_imaginary_unit_in_gaussian_mode():
    i = QI.imaginary_unit
    assert parse_poly("i*x1", 1, QI) == Polynomial.monomial((0,), 1, QI, i)
    assert parse_poly("(i*x1)'", 1, QI) == Polynomial.monomial((1,), 1, QI, -i)


@pytest.mark.parametrize("text, g, field", [
    ("x3", 2, FieldMode.RATIONAL),
    ("i*x1", 1, FieldMode.RATIONAL),
    ("x1 x2", 2, FieldMode.RATIONAL),
    ("x1''", 1, FieldMode.RATIONAL),
    ("1/0", 1, FieldMode.RATIONAL),
    ("x1 +", 1, FieldMode.RATIONAL),
    ("(x1", 1, FieldMode.RATIONAL),
])
def test_rejected_inputs(text, g, field):
    with pytest.raises(ParseError):
        parse_poly(text, g, field)


def test_parse_error_carries_position():
    with pytest.raises(ParseError) as info:
        parse_poly("x1 + x9", 2)
    assert info.value.position is not None


def test_format_examples():
    assert format_poly(parse_poly("x1*x2 - x2*x1", 2)) == "-1*x2*x1 + x1*x2"
    assert format_poly(Polynomial.zero(2)) == "0"
    assert format_poly(x(1, starred=True)) == "x1'"
    assert format_poly(parse_poly("x1 - 2*x2 + 1/3", 2)) == "-2*x2 + x1 + 1/3"


def test_format_gaussian_scalars():
    i = QI.imaginary_unit
    assert format_scalar(QI.convert(3) + i * QI.convert(-1), QI) == "(3 - 1*i)"
    assert format_scalar(i, QI) == "(1*i)"
    assert format_scalar(QI.convert("1/2"), QI) == "1/2"


@pytest.mark.parametrize("field", [FieldMode.RATIONAL, QI])
def test_format_then_parse_is_identity(field):
    gen = PolynomialGenerator(seed=7, g=2, field=field)
    for _ in range(200):
        p = gen.random_polynomial(4, terms=gen.rng.randint(1, 5))
        assert parse_poly(format_poly(p), 2, field) == p
