from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hodgeorbit.scalars import (
    I,
    ONE,
    ZERO,
    Scalar,
    as_scalar,
    format_scalar,
    format_sqrt_rational,
    parse_scalar,
    sqrt_rational,
    square_free_split,
    to_mpc,
)

small = st.fractions(min_value=-20, max_value=20, max_denominator=12)
gaussian = st.builds(lambda a, c: Scalar(a, 0, c), small, small)
quadratic = st.builds(lambda a, b, c, e: Scalar(a, b, c, e, d=3), small, small, small, small)
anyscalar = st.one_of(gaussian, quadratic)


@given(quadratic, quadratic, quadratic)
def test_field_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x


@given(anyscalar)
def test_inverse(x):
    if x:
        assert x * x.inverse() == ONE
    else:
        with pytest.raises(ZeroDivisionError):
            x.inverse()


@given(quadratic, quadratic)
def test_conjugation_is_a_field_automorphism(x, y):
    assert (x * y).conjugate() == x.conjugate() * y.conjugate()
    assert x.conjugate().conjugate() == x
    n = x.abs2()
    assert n.is_real() and n.sign() >= 0


@given(anyscalar)
def test_literal_round_trip(x):
    assert parse_scalar(format_scalar(x), 3) == x


@given(st.builds(lambda a, b: Scalar(a, b, d=3), small, small), st.builds(lambda a, b: Scalar(a, b, d=3), small, small))
def test_real_order_matches_floats(x, y):
    if x != y:
        assert (x < y) == (float(x) < float(y))


def test_square_root_arithmetic():
    r3 = Scalar.root(3)
    assert r3 * r3 == 3
    assert sqrt_rational(Fraction(1, 3)) ** 2 == Fraction(1, 3)
    assert sqrt_rational(Fraction(9, 4)) == Fraction(3, 2)
    assert (r3 - 2).sign() == -1


def test_towers_do_not_mix():
    with pytest.raises(ValueError):
        Scalar.root(3) + Scalar.root(2)


def test_complex_elements_have_no_order():
    with pytest.raises(ValueError):
        I.sign()


@pytest.mark.parametrize(
    "text,expected",
    [
        ("1/2", Scalar(Fraction(1, 2))),
        ("-3", Scalar(-3)),
        ("1/2+3/4 i", Scalar(Fraction(1, 2), 0, Fraction(3, 4))),
        ("i", I),
        ("(1/12 rt)", Scalar(0, Fraction(1, 12), d=3)),
        ("(1+1 rt)+(-1/3 rt) i", Scalar(1, 1, 0, Fraction(-1, 3), d=3)),
    ],
)
def test_parse(text, expected):
    assert parse_scalar(text, 3) == expected


@pytest.mark.parametrize("bad", ["abc", "1 rt", "1/2 +", ""])
def test_parse_errors(bad):
    with pytest.raises((ValueError, ZeroDivisionError)):
        parse_scalar(bad)


@pytest.mark.parametrize(
    "t,text",
    [("1/3", "1/sqrt(3)"), ("1/4", "1/2"), ("12", "2 sqrt(3)"), ("2/9", "sqrt(2)/3"), ("1", "1")],
)
def test_sqrt_formatting(t, text):
    assert format_sqrt_rational(Fraction(t)) == text


def test_square_free_split():
    assert square_free_split(12) == (2, 3)
    assert square_free_split(1) == (1, 1)


def test_coercions():
    assert as_scalar(3) == Scalar(3)
    assert as_scalar(Fraction(1, 2)) == Scalar(Fraction(1, 2))
    assert as_scalar("1/2+i") == Scalar(Fraction(1, 2), 0, 1)
    assert abs(complex(to_mpc(Scalar.root(3) * I)) - 1.7320508075688772j) < 1e-15
    assert ZERO == 0 and not ZERO
