from fractions import Fraction

import pytest
from hypothesis import given

from spinrank.scalars import GaussianRational, ScalarParseError, format_scalar, parse_scalar

from .conftest import gaussian_rationals

I = GaussianRational(0, 1)


@pytest.mark.parametrize(
    "text, re, im",
    [
        ("3/2", Fraction(3, 2), 0),
        ("-1+2/3i", -1, Fraction(2, 3)),
        ("0", 0, 0),
        ("-5i", 0, -5),
        ("4/6-2/4i", Fraction(2, 3), Fraction(-1, 2)),
        (" 7 ", 7, 0),
    ],
)
def test_parse(text, re, im):
    z = parse_scalar(text)
    assert (z.re, z.im) == (re, im)


@pytest.mark.parametrize("text", ["", "1/0", "i", "1+i", "1.5", "2/3/4", "abc", "1+2", "3i+1"])
def test_parse_rejects(text):
    with pytest.raises(ScalarParseError):
        parse_scalar(text)


def test_format():
    assert format_scalar(GaussianRational(Fraction(2, 4))) == "1/2"
    assert format_scalar(GaussianRational(-1, Fraction(2, 3))) == "-1+2/3i"
    assert format_scalar(GaussianRational(3, -1)) == "3-1i"
    assert format_scalar(I) == "1i"
    assert format_scalar(GaussianRational()) == "0"


def test_basic_arithmetic():
    assert (1 + I) * (1 - I) == 2
    assert GaussianRational(Fraction(2, 3)) + Fraction(1, 3) == 1
    assert I**2 == -1
    assert (1 + I) / (1 - I) == I
    assert GaussianRational(2) ** -2 == Fraction(1, 4)
    assert 3 - I == GaussianRational(3, -1)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        GaussianRational(1) / 0


def test_hash_matches_rationals():
    assert hash(GaussianRational(Fraction(1, 2))) == hash(Fraction(1, 2))
    assert hash(GaussianRational(3)) == hash(3)
    assert {GaussianRational(2): "x"}[2] == "x"


@given(gaussian_rationals(), gaussian_rationals(), gaussian_rationals())
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == 0
    if a:
        assert a * a.reciprocal() == 1
        assert (b / a) * a == b


@given(gaussian_rationals())
def test_format_round_trip(z):
    assert parse_scalar(format_scalar(z)) == z


@given(gaussian_rationals(), gaussian_rationals())
def test_matches_complex_fraction_pairs(a, b):
    # (p + qi)(r + si) computed on Fraction pairs as an independent route
    p, q, r, s = a.re, a.im, b.re, b.im
    prod = a * b
    assert (prod.re, prod.im) == (p * r - q * s, p * s + q * r)
