from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from or_lab.rational import binomial, format_rational, is_nonneg_integer, multinomial, parse_rational, pochhammer

from oracles import gamma_ratio_float

rationals = st.fractions(max_denominator=50).filter(lambda x: abs(x) < 10**6)


@given(rationals)
def test_format_parse_roundtrip(x):
    assert parse_rational(format_rational(x)) == x


@given(rationals)
def test_format_is_reduced(x):
    text = format_rational(x)
    if "/" in text:
        num, den = text.split("/")
        assert int(den) > 1
        assert Fraction(int(num), int(den)).denominator == int(den)


@pytest.mark.parametrize("text,value", [
    ("3", Fraction(3)),
    ("-1/2", Fraction(-1, 2)),
    ("+4/6", Fraction(2, 3)),
    (" 7 / 21 ", Fraction(1, 3)),
    ("0/5", Fraction(0)),
])
def test_parse_accepts(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("text", ["0.5", "1e3", "1/0", "", "a/b", "1//2", "--1"])
def test_parse_rejects(text):
    with pytest.raises(ValueError):
        parse_rational(text)


def test_format_drops_unit_denominator():
    assert format_rational(Fraction(6, 3)) == "2"
    assert format_rational(Fraction(-3, 6)) == "-1/2"


@given(st.fractions(min_value=Fraction(1, 10), max_value=8, max_denominator=12), st.integers(0, 6))
def test_pochhammer_matches_gamma_ratio(x, m):
    assert float(pochhammer(x, m)) == pytest.approx(gamma_ratio_float(float(x), m), rel=1e-9)


@given(rationals, st.integers(0, 5), st.integers(0, 5))
def test_pochhammer_splits(x, a, b):
    assert pochhammer(x, a + b) == pochhammer(x, a) * pochhammer(x + a, b)


def test_pochhammer_hits_zero_at_nonpositive_integers():
    assert pochhammer(-2, 3) == 0
    assert pochhammer(-2, 2) == 2
    with pytest.raises(ValueError):
        pochhammer(1, -1)


@given(st.integers(0, 8), st.integers(0, 8), st.integers(0, 8))
def test_multinomial(k, s, t):
    if s + t > k:
        assert multinomial(k, s, t) == 0
    else:
        assert multinomial(k, s, t) == binomial(k, s) * binomial(k - s, t)


def test_is_nonneg_integer():
    assert is_nonneg_integer(Fraction(3))
    assert is_nonneg_integer(0)
    assert not is_nonneg_integer(Fraction(-1))
    assert not is_nonneg_integer(Fraction(1, 2))
