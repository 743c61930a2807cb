from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from xaax.errors import ParseError
from xaax.scalar import (I, GaussianRational, as_scalar, format_scalar, gaussian,
                         parse_scalar, scalar_from_json, scalar_key, scalar_to_json)

rationals = st.builds(Fraction, st.integers(-999, 999), st.integers(1, 50))
gaussians = st.builds(gaussian, rationals, rationals)


@pytest.mark.parametrize("text, value", [
    ("3", Fraction(3)),
    ("-7/4", Fraction(-7, 4)),
    ("i", I),
    ("-i", -I),
    ("2i", 2 * I),
    ("1/2-3i", Fraction(1, 2) - 3 * I),
    ("-2/3+4/5*i", Fraction(-2, 3) + Fraction(4, 5) * I),
    ("0i", Fraction(0)),
])
def test_parse_examples(text, value):
    assert parse_scalar(text) == value


@pytest.mark.parametrize("bad", ["", "1.5", "1e3", "x", "1/0", "2+"])
def test_parse_rejects(bad):
    with pytest.raises(ParseError):
        parse_scalar(bad)


def test_floats_and_bools_refused():
    with pytest.raises(TypeError):
        as_scalar(0.5)
    with pytest.raises(TypeError):
        as_scalar(True)


def test_gaussian_collapses_to_rational():
    assert isinstance(gaussian(3, 0), Fraction)
    assert (1 + I) * (1 - I) == 2
    assert isinstance((1 + I) * (1 - I), Fraction)


def test_gaussian_never_equals_rational():
    assert GaussianRational(1, 1) != Fraction(1)


@given(gaussians, gaussians, gaussians)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == 0
    if b:
        assert (a / b) * b == a
        assert 1 / b * b == 1


@given(gaussians)
def test_text_and_json_round_trip(x):
    assert parse_scalar(format_scalar(x)) == x
    assert scalar_from_json(scalar_to_json(x)) == x
    assert hash(as_scalar(x)) == hash(parse_scalar(format_scalar(x)))


@given(gaussians, st.integers(min_value=-4, max_value=4))
def test_integer_powers(x, k):
    if k < 0 and not x:
        return
    expected = Fraction(1)
    for _ in range(abs(k)):
        expected = expected * x
    if k < 0:
        expected = 1 / expected
    assert x ** k == expected


def test_sort_key_is_lexicographic():
    values = [1 + I, Fraction(0), I, Fraction(1)]
    assert sorted(values, key=scalar_key) == [Fraction(0), I, Fraction(1), 1 + I]


def test_conjugate():
    assert (2 - 3 * I).conjugate() == 2 + 3 * I
