import warnings
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from oracles import taylor_value
from xaax.errors import FirstCoefficientZero
from xaax.series import (TaylorSpec, exp_coeffs, log_coeffs, series_compose, series_power,
                         series_reversion)

t = sp.Symbol("t")
coeff_lists = st.lists(st.builds(Fraction, st.integers(-9, 9), st.integers(1, 9)),
                       min_size=1, max_size=6)


def test_log_and_exp_coefficients_match_sympy():
    assert list(log_coeffs(7)) == taylor_value(sp.log(1 + t), t, 7)
    assert list(exp_coeffs(7)) == taylor_value(sp.exp(t) - 1, t, 7)


def test_reversion_of_exp_is_log():
    assert series_reversion(1, exp_coeffs(6)) == log_coeffs(6)


def test_reversion_small_case():
    # f(t) = 2t + t^2 has inverse s -> -1 + sqrt(1 + s)
    inv = taylor_value(sp.sqrt(1 + t) - 1, t, 3)
    assert list(series_reversion(0, (2, 1, 0))) == inv


@given(coeff_lists.filter(lambda c: c[0] != 0))
def test_reversion_is_two_sided_inverse(c):
    g = series_reversion(0, c)
    order = len(c)
    identity = tuple([Fraction(1)] + [Fraction(0)] * (order - 1))
    assert series_compose(g, c, order) == identity
    assert series_compose(c, g, order) == identity


def test_reversion_needs_nonzero_derivative():
    with pytest.raises(FirstCoefficientZero):
        series_reversion(0, (0, 1))


@given(coeff_lists, st.integers(1, 4))
def test_power_matches_sympy(c, k):
    order = len(c)
    poly = sum(sp.Rational(x.numerator, x.denominator) * t ** (i + 1) for i, x in enumerate(c))
    expected = [sp.expand(poly ** k).coeff(t, m) for m in range(1, order + 1)]
    assert list(series_power(c, k, order)) == expected


def test_presets():
    assert TaylorSpec.log(3) == TaylorSpec(1, (1, Fraction(-1, 2), Fraction(1, 3)))
    assert TaylorSpec.monomial(2).coeffs == (0, 1)
    assert TaylorSpec.monomial(2, 4).coeffs == (0, 1, 0, 0)
    assert TaylorSpec(0, (0, 0)).is_flat
    assert TaylorSpec.log(4).derivative == 1


def test_truncation_warns_only_for_user_terms():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        TaylorSpec.log(9).truncated(2)
        TaylorSpec(0, (1, 2, 0, 0)).truncated(2)
    with pytest.warns(UserWarning):
        TaylorSpec(0, (1, 2, 3)).truncated(2)
