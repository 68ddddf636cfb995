from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from spincs.scalars import (BETA, ONE, ZERO, ParamScalar, beta_eval, format_scalar,
                            inverse_beta, parse_scalar, scalar_ring_check)

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
scalars = st.dictionaries(st.integers(-4, 4), fractions, max_size=4).map(ParamScalar)
nonzero_beta = fractions.filter(lambda x: x != 0)


@given(scalars, scalars, scalars)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a + (-a) == ZERO
    assert a * ONE == a


@given(scalars, scalars, nonzero_beta)
def test_evaluation_is_a_homomorphism(a, b, v):
    assert beta_eval(a * b, v) == beta_eval(a, v) * beta_eval(b, v)
    assert beta_eval(a + b, v) == beta_eval(a, v) + beta_eval(b, v)


@given(scalars)
def test_format_parse_roundtrip(a):
    assert parse_scalar(format_scalar(a)) == a


def test_format_examples():
    assert format_scalar(ZERO) == "0"
    assert format_scalar(BETA * BETA - 1) == "b^2 - 1"
    assert format_scalar(Fraction(3, 2) * BETA ** -1) == "3/2*b^-1"
    assert parse_scalar("3/2*b^2 - 1") == Fraction(3, 2) * BETA ** 2 - 1


@pytest.mark.parametrize("bad", ["", "b b", "3 *", "+", "1 2"])
def test_parse_errors(bad):
    with pytest.raises(ValueError):
        parse_scalar(bad)


@given(st.integers(0, 4), nonzero_beta)
def test_inverse_beta(n, v):
    assert BETA ** n * inverse_beta(BETA, n) == ONE
    assert inverse_beta(v, n) * v ** n == 1


def test_zero_beta_rejected_for_negative_powers():
    with pytest.raises(ZeroDivisionError):
        beta_eval(BETA ** -1, 0)


def test_ring_check_report():
    rep = scalar_ring_check(50, seed=3)
    assert rep.passed and rep.cases == 50
