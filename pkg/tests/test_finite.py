import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from spincs import finite
from spincs.finite import (SpinPolynomial, K, P, dunkl_apply, format_spinpoly, parse_spinpoly,
                           project_pm, sigma)
from spincs.scalars import BETA, beta_eval

b = sympy.Symbol("b")


def to_sympy(p: SpinPolynomial, xs):
    """Color tuple -> sympy polynomial in x (coefficients may depend on beta)."""
    out = {}
    for (e, c), v in p.terms.items():
        coef = (sum(sympy.Rational(cv.numerator, cv.denominator) * b ** k
                    for k, cv in v.terms.items()) if hasattr(v, "terms")
                else sympy.Rational(Fraction(v).numerator, Fraction(v).denominator))
        mono = sympy.Mul(*[x ** k for x, k in zip(xs, e)])
        out[c] = out.get(c, 0) + coef * mono
    return {c: sympy.expand(v) for c, v in out.items() if sympy.expand(v) != 0}


def dunkl_oracle(i, p: SpinPolynomial):
    """x_i d/dx_i + b sum_j x_i (f - K_ij f)/(x_i - x_j), by rational simplification."""
    xs = sympy.symbols(f"x1:{p.N + 1}")
    f = to_sympy(p, xs)
    xi = xs[i - 1]
    out = {}
    for c, g in f.items():
        val = xi * sympy.diff(g, xi)
        for j in range(p.N):
            if j == i - 1:
                continue
            swapped = g.subs({xi: xs[j], xs[j]: xi}, simultaneous=True)
            val += b * sympy.cancel(xi * (g - swapped) / (xi - xs[j]))
        out[c] = sympy.expand(val)
    return {c: v for c, v in out.items() if v != 0}


def polys(N, s, degree=3):
    seeds = st.integers(0, 10 ** 6)
    return seeds.map(lambda k: finite.random_spinpoly(N, s, degree, random.Random(k)))


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 3).flatmap(lambda N: st.tuples(st.just(N), st.integers(1, N),
                                                        polys(N, 2))))
def test_dunkl_matches_rational_oracle(args):
    N, i, p = args
    xs = sympy.symbols(f"x1:{N + 1}")
    assert to_sympy(dunkl_apply(i, p), xs) == dunkl_oracle(i, p)


def test_dunkl_on_linear_monomial():
    p = SpinPolynomial.monomial([1, 0], [1, 1], 1)
    assert dunkl_apply(1, p) == p.scale(1 + BETA)
    assert dunkl_apply(1, p, Fraction(2)) == p.scale(3)


@settings(max_examples=40, deadline=None)
@given(polys(3, 2))
def test_swaps(p):
    assert K(1, 2, K(1, 2, p)) == p
    assert sigma(1, 3, p) == K(1, 3, P(1, 3, p))
    assert P(2, 3, K(2, 3, p)) == K(2, 3, P(2, 3, p))


@settings(max_examples=30, deadline=None)
@given(polys(3, 2), st.sampled_from([1, -1]))
def test_projection_idempotent_and_symmetric(p, sign):
    q = project_pm(p, sign)
    assert project_pm(q, sign) == q
    assert finite.is_symmetric(q, sign)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3).flatmap(lambda N: polys(N, 3)))
def test_spinpoly_roundtrip(p):
    assert parse_spinpoly(format_spinpoly(p), p.N, p.s) == p


def test_spinpoly_parse_errors():
    with pytest.raises(ValueError):
        parse_spinpoly("x1 * e(1,1)", 2, 1)
    with pytest.raises(ValueError):
        parse_spinpoly("(1) * x1^1 * e(1)", 2, 1)


def test_slot_range_checked():
    p = SpinPolynomial.monomial([1, 0], [1, 2], 2)
    with pytest.raises(IndexError):
        K(1, 3, p)


def test_daha_symbolic_small():
    rep = finite.daha_check(2, 2, 2, trials=2, seed=1, beta=BETA)
    assert rep.passed, rep.failures


def test_yangian_symbolic_small():
    rep = finite.yangian_relation_check(2, 1, 1, -1, 1, BETA)
    assert rep.passed, rep.failures


def test_sampled_beta_agrees_with_symbolic():
    p = finite.random_spinpoly(3, 2, 3, random.Random(5))
    sym = finite.yangian_t_apply(1, 2, 2, -1, p, BETA)
    num = finite.yangian_t_apply(1, 2, 2, -1, p, Fraction(3, 2))
    assert sym.map_coeffs(lambda c: beta_eval(c, Fraction(3, 2))) == num


def test_t_mode_zero_is_color_rotation():
    p = SpinPolynomial.monomial([2, 0], [2, 1], 2)
    out = finite.yangian_t_apply(1, 2, 0, -1, p)
    assert out == SpinPolynomial.monomial([2, 0], [1, 1], 2)


def test_qdet_coefficients_commute_small():
    mats, basis = finite.qdet_coeffs(2, 2, 2, -1, 1, Fraction(3, 2))
    assert basis
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            assert finite.mat_is_zero(finite.commutator(mats[i], mats[j]))


def test_omega_strips_frozen_slots():
    # (x1 - x2) e(1,1): the slot carrying color 1 at exponent 0 is removed, then divide by x1
    p = project_pm(SpinPolynomial.monomial([1, 0], [1, 1], 1), -1).scale(2)
    assert finite.omega_apply(p, 1) == SpinPolynomial.monomial([0], [1], 1)
    with pytest.raises(ValueError):
        finite.omega_apply(p, 2)
