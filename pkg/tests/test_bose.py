import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from spincs import bose, finite
from spincs.bose import (PolySym, T_bose_apply, format_polysym, heis_apply, parse_polysym,
                         pi_bar_N, q_apply)
from spincs.finite import SpinPolynomial
from spincs.scalars import BETA

polys = st.tuples(st.integers(1, 2), st.integers(0, 10 ** 6)).map(
    lambda sk: bose.random_polysym(sk[0], 3, random.Random(sk[1])))


@settings(max_examples=100, deadline=None)
@given(polys)
def test_polysym_roundtrip(v):
    assert parse_polysym(format_polysym(v)) == v


def test_polysym_text():
    v = PolySym.gen(1, 2) * PolySym.gen(2, 0, 2) + PolySym.one(Fraction(-3, 2))
    assert parse_polysym(format_polysym(v)) == v
    assert format_polysym(PolySym.gen(1, 1).scale(-1)) == "-p[1,1]"
    assert parse_polysym("(b - 1) * p[1,1]") == PolySym.gen(1, 1).scale(BETA - 1)
    with pytest.raises(ValueError):
        parse_polysym("p[1,x]")


def power_sum_oracle(mono, colors, N):
    """Expand prod p[c,k]^e at p[c,k] = sum_{j: colors_j = c} x_j^k by brute force."""
    terms = {(0,) * N: 1}
    for (c, k), e in mono:
        slots = [j for j in range(N) if colors[j] == c]
        for _ in range(e):
            nxt = {}
            for ex, v in terms.items():
                for j in slots:
                    ex2 = list(ex)
                    ex2[j] += k
                    nxt[tuple(ex2)] = nxt.get(tuple(ex2), 0) + v
            terms = nxt
    return terms


@pytest.mark.parametrize("s,N", [(1, 2), (2, 2), (2, 3)])
def test_pi_bar_N_evaluates_power_sums(s, N):
    rng = random.Random(N + s)
    for _ in range(5):
        v = bose.random_polysym(s, 3, rng)
        got = pi_bar_N(v, N, s)
        t = {}
        for colors in itertools.product(range(1, s + 1), repeat=N):
            for mono, c in v.terms.items():
                for ex, w in power_sum_oracle(mono, colors, N).items():
                    t[(ex, colors)] = t.get((ex, colors), 0) + c * w
        assert got == SpinPolynomial(N, s, t)
        assert finite.is_symmetric(got, 1)


def test_pi_bar_N_example():
    got = pi_bar_N(parse_polysym("p[1,2]"), 2, 1)
    assert finite.format_spinpoly(got) == "(1) * x2^2 * e(1,1) + (1) * x1^2 * e(1,1)"


@settings(max_examples=50, deadline=None)
@given(polys, st.integers(1, 2), st.integers(1, 3), st.integers(1, 3))
def test_heisenberg_commutator(v, c, n, m):
    # [a_{c,n}, a_{c,-m}] = n delta_{nm}
    lhs = heis_apply(c, n, heis_apply(c, -m, v)) - heis_apply(c, -m, heis_apply(c, n, v))
    assert lhs == (v.scale(n) if n == m else PolySym())


@settings(max_examples=50, deadline=None)
@given(polys, st.integers(1, 2))
def test_q_shift_inverts(v, c):
    assert q_apply(c, -1, q_apply(c, 1, v)) == v


def test_phi_commutativity_small():
    assert bose.commutativity_check(2, 2).passed


def test_contour_and_divided_routes_agree():
    rep = bose.bose_dunkl_check(2, [1, 2], 2, BETA)
    assert rep.passed, rep.failures


def test_T_mode_zero_is_color_rotation_after_projection():
    # pi_bar_N T_{12,0} v = sum_i E_{12} at slot i of pi_bar_N v
    v = parse_polysym("p[2,1] * p[2,2]")
    out = T_bose_apply(1, 2, 0, v, 2)
    for N in (1, 2, 3):
        p = pi_bar_N(v, N, 2)
        rotated = p.zero()
        for i in range(1, N + 1):
            rotated = rotated + finite.E_slot(1, 2, i, p)
        assert pi_bar_N(out, N, 2) == rotated


def test_bosonic_yangian_action_small():
    rep = bose.bose_yangian_check(1, [0, 1, 2], [1, 2], 2, BETA)
    assert rep.passed, rep.failures
    assert rep.notes["passing_branch"] == ["+"]


def test_projection_identities_small():
    assert bose.vertex_embedding_check(2, [1, 2], 2).passed
    assert bose.vertex_symmetrization_check(2, [1, 2], 2).passed


def test_unknown_route():
    with pytest.raises(ValueError):
        bose.D_bose({1: {(0,): PolySym.one()}}, 1, route="other")
