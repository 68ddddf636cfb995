import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from spincs import fermi, finite, fock
from spincs.fermi import (COMPOSITIONAL, FORMS, NORMAL_ORDERED, RECURRENT, T_apply, TEvaluator,
                          component_states, has_hole, pi_N)
from spincs.finite import SpinPolynomial
from spincs.fock import FockVector, parse_state
from spincs.scalars import BETA


def slater(st_, N, s):
    """Independent pi_N oracle: signed sum over slot assignments of the filled levels."""
    levels = [(c, d) for (c, rk, d) in st_]
    t = {}
    for perm in itertools.permutations(range(N)):
        e = [0] * N
        cols = [0] * N
        for k, slot in enumerate(perm):
            cols[slot] = levels[k][0]
            e[slot] = levels[k][1]
        key = (tuple(e), tuple(cols))
        t[key] = t.get(key, 0) + finite.perm_sign(perm)
    return SpinPolynomial(N, s, t)


@pytest.mark.parametrize("s,N,deg", [(1, 2, 4), (2, 2, 3), (2, 3, 4), (3, 2, 2)])
def test_pi_N_is_a_slater_determinant_up_to_one_sign(s, N, deg):
    signs = set()
    for st_ in component_states(s, [N], deg):
        got = pi_N(FockVector.basis(st_), N, s)
        if has_hole(st_):
            assert not got
            continue
        ref = slater(st_, N, s)
        assert got in (ref, -ref)
        signs.add((got == ref, N))
    assert len(signs) == 1


def test_pi_N_example():
    v = parse_state("psi*[1,-1] psi*[1,0] |0>")
    p = pi_N(v, 2, 1)
    assert finite.is_symmetric(p, -1)
    assert finite.format_spinpoly(p) == "(-1) * x2^1 * e(1,1) + (1) * x1^1 * e(1,1)"


def test_pi_N_is_zero_off_charge():
    v = parse_state("psi*[1,-1] psi*[1,0] |0>")
    assert not pi_N(v, 1, 1)
    assert not pi_N(v, 3, 1)


@pytest.mark.parametrize("form", FORMS)
def test_T_mode_zero_is_current_zero_mode(form):
    rng = random.Random(11)
    s = 2
    for _ in range(15):
        v = FockVector.basis(fock.random_state(s, 3, rng))
        for a, b in [(1, 1), (1, 2), (2, 1)]:
            assert T_apply(a, b, 0, form, v, s) == fock.E_mode_apply(a, b, 0, v)


def test_T_example_states():
    v = parse_state("psi*[1,0]|0>")
    assert T_apply(1, 1, 0, COMPOSITIONAL, v, 1) == v
    assert not T_apply(1, 2, 0, COMPOSITIONAL, FockVector.vacuum(), 2)


@pytest.mark.parametrize("n", [1, 2])
def test_normal_ordered_form_agrees_with_compositional_on_hole_free_states(n):
    s = 2
    ev = TEvaluator(s)
    beta = Fraction(3, 2)
    for a, b in [(1, 1), (2, 1)]:
        no = ev.operator(a, b, n, NORMAL_ORDERED, beta)
        comp = ev.operator(a, b, n, COMPOSITIONAL, beta)
        for st_ in component_states(s, [1, 2], 2):
            if not has_hole(st_):
                assert no.state(st_) == comp.state(st_), st_


def test_all_three_forms_agree_at_first_order():
    s = 2
    ev = TEvaluator(s)
    for a, b in [(1, 1), (1, 2)]:
        ops = [ev.operator(a, b, 1, f, Fraction(-2, 5)) for f in FORMS]
        for st_ in component_states(s, [0, 1], 2):
            if not has_hole(st_):
                assert ops[0].state(st_) == ops[1].state(st_) == ops[2].state(st_)


def test_T_commutes_with_pi_N_small_symbolic():
    rep = fermi.fermi_yangian_check(2, [0, 1], [1, 2], 2, BETA)
    assert rep.passed, rep.failures
    assert rep.notes["passing_branch"] == ["-"]


def test_projection_identities_small():
    assert fermi.shift_projection_check(1, [0, 1, 2], 3).passed
    assert fermi.slot_expansion_check(2, [1, 2], 2).passed
    assert fermi.antisym_pullback_check(2, [0, 1], [1, 2], 2, Fraction(3, 2)).passed
    assert fermi.dunkl_pullback_check(1, ["", "D"], [1, 2], 2, BETA).passed


def test_stabilized_T_reports_cutoff():
    v = parse_state("psi*[1,-2] psi*[2,0] |0>")
    out, K = fermi.stabilized_T(1, 2, 2, v, 2, Fraction(3, 2))
    assert K >= v.degree_max() + 4
    assert out == fermi.T_compositional(1, 2, 2, v, 2, Fraction(3, 2), cutoff=2 * K)


def test_unknown_form_rejected():
    with pytest.raises(ValueError):
        TEvaluator(1).piece_operator(1, 1, "T01", "BOGUS")
    with pytest.raises(ValueError):
        T_apply(1, 1, 3, NORMAL_ORDERED, FockVector.vacuum(), 1)


@settings(max_examples=20, deadline=None)
@given(st.lists(st.integers(0, 6), min_size=2, max_size=7))
def test_lagrange_fit_recovers_polynomial(coeffs):
    xs = list(range(len(coeffs)))
    ys = [fermi.poly_eval(coeffs, x) for x in xs]
    fit = fermi.lagrange_fit(xs, ys)
    for x in range(-3, 10):
        assert fermi.poly_eval(fit, x) == fermi.poly_eval(coeffs, x)


def test_euler_power_operator_diagonal():
    v = parse_state("psi*[1,-2] psi[1,-1] |0>")
    (st_,) = v.terms
    # psi*[1,-2] contributes 2^n, the hole psi[1,-1] contributes -(-1)^n
    assert fermi.euler_power_operator(1).state(st_) == FockVector.basis(st_, 3)
    assert fermi.euler_power_operator(2).state(st_) == FockVector.basis(st_, 3)
