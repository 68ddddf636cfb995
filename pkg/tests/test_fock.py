import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st
from sympy.functions.combinatorial.numbers import partition

from spincs import fock
from spincs.fock import (FockVector, Q_apply, apply_mode, basis_states, charged_vacuum,
                         format_fock, parse_state, psi, psi_star, state_degree,
                         state_total_charge)

seeds = st.integers(0, 10 ** 6)


def vectors(s=2, max_degree=5):
    return seeds.map(lambda k: fock.random_vector(s, max_degree, random.Random(k)))


def modes(s=2):
    return st.builds(fock.ModeOp, st.sampled_from([fock.PSI, fock.PSI_STAR]),
                     st.integers(1, s), st.integers(-4, 4))


@settings(max_examples=200, deadline=None)
@given(modes(), modes(), vectors())
def test_anticommutators(m1, m2, v):
    lhs = apply_mode(m1, apply_mode(m2, v)) + apply_mode(m2, apply_mode(m1, v))
    assert lhs == v.scale(fock.anticommutator_expected(m1, m2))


def test_vacuum_annihilators():
    vac = FockVector.vacuum()
    for n in range(0, 4):
        assert not apply_mode(psi(1, n), vac)
    for m in range(1, 4):
        assert not apply_mode(psi_star(1, m), vac)
    assert apply_mode(psi_star(1, 0), vac)


@pytest.mark.parametrize("d", range(7))
def test_charge_zero_count_is_partition_number(d):
    assert len(basis_states(1, d, charge=0)) == partition(d)


def test_total_count_matches_product_formula():
    # creators psi[1,-n] (degree n >= 1) and psi*[1,-m] (degree m >= 0) are independent
    D = 8
    coeffs = [1] + [0] * D
    for shift in list(range(1, D + 1)) + list(range(0, D + 1)):
        new = coeffs[:]
        for k in range(D + 1 - shift):
            new[k + shift] += coeffs[k]
        coeffs = new
    for d in range(D + 1):
        assert len(basis_states(1, d)) == coeffs[d]


@settings(max_examples=100, deadline=None)
@given(vectors(3))
def test_state_roundtrip(v):
    assert parse_state(format_fock(v)) == v


def test_parse_examples():
    v = parse_state("psi*[1,-1] psi*[1,0] |0>")
    assert v.terms == {((1, 0, 0), (1, 0, 1)): -1}
    assert parse_state("|0>") == FockVector.vacuum()
    assert parse_state("0") == FockVector()
    with pytest.raises(ValueError):
        parse_state("psi*[1,0]")
    with pytest.raises(ValueError):
        parse_state("psi*[1,0 |0>")


@pytest.mark.parametrize("s", [1, 2, 3])
def test_Q_shifts_charge_and_inverts(s):
    rng = random.Random(s)
    for _ in range(20):
        st_ = fock.random_state(s, 4, rng)
        v = FockVector.basis(st_)
        w = Q_apply("ALL", 1, v, s)
        assert {state_total_charge(x) for x in w.terms} == {state_total_charge(st_) - s}
        assert Q_apply("ALL", -1, w, s) == v


def test_Q_on_vacuum():
    s = 2
    expected = fock.apply_word([psi(2, -1), psi(1, -1)], FockVector.vacuum())
    assert Q_apply("ALL", 1, FockVector.vacuum(), s) == expected


@pytest.mark.parametrize("N,s", [(0, 1), (1, 1), (3, 1), (2, 2), (3, 2)])
def test_charged_vacuum(N, s):
    v = charged_vacuum(N, s)
    (st_,) = v.terms
    assert state_total_charge(st_) == N * s
    # filling N levels per color: degree s * N(N-1)/2
    assert state_degree(st_) == s * N * (N - 1) // 2


def test_zero_mode_counts_color_charge():
    rng = random.Random(0)
    for _ in range(30):
        st_ = fock.random_state(2, 5, rng)
        v = FockVector.basis(st_)
        for c in (1, 2):
            q = fock.state_charge(st_).get(c, 0)
            assert fock.a_mode_apply(c, 0, v) == v.scale(q)


def test_affine_small():
    rep = fock.affine_check(2, 2, [0, 1], [-1, 0, 1])
    assert rep.passed and rep.cases > 0


def test_anticommutation_check_report():
    rep = fock.anticommutation_check(100, 3, 6, seed=1)
    assert rep.passed and rep.cases == 100
