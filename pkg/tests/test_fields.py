import random

import pytest
from hypothesis import given, settings, strategies as st

from spincs import fock
from spincs.densities import DensityBuilder, DensityLibrary, dump, read_all
from spincs.fields import (A_script_apply, EField, EulerField, Kernel, KernelProductField,
                           KernelRegime, PsiField, PsiStarField, SumField, ZShiftField)
from spincs.fock import FockVector, ModeOp, apply_mode, E_mode_apply

states = st.integers(0, 10 ** 6).map(lambda k: fock.random_state(2, 4, random.Random(k)))


@settings(max_examples=50, deadline=None)
@given(states, st.integers(-3, 4))
def test_basic_fields_are_mode_expansions(st_, k):
    v = FockVector.basis(st_)
    assert PsiField(1).apply_state(k, st_) == apply_mode(fock.psi(1, k), v)
    assert PsiStarField(2).apply_state(k, st_) == apply_mode(fock.psi_star(2, k + 1), v)
    assert EField(1, 2).apply_state(k, st_) == E_mode_apply(1, 2, k, v)
    assert EulerField(PsiField(1)).apply_state(k, st_) == apply_mode(fock.psi(1, k), v).scale(k)
    assert ZShiftField(PsiField(1), 2).apply_state(k, st_) == apply_mode(fock.psi(1, k - 2), v)


@settings(max_examples=50, deadline=None)
@given(states, st.integers(-3, 4))
def test_kernel_expansions_split_a_field(st_, k):
    # int dw z^0 w^0 (w - z)^-1 Psi(w): |w| >> |z| keeps modes k >= 0, |w| << |z| minus modes k < 0
    ker = Kernel(1, 0, 0, 1)
    large = KernelProductField(ker, None, PsiField(1), KernelRegime.LARGE).apply_state(k, st_)
    small = KernelProductField(ker, None, PsiField(1), KernelRegime.SMALL).apply_state(k, st_)
    mode = apply_mode(fock.psi(1, k), FockVector.basis(st_))
    assert large == (mode if k >= 0 else FockVector())
    assert small == (-mode if k < 0 else FockVector())


@settings(max_examples=50, deadline=None)
@given(states, st.integers(-2, 3))
def test_polynomial_kernel_around_is_a_commutator(st_, k):
    # coefficient z^k of [E_12(z), E_21,-1] = E_11,k-1 - E_22,k-1 + k delta_{k,1}
    v = FockVector.basis(st_)
    f = KernelProductField(Kernel(1, 0, 0, 0), EField(1, 2), EField(2, 1), KernelRegime.AROUND)
    expected = E_mode_apply(1, 1, k - 1, v) - E_mode_apply(2, 2, k - 1, v)
    if k == 1:
        expected = expected + v
    assert f.apply_state(k, st_) == expected


@settings(max_examples=50, deadline=None)
@given(states)
def test_pullback_of_psi_is_current_zero_mode(st_):
    v = FockVector.basis(st_)
    assert A_script_apply(PsiField(2), 1, v) == E_mode_apply(1, 2, 0, v)


def test_sum_field_rejects_mixed_degree():
    with pytest.raises(ValueError):
        SumField([(1, PsiField(1)), (1, PsiStarField(1))])


def test_pullback_rejects_wrong_degree():
    with pytest.raises(ValueError):
        A_script_apply(ZShiftField(PsiField(1), 1), 1, FockVector.vacuum())


# ------------------------------------------------------------ density files

def test_default_library_contents():
    lib = DensityLibrary.load()
    assert lib.names("no") == ["T00", "T01", "T02", "T10", "T11p", "T11pp"]
    assert set(lib.names("rec")) == set(lib.names("no"))
    assert lib.has("T10", 1, 2, "rec") and lib.has("T10", 1, 1, "no")


def test_reader_roundtrip():
    text = "(density X diag no (no (psis a) (psi a))) ; comment\n"
    forms = read_all(text)
    assert dump(forms[0]) == "(density X diag no (no (psis a) (psi a)))"
    assert read_all(dump(forms[0])) == forms


@pytest.mark.parametrize("text", ["(density", ")", "(density X diag no)",
                                  "(density X weird no (no (psi a)))",
                                  "(density X diag xx (no (psi a)))"])
def test_reader_errors(text):
    with pytest.raises(ValueError):
        DensityLibrary(read_all(text))


def test_builder_zero_mode_of_T00_is_current():
    b = DensityBuilder(DensityLibrary.load(), 2)
    rng = random.Random(4)
    for _ in range(10):
        v = FockVector.basis(fock.random_state(2, 3, rng))
        for form in ("no", "rec"):
            assert b.zero_mode("T00", 1, 2, form, v) == E_mode_apply(1, 2, 0, v)


def test_builder_unknown_heads():
    b = DensityBuilder(DensityLibrary([]), 1)
    with pytest.raises(ValueError):
        b.build(["bogus"], {}, "no")
    with pytest.raises(KeyError):
        b.density("T00", 1, 1, "no")
