from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mkfuzzy.kvalues import (ONE, ZERO, TruthValue, TruthValueError, conj, conj_fold, disj,
                             disj_fold, format_truth, parse_truth)

from conftest import K1, K2


@st.composite
def truths(draw):
    denom = draw(st.integers(min_value=1, max_value=40))
    cuts = sorted(draw(st.lists(st.integers(0, denom), min_size=3, max_size=3)))
    parts = [cuts[0], cuts[1] - cuts[0], cuts[2] - cuts[1], denom - cuts[2]]
    return TruthValue(*(Fraction(p, denom) for p in draw(st.permutations(parts))))


def test_disj_example():
    assert disj(K1, K2) == TruthValue("21/25", "1/100", "19/500", "14/125")
    assert disj(K2, K1) == TruthValue("231/250", "1/100", "19/500", "7/250")


def test_scalar_zero_laws():
    assert conj(ZERO, K1) == ZERO
    assert conj(K1, ZERO) == TruthValue(0, Fraction(9, 10), 0, Fraction(1, 10))


def test_folds():
    assert disj_fold([]) == ZERO
    assert conj_fold([]) == ONE
    assert disj_fold([K1]) == K1
    assert disj_fold([K1, K2]) == disj(K1, K2)
    assert conj_fold([ZERO, K1]) == ZERO


def test_operators_are_the_connectives():
    assert (K1 | K2) == disj(K1, K2)
    assert (K1 & K2) == conj(K1, K2)


def test_parse_decimal_is_exact():
    assert parse_truth("<0.3,0.2,0.4,0.1>") == K1
    assert parse_truth("<1,0,0,0>") == ONE
    assert parse_truth(" < 9/10 , 1/20, 3/100 ,1/50 > ") == K2


@pytest.mark.parametrize("bad", ["<1/2,1/2,1/2,0>", "<1,0,0>", "1,0,0,0", "<2,-1,0,0>", "<a,b,c,d>"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        parse_truth(bad)


def test_constructor_checks_invariants():
    with pytest.raises(TruthValueError):
        TruthValue(1, 1, 0, 0)
    with pytest.raises(TruthValueError):
        TruthValue(Fraction(3, 2), Fraction(-1, 2), 0, 0)


def test_format_round_trip():
    assert format_truth(K2) == "<9/10,1/20,3/100,1/50>"
    assert parse_truth(format_truth(K2)) == K2
    assert format_truth(K1, decimal=True) == "<0.3,0.2,0.4,0.1>"


@settings(max_examples=300)
@given(truths(), truths(), truths())
def test_associativity(a, b, c):
    assert disj(disj(a, b), c) == disj(a, disj(b, c))
    assert conj(conj(a, b), c) == conj(a, conj(b, c))


@settings(max_examples=300)
@given(truths(), truths())
def test_closure_and_units(a, b):
    for k in (disj(a, b), conj(a, b)):
        assert sum(k.astuple()) == 1
        assert all(0 <= x <= 1 for x in k)
    assert disj(ZERO, a) == a == disj(a, ZERO)
    assert conj(ONE, a) == a == conj(a, ONE)


@given(truths(), truths())
def test_zero_sum_and_zero_divisor_free(a, b):
    if disj(a, b) == ZERO:
        assert a == ZERO and b == ZERO
    if conj(a, b) == ZERO:
        assert a == ZERO or b == ZERO


@given(truths())
def test_right_conjunction_with_zero(k):
    assert conj(k, ZERO) == TruthValue(0, k.t + k.f + k.u, 0, k.e)
    assert disj(ONE, k) == ONE
