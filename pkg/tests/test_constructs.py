import random

import pytest

from mkfuzzy import langops as L
from mkfuzzy.constructs import (ConstructionError, StrictAlphabeticHom, cauchy, char_automaton,
                                conj_char, disjunction, hom_image, in_ter_one, inv_hom,
                                nivat_compose, nivat_decompose, normalize, scalar_left,
                                scalar_right, scalar_right_normalized, strong_support)
from mkfuzzy.fclassic import AlphabetMismatchError, Dfa, accepts, all_words
from mkfuzzy.kvalues import ONE, ZERO, TruthValue, conj, disj
from mkfuzzy.mkauto import (MkAutomaton, behavior, const_automaton, is_deterministic,
                            is_normalized, is_unambiguous, path_weight, paths)
from mkfuzzy.randgen import random_automaton, random_hom

from conftest import K1, K2

AB = ("a", "b")


def only_a():
    return Dfa(("0",), AB, "0", {("0", "a"): "0"}, frozenset({"0"}))


def eps_only():
    return Dfa(("0",), AB, "0", {}, frozenset({"0"}))


def test_char_automaton():
    c = char_automaton(only_a())
    assert is_deterministic(c)
    assert behavior(c, "aa") == ONE and behavior(c, "ab") == ZERO


def test_disjunction_of_constants():
    d = disjunction(const_automaton(K1, AB), const_automaton(K2, AB))
    assert d.states[0].startswith("1:")
    for w in all_words(AB, 3):
        assert behavior(d, w) == disj(K1, K2)


def test_disjunction_is_order_sensitive():
    c1, c2 = const_automaton(K1, AB), const_automaton(K2, AB)
    assert behavior(disjunction(c1, c2), "ab") != behavior(disjunction(c2, c1), "ab")


def test_conj_char_restricts():
    c = conj_char(only_a(), const_automaton(K1, AB))
    assert behavior(c, "aaa") == K1
    assert behavior(c, "ab") == ZERO


def test_hom_image_identity_and_constant(two):
    ident = StrictAlphabeticHom.identity(("a",))
    img = hom_image(two, ident)
    for n in range(5):
        assert behavior(img, "a" * n) == behavior(two, "a" * n)
    h = StrictAlphabeticHom(AB, ("x",), {"a": "x", "b": "x"})
    c = hom_image(const_automaton(K1, AB), h)
    # two preimages, each of value K1
    assert behavior(c, ("x",)) == disj(K1, K1) != K1


def test_hom_requires_total_map():
    with pytest.raises(ValueError):
        StrictAlphabeticHom(AB, ("x",), {"a": "x"})


def test_inv_hom_collapse():
    a = MkAutomaton(["s", "t"], AB, {"s": ONE},
                    {("s", "b", "t"): K1, ("t", "b", "t"): K2}, {"t": ONE})
    h = StrictAlphabeticHom(("x", "y"), AB, {"x": "b", "y": "b"})
    c = inv_hom(a, h)
    assert behavior(c, ("x", "y")) == behavior(a, "bb") == conj(K1, K2)


def test_scalar_right():
    a = const_automaton(K1, AB)
    assert behavior(scalar_right(a, K2), "ab") == conj(K1, K2)
    assert behavior(scalar_right(a, ONE), "ab") == K1
    d = char_automaton(only_a())
    assert behavior(scalar_right(d, K2), "b") == ZERO == conj(ZERO, K2)


def test_scalar_left_live_and_dead():
    d = conj_char(only_a(), const_automaton(ONE, AB)).renumber()
    k = TruthValue("1/2", "1/5", "1/5", "1/10")
    res = scalar_left(k, d)
    assert behavior(res.automaton, "aa") == conj(k, ONE)
    assert accepts(res.dead_words, ("b",))
    assert behavior(res.automaton, "b") == ZERO
    assert res.dead_value == conj(k, ZERO) == TruthValue(0, "9/10", 0, "1/10")
    assert res.discrepant


def test_scalar_left_removes_zero_initial():
    res = scalar_left(ZERO, const_automaton(K1, AB))
    assert res.initial_removed and not res.automaton.initial


def test_normalize_structure(const_k1):
    n = normalize(const_k1)
    assert is_normalized(n) and is_unambiguous(n)
    assert n.states[-1] == "init"
    assert behavior(n, "") == ZERO
    for w in all_words(AB, 4, 1):
        assert behavior(n, w) == K1


def test_normalize_requires_determinism(two):
    with pytest.raises(ConstructionError):
        normalize(two)


def test_scalar_right_normalized(const_k1):
    n = scalar_right_normalized(normalize(const_k1), K2)
    assert is_normalized(n) and is_unambiguous(n)
    assert behavior(n, "ba") == conj(K1, K2)
    with pytest.raises(ConstructionError):
        scalar_right_normalized(const_k1, K2)


def test_in_ter_one(two):
    a = two.replace(initial={"p": K2}, final={"p": K1, "q": K2})
    b = in_ter_one(a)
    assert set(b.initial.values()) == {ONE} and set(b.final.values()) == {ONE}
    for n in range(1, 5):
        assert behavior(b, "a" * n) == behavior(a, "a" * n)


def test_cauchy_with_empty_word_indicator():
    r = char_automaton(eps_only())
    s = const_automaton(K1, AB)
    c = cauchy(r, s)
    for w in all_words(AB, 4):
        assert behavior(c, w) == K1


def test_cauchy_matches_split_fold():
    a1 = MkAutomaton(["s", "t"], AB, {"s": K2},
                     {("s", "a", "t"): K1, ("t", "b", "s"): ONE}, {"s": K1, "t": K2})
    a2 = MkAutomaton(["u"], AB, {"u": TruthValue(0, "1/2", 0, "1/2")},
                     {("u", "a", "u"): K2}, {"u": K1})
    # suffixes containing b are dead in a2, so r(u) conj ZERO terms must survive
    c = cauchy(a1, a2)
    oracle = L.Cauchy(L.Behavior(a1), L.Behavior(a2))
    for w in all_words(AB, 4):
        assert behavior(c, w) == oracle(w), w


def test_cauchy_errors(two, const_k1):
    with pytest.raises(ConstructionError, match="deterministic"):
        cauchy(two, two)
    with pytest.raises(AlphabetMismatchError):
        cauchy(const_k1, const_automaton(K1, ("a",)))


def test_strong_support():
    a = MkAutomaton(["s", "t"], AB, {"s": ONE},
                    {("s", "a", "t"): TruthValue(0, 1, 0, 0), ("s", "b", "s"): K1},
                    {"s": ONE, "t": ONE})
    d = strong_support(a)
    assert accepts(d, ("b", "b"))
    assert not accepts(d, ("a",))


def test_nivat_round_trip_const():
    a = const_automaton(K1, AB).replace(states=("q", "r"), initial={"r": ONE},
                                        transitions={("r", "a", "q"): K1, ("r", "b", "q"): K1,
                                                     ("q", "a", "q"): ONE, ("q", "b", "q"): ONE},
                                        final={"q": ONE})
    n = nivat_decompose(a)
    assert len(n.inner_alphabet) == len(a.transitions)
    c = nivat_compose(n)
    for w in all_words(AB, 4, 1):
        assert behavior(c, w) == behavior(a, w) == K1
    assert behavior(c, "") == ZERO


def test_nivat_rejects_nonzero_epsilon(const_k1):
    with pytest.raises(ConstructionError):
        nivat_decompose(const_k1)


def test_hom_image_multiset_random():
    rng = random.Random(11)
    for _ in range(10):
        a = random_automaton(rng, ("a", "b", "c"), states=3)
        h = random_hom(rng, ("a", "b", "c"), ("x", "y"))
        img = hom_image(a, h)
        for u in all_words(("x", "y"), 3):
            got = sorted(path_weight(img, p, u) for p in paths(img, u))
            want = sorted(path_weight(a, p, v) for v in L.hom_preimages(h, u) for p in paths(a, v))
            assert got == want
