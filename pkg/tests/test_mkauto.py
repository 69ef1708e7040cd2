import pytest

from mkfuzzy.fclassic import ForeignLetterError
from mkfuzzy.kvalues import ONE, ZERO, TruthValue, conj, disj
from mkfuzzy.mkauto import (MkAutomaton, behavior, behavior_reference, const_automaton,
                            is_deterministic, is_normalized, is_unambiguous, path_weight, paths,
                            underlying_nfa, validate)

from conftest import K1, K2


def test_const_paths_and_behavior(const_k1):
    assert list(paths(const_k1, "aa")) == [("q", "q", "q")]
    assert path_weight(const_k1, ("q", "q"), "a") == K1
    for w in ["", "a", "ab", "bba"]:
        assert behavior(const_k1, w) == K1


def test_two_paths_in_order(two):
    assert list(paths(two, "a")) == [("p", "p"), ("p", "q")]
    assert path_weight(two, ("p", "q"), "a") == K2
    assert behavior(two, "a") == TruthValue("21/25", "1/100", "19/500", "14/125")


def test_two_longer_word_matches_reference(two):
    for n in range(5):
        assert behavior(two, "a" * n) == behavior_reference(two, "a" * n)


def test_tie_at_last_state_matters(two):
    # both paths over "a" share q0 = p, so only the last state orders them
    assert behavior_reference(two, "a", tie_descending=True) == disj(K2, K1)
    assert behavior(two, "a") == disj(K1, K2)


def test_reordering_states_can_change_behavior(two):
    swapped = two.reorder(["q", "p"])
    assert behavior(swapped, "a") == disj(K2, K1) != behavior(two, "a")


def test_no_path_gives_zero(two):
    a = two.replace(final={"q": ONE})
    assert behavior(a, "") == ZERO
    assert behavior(MkAutomaton(["s"], ["a"], {"s": ONE}, {}, {}), "a") == ZERO


def test_foreign_letter(two):
    with pytest.raises(ForeignLetterError):
        behavior(two, "ab")


def test_structure_predicates(const_k1, two):
    assert is_deterministic(const_k1) and not is_normalized(const_k1)
    assert is_unambiguous(const_k1)
    assert not is_deterministic(two) and not is_unambiguous(two)


def test_validate_flags_zero_initial():
    a = MkAutomaton(["s"], ["a"], {"s": ZERO}, {}, {"s": ONE})
    assert any("ZERO" in p for p in validate(a))
    assert validate(const_automaton(K1, ["a"])) == []


def test_trim_keeps_behavior(two):
    a = MkAutomaton(["p", "q", "dead"], ["a"], {"p": ONE},
                    {**two.transitions, ("p", "a", "dead"): K1}, two.final)
    t = a.trim()
    assert t.states == ("p", "q")
    for n in range(4):
        assert behavior(t, "a" * n) == behavior(a, "a" * n)


def test_underlying_nfa(two):
    n = underlying_nfa(two)
    assert n.accepts(("a", "a")) and n.accepts(())


def test_path_weight_rejects_non_paths(two):
    with pytest.raises(ValueError):
        path_weight(two, ("q", "p"), "a")
    assert path_weight(two, ("p", "p", "q"), "aa") == conj(conj(K1, K2), ONE)
