import pytest

from mkfuzzy.fclassic import accepts, all_words, ext_alphabet
from mkfuzzy.kvalues import ONE, ZERO, conj, conj_fold
from mkfuzzy.logic import (FormulaSyntaxError, NotRestrictedError, automaton_to_rmso, decode,
                           encode, is_rmso, mk_eval, mk_eval_encoded, mso_satisfies, mso_to_dfa,
                           parse_mk, parse_mso, rmso_to_automaton, subsets_ascending, to_text)
from mkfuzzy.logic.semantics import UnboundVariableError, models
from mkfuzzy.logic.syntax import (Bool, Const, Exists, Label, Leq, Not, Prod, Sum, Times,
                                  free_vars)
from mkfuzzy.mkauto import behavior, const_automaton, paths

from conftest import K1, K2

AB = ("a", "b")


def test_subsets_ascending():
    assert subsets_ascending(0) == (frozenset(),)
    assert subsets_ascending(2) == (frozenset(), frozenset({0}), frozenset({0, 1}),
                                    frozenset({1}))
    assert all(s[0] == frozenset() for s in map(subsets_ascending, range(5)))
    assert len(subsets_ascending(4)) == 16


def test_parse_basic():
    assert parse_mso("exists x . P_a(x)") == Exists("x", Label("a", "x"))
    f = parse_mk("sum x . (<1,0,0,0>)")
    assert f == Sum("x", Const(ONE))


def test_forall_is_desugared():
    f = parse_mso("first(y)")
    assert isinstance(f, Not) and isinstance(f.sub, Exists)
    assert free_vars(f) == {"y"}


def test_printer_reparses():
    for text in ["exists x . (P_a(x) & last(x))", "sum X . ((x in X) (*) <1/2,1/2,0,0>)",
                 "prod x . ((x in X -> <1,0,0,0>) (+) (x in Y -> <0,1,0,0>))",
                 "partition(X,Y)", "succ(y,x) | (x <= y)"]:
        f = parse_mk(text)
        assert parse_mk(to_text(f)) == f


@pytest.mark.parametrize("text", [
    "P_a(x) | P_b(x) (+) <1,0,0,0>",  # mixed operators without parentheses
    "exists x . (<1,0,0,0>)",          # boolean quantifier over an MK body
    "prod X . (<1,0,0,0>)",            # product needs a first-order variable
    "x in y",                          # case convention
    "P_a(x",
])
def test_parse_errors(text):
    with pytest.raises(FormulaSyntaxError):
        parse_mk(text)


def test_satisfaction_examples():
    assert mso_satisfies(parse_mso("true"), "")
    assert mso_satisfies(parse_mso("exists x . P_b(x)"), "ab")
    assert not mso_satisfies(parse_mso("exists x . (first(x) & P_b(x))"), "ab")
    assert not mso_satisfies(parse_mso("P_a(x)"), "a", {"x": 3})
    with pytest.raises(UnboundVariableError):
        mso_satisfies(parse_mso("P_a(x)"), "a")


def test_mk_eval_examples():
    assert mk_eval(Const(K1), "ab") == K1
    f = parse_mk("prod x . (x in X -> <3/10,1/5,2/5,1/10>)")
    for n in range(4):
        w = "a" * n
        assert mk_eval(f, w, {"X": frozenset(range(n))}) == conj_fold([K1] * n)
    assert mk_eval(parse_mk("P_a(x)"), "", {"x": 0}) == ZERO


def test_sum_over_subsets_picks_single_nonzero_term():
    f = parse_mk("sum X . (((forall x . (x in X))) (*) <9/10,1/20,3/100,1/50>)")
    for n in range(4):
        assert mk_eval(f, "a" * n) == K2


def test_extra_variables_keep_the_value():
    f = parse_mk("(x in X) (*) <3/10,1/5,2/5,1/10>")
    w = "ab"
    for x in range(2):
        for X in subsets_ascending(2):
            for y in range(2):
                big = mk_eval(f, w, {"x": x, "X": X, "y": y}, ["x", "X", "y"])
                assert big == mk_eval(f, w, {"x": x, "X": X})


def test_encode_decode():
    sigma = {"x": 1, "X": frozenset({0})}
    ext = encode("ab", sigma, ["x", "X"])
    assert decode(ext, ["x", "X"]) == (("a", "b"), sigma)
    bad = tuple(l.with_bit("x", 0) for l in ext)
    assert decode(bad, ["x", "X"]) is None
    assert mk_eval_encoded(parse_mk("P_b(x)"), ["x", "X"], bad) == ZERO


def test_mso_to_dfa_contains_a():
    d = mso_to_dfa(parse_mso("exists x . P_a(x)"), [], AB)
    for w in all_words(AB, 4):
        ext = encode(w, {}, [])
        assert accepts(d, ext) == ("a" in w)


def test_mso_to_dfa_true_is_valid_encodings():
    d = mso_to_dfa(parse_mso("true"), ["x"], AB)
    for x in all_words(ext_alphabet(AB, ["x"]), 3):
        assert accepts(d, x) == (decode(x, ["x"]) is not None)


def test_mso_to_dfa_matches_direct_semantics():
    f = parse_mso("exists y . ((x <= y) & !(y <= x) & (y in X))")
    V = ["x", "X"]
    d = mso_to_dfa(f, V, AB)
    for x in all_words(ext_alphabet(AB, V), 3):
        dec = decode(x, V)
        assert accepts(d, x) == (dec is not None and mso_satisfies(f, *dec))


def test_is_rmso():
    ok, problems = is_rmso(parse_mk("<1,0,0,0> (*) <0,1,0,0>"))
    assert not ok and problems[0][0] == "root"
    assert is_rmso(parse_mk("P_a(x) (*) <1,0,0,0>"))[0]
    assert is_rmso(parse_mk("prod x . ((x in X -> <1,0,0,0>) (+) (x in Y -> <0,1,0,0>))"))[0]
    ok, problems = is_rmso(parse_mk("prod x . (P_a(x) (*) <1,0,0,0>)"))
    assert not ok and "prod x" in problems[0][1]


def test_compile_constant_sentence():
    a = rmso_to_automaton(Const(K1), (), AB)
    for w in all_words(AB, 3):
        assert behavior(a, w) == K1


def test_compile_boolean_sentence():
    f = parse_mso("exists x . (P_a(x) & last(x))")
    a = rmso_to_automaton(f, (), AB)
    for w in all_words(AB, 3):
        assert behavior(a, w) == (ONE if w[-1:] == ("a",) else ZERO)


def test_compile_rejects_unrestricted():
    with pytest.raises(NotRestrictedError):
        rmso_to_automaton(parse_mk("<1,0,0,0> (*) <0,1,0,0>"), (), AB)


def test_compile_product_quantifier_with_free_sets():
    f = parse_mk("prod x . ((x in X -> <3/10,1/5,2/5,1/10>) (+) (x in Y -> <9/10,1/20,3/100,1/50>))")
    V = ("X", "Y")
    a = rmso_to_automaton(f, V, AB)
    for x in all_words(ext_alphabet(AB, V), 3):
        assert behavior(a, x) == mk_eval_encoded(f, V, x)


def test_decompile_constant():
    d = automaton_to_rmso(const_automaton(K1, AB))
    assert is_rmso(d.formula)[0]
    assert parse_mk(to_text(d.formula)) == d.formula
    for w in all_words(AB, 2):
        assert mk_eval(d.formula, w) == K1


def test_decompile_models_are_paths(two):
    d = automaton_to_rmso(two)
    for n in range(1, 4):
        w = "a" * n
        assert sum(1 for _ in models(d.psi, w, d.setvars)) == len(list(paths(d.automaton, w)))


def test_decompile_without_transitions():
    a = const_automaton(K1, AB).replace(transitions={})
    d = automaton_to_rmso(a)
    assert isinstance(d.formula.left, Bool)
    assert mk_eval(d.formula, "") == K1
    assert mk_eval(d.formula, "a") == ZERO
