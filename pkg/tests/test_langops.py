import pytest

from mkfuzzy.constructs import StrictAlphabeticHom
from mkfuzzy.fclassic import Dfa, ForeignLetterError
from mkfuzzy.kvalues import ONE, ZERO, conj, disj
from mkfuzzy.langops import (Behavior, Cauchy, CharOf, Constant, Disj, ExprSyntaxError,
                             HomImage, InvHomImage, ScalarLeft, ScalarRight, WordIndicator,
                             evaluate, hom_preimages, live_preimages, load_hom, parse_expr,
                             stgsupp)
from mkfuzzy.mkauto import const_automaton
from mkfuzzy.textfmt import dump_automaton

from conftest import K1, K2

AB = ("a", "b")


def test_cauchy_with_epsilon_indicator_collapses():
    s = Behavior(const_automaton(K1, AB))
    x = Cauchy(WordIndicator((), AB), s)
    for w in [(), ("a",), ("b", "a")]:
        assert evaluate(x, w) == K1


def test_cauchy_split_order():
    r, s = Constant(K1, AB), Constant(K2, AB)
    want = disj(disj(conj(K1, K2), conj(K1, K2)), conj(K1, K2))
    assert Cauchy(r, s)(("a", "b")) == want


def test_hom_image_two_preimages():
    h = StrictAlphabeticHom(AB, ("x",), {"a": "x", "b": "x"})
    x = HomImage(h, Behavior(const_automaton(K1, AB)))
    assert x(("x",)) == disj(K1, K1)
    assert x(()) == K1


def test_preimage_order_is_lexicographic():
    h = StrictAlphabeticHom(("a", "b", "c"), ("x", "y"), {"a": "x", "b": "y", "c": "x"})
    assert list(hom_preimages(h, ("x", "x"))) == [("a", "a"), ("a", "c"), ("c", "a"), ("c", "c")]


def test_live_preimages_skip_zero_words(two):
    h = StrictAlphabeticHom(("a",), ("x",), {"a": "x"})
    assert list(live_preimages(two, h, ("x", "x"))) == [("a", "a")]


def test_scalars_and_inv_hom():
    s = Behavior(const_automaton(K1, AB))
    assert ScalarLeft(K2, s)(("a",)) == conj(K2, K1)
    assert ScalarRight(s, K2)(("a",)) == conj(K1, K2)
    h = StrictAlphabeticHom(("x",), AB, {"x": "b"})
    assert InvHomImage(h, s)(("x", "x")) == K1


def test_char_and_word():
    d = Dfa(("0",), AB, "0", {("0", "a"): "0"}, frozenset({"0"}))
    assert CharOf(d)(("a", "a")) == ONE
    assert CharOf(d)(("b",)) == ZERO
    assert WordIndicator(("a",), AB)(("a",)) == ONE
    assert Disj(CharOf(d), Constant(K1, AB))(("b",)) == K1


def test_foreign_letter():
    with pytest.raises(ForeignLetterError):
        Constant(K1, AB)(("z",))


def test_strong_support():
    x = Disj(WordIndicator(("a",), AB), Constant(ZERO, AB))
    assert stgsupp(x, 2) == {("a",)}


def test_parse_expr(tmp_path, two):
    (tmp_path / "two.mkfa").write_text(dump_automaton(two))
    (tmp_path / "h.map").write_text("a x\n")
    x = parse_expr("disj(auto(two.mkfa), const(<1/2,1/2,0,0>))", base_dir=str(tmp_path))
    assert isinstance(x, Disj) and isinstance(x.right, Constant)
    assert x.right.alphabet == ("a",)
    y = parse_expr("hom(h.map, auto(two.mkfa))", base_dir=str(tmp_path))
    assert y(("x",)) == Behavior(two)(("a",))
    z = parse_expr('cauchy(word("a"), auto(two.mkfa))', base_dir=str(tmp_path))
    assert z(("a", "a")) == Cauchy(WordIndicator(("a",), ("a",)), Behavior(two))(("a", "a"))
    assert load_hom(str(tmp_path / "h.map")).mapping == {"a": "x"}


@pytest.mark.parametrize("text", ["const(<1,0,0,0>)", "disj(auto(x.mkfa)", "nope(1)"])
def test_parse_expr_errors(text, tmp_path):
    with pytest.raises((ExprSyntaxError, OSError)):
        parse_expr(text, base_dir=str(tmp_path))
