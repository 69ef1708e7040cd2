import pytest

from mkfuzzy.fclassic import (Dfa, ExtLetter, Nfa, accepts, all_words, complement, complete,
                              cylindrify, determinize, ext_alphabet, is_first_order, product,
                              project, union, valid_assignments_dfa)


def ends_with_a():
    return Dfa(("0", "1"), ("a", "b"), "0",
               {("0", "a"): "1", ("0", "b"): "0", ("1", "a"): "1", ("1", "b"): "0"},
               frozenset({"1"}))


def has_b():
    return Dfa(("0", "1"), ("a", "b"), "0",
               {("0", "a"): "0", ("0", "b"): "1", ("1", "a"): "1", ("1", "b"): "1"},
               frozenset({"1"}))


def test_case_convention():
    assert is_first_order("x") and is_first_order("y2")
    assert not is_first_order("X") and not is_first_order("Xs")


def test_ext_alphabet_order():
    al = ext_alphabet(["a", "b"], ["x", "X"])
    rows = [(l.base, l.bit("x"), l.bit("X")) for l in al]
    assert rows == [("a", 1, 1), ("a", 1, 0), ("a", 0, 1), ("a", 0, 0),
                    ("b", 1, 1), ("b", 1, 0), ("b", 0, 1), ("b", 0, 0)]


def test_letter_helpers():
    x = ExtLetter("a", (("X", 0), ("x", 1)))
    assert x.drop("x") == ExtLetter("a", (("X", 0),))
    assert x.with_bit("X", 1).bit("X") == 1
    with pytest.raises(KeyError):
        x.drop("y")


def test_boolean_operations():
    d1, d2 = ends_with_a(), has_b()
    p, u, c = product(d1, d2), union(d1, d2), complement(d1)
    for w in all_words(("a", "b"), 4):
        assert accepts(p, w) == (accepts(d1, w) and accepts(d2, w))
        assert accepts(u, w) == (accepts(d1, w) or accepts(d2, w))
        assert accepts(c, w) != accepts(d1, w)


def test_determinize_agrees_with_nfa():
    n = Nfa.build(["s", "t", "u"], ["a", "b"], ["s"],
                  [("s", "a", "s"), ("s", "b", "s"), ("s", "a", "t"), ("t", "b", "u")], ["u"])
    d = determinize(n)
    for w in all_words(("a", "b"), 5):
        assert accepts(d, w) == n.accepts(w) == (w[-2:] == ("a", "b"))


def test_complete_adds_sink():
    d = Dfa(("0",), ("a", "b"), "0", {("0", "a"): "0"}, frozenset({"0"}))
    c = complete(d)
    assert c.is_complete
    assert not accepts(c, ("a", "b"))
    assert accepts(c, ("a", "a"))


def test_valid_assignments():
    nv = valid_assignments_dfa(["x", "X"], ["a"])
    al = nv.alphabet
    one = [l for l in al if l.bit("x")]
    zero = [l for l in al if not l.bit("x")]
    assert accepts(nv, (one[0], zero[0]))
    assert not accepts(nv, (zero[0], zero[1]))
    assert not accepts(nv, (one[0], one[1]))
    assert not accepts(nv, ())


def test_project_and_cylindrify_are_inverse_on_languages():
    base = ("a", "b")
    plain = ends_with_a()
    small = ext_alphabet(base, [])
    d = Dfa(plain.states, small, plain.initial,
            {(p, ExtLetter(a, ())): q for (p, a), q in plain.delta.items()}, plain.final)
    cyl = cylindrify(d, "X", ext_alphabet(base, ["X"]))
    back = determinize(project(cyl, "X", small))
    for w in all_words(small, 4):
        assert accepts(back, w) == accepts(d, w)


def test_all_words_order():
    assert list(all_words(("a", "b"), 2)) == [(), ("a",), ("b",), ("a", "a"), ("a", "b"),
                                              ("b", "a"), ("b", "b")]
