"""Definition-level evaluation of MK-fuzzy language expressions.

This is the brute-force oracle every construction is checked against.  Cost
is exponential in the word length (hom images enumerate all preimages,
behaviors enumerate all paths), which is acceptable at desk scale.
"""

from __future__ import annotations

import itertools
import os
import re
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence, Union

from .fclassic import Dfa, ForeignLetterError, Nfa, accepts, all_words, letter_name
from .kvalues import ONE, ZERO, TruthValue, conj, disj, parse_truth
from .mkauto import MkAutomaton, behavior
from .constructs import StrictAlphabeticHom

__all__ = [
    "LangExpr",
    "Behavior",
    "Constant",
    "CharOf",
    "WordIndicator",
    "Disj",
    "Conj",
    "ScalarLeft",
    "ScalarRight",
    "Cauchy",
    "HomImage",
    "InvHomImage",
    "evaluate",
    "stgsupp",
    "hom_preimages",
    "live_preimages",
    "parse_expr",
    "load_hom",
    "ExprSyntaxError",
]


class LangExpr:
    """Base class; every node knows its (ordered) alphabet."""

    alphabet: tuple

    def __call__(self, word) -> TruthValue:
        return evaluate(self, word)


@dataclass(frozen=True, eq=False)
class Behavior(LangExpr):
    automaton: MkAutomaton

    @property
    def alphabet(self):
        return self.automaton.alphabet


@dataclass(frozen=True)
class Constant(LangExpr):
    k: TruthValue
    alphabet: tuple


@dataclass(frozen=True, eq=False)
class CharOf(LangExpr):
    """``1_L`` for the language of a boolean automaton."""

    machine: Union[Dfa, Nfa]

    @property
    def alphabet(self):
        return self.machine.alphabet


@dataclass(frozen=True)
class WordIndicator(LangExpr):
    """``w̄``: ``ONE`` on ``word``, ``ZERO`` elsewhere."""

    word: tuple
    alphabet: tuple


def _check_pair(left: LangExpr, right: LangExpr, op: str):
    if set(left.alphabet) != set(right.alphabet):
        raise ValueError(f"{op}: operands are over different alphabets")


@dataclass(frozen=True)
class Disj(LangExpr):
    left: LangExpr
    right: LangExpr

    def __post_init__(self):
        _check_pair(self.left, self.right, "disj")

    @property
    def alphabet(self):
        return self.left.alphabet


@dataclass(frozen=True)
class Conj(LangExpr):
    left: LangExpr
    right: LangExpr

    def __post_init__(self):
        _check_pair(self.left, self.right, "conj")

    @property
    def alphabet(self):
        return self.left.alphabet


@dataclass(frozen=True)
class ScalarLeft(LangExpr):
    k: TruthValue
    inner: LangExpr

    @property
    def alphabet(self):
        return self.inner.alphabet


@dataclass(frozen=True)
class ScalarRight(LangExpr):
    inner: LangExpr
    k: TruthValue

    @property
    def alphabet(self):
        return self.inner.alphabet


@dataclass(frozen=True)
class Cauchy(LangExpr):
    left: LangExpr
    right: LangExpr

    def __post_init__(self):
        _check_pair(self.left, self.right, "cauchy")

    @property
    def alphabet(self):
        return self.left.alphabet


@dataclass(frozen=True)
class HomImage(LangExpr):
    hom: StrictAlphabeticHom
    inner: LangExpr

    def __post_init__(self):
        if set(self.inner.alphabet) != set(self.hom.source):
            raise ValueError("hom: inner alphabet is not the source alphabet")

    @property
    def alphabet(self):
        return self.hom.target


@dataclass(frozen=True)
class InvHomImage(LangExpr):
    hom: StrictAlphabeticHom
    inner: LangExpr

    def __post_init__(self):
        if not set(self.hom.target) <= set(self.inner.alphabet):
            raise ValueError("invhom: hom target is not within the inner alphabet")

    @property
    def alphabet(self):
        return self.hom.source


def hom_preimages(h: StrictAlphabeticHom, word) -> Iterator[tuple]:
    """``h⁻¹(word)`` in lexicographic order of the source alphabet."""
    return itertools.product(*(h.preimage_letters(b) for b in word))


def live_preimages(a: MkAutomaton, h: StrictAlphabeticHom, word) -> Iterator[tuple]:
    """The words of ``h⁻¹(word)`` on which ``a`` has an accepting path, in
    lexicographic order.  Every other preimage has value ``ZERO``."""
    word = tuple(word)
    n = len(word)
    pre = [h.preimage_letters(b) for b in word]
    # alive[i]: states from which some preimage of word[i:] is accepted
    alive = [set() for _ in range(n + 1)]
    alive[n] = set(a.final)
    for i in range(n - 1, -1, -1):
        for r in alive[i + 1]:
            for x in pre[i]:
                alive[i].update(a.predecessors(r, x))
    prefix: list = []

    def walk(i, current):
        if i == n:
            yield tuple(prefix)
            return
        for x in pre[i]:
            nxt = {r for q in current for r in a.successors(q, x)} & alive[i + 1]
            if nxt:
                prefix.append(x)
                yield from walk(i + 1, nxt)
                prefix.pop()

    start = set(a.initial) & alive[0]
    if start:
        yield from walk(0, start)


def _hom_behavior_fold(a: MkAutomaton, h: StrictAlphabeticHom, w: tuple) -> TruthValue:
    # same fold as the generic case; skipped preimages contribute the unit ZERO
    acc = ZERO
    for v in live_preimages(a, h, w):
        acc = disj(acc, behavior(a, v))
    return acc


def evaluate(x: LangExpr, word) -> TruthValue:
    """Pointwise value of ``x`` at ``word``."""
    word = tuple(word)
    aset = set(x.alphabet)
    for a in word:
        if a not in aset:
            raise ForeignLetterError(f"letter {letter_name(a)!r} not in alphabet")
    return _eval(x, word)


def _eval(x: LangExpr, w: tuple) -> TruthValue:
    if isinstance(x, Behavior):
        return behavior(x.automaton, w)
    if isinstance(x, Constant):
        return x.k
    if isinstance(x, CharOf):
        return ONE if accepts(x.machine, w) else ZERO
    if isinstance(x, WordIndicator):
        return ONE if w == x.word else ZERO
    if isinstance(x, Disj):
        return disj(_eval(x.left, w), _eval(x.right, w))
    if isinstance(x, Conj):
        return conj(_eval(x.left, w), _eval(x.right, w))
    if isinstance(x, ScalarLeft):
        return conj(x.k, _eval(x.inner, w))
    if isinstance(x, ScalarRight):
        return conj(_eval(x.inner, w), x.k)
    if isinstance(x, Cauchy):
        acc = ZERO
        for i in range(len(w) + 1):
            acc = disj(acc, conj(_eval(x.left, w[:i]), _eval(x.right, w[i:])))
        return acc
    if isinstance(x, HomImage):
        if isinstance(x.inner, Behavior):
            return _hom_behavior_fold(x.inner.automaton, x.hom, w)
        acc = ZERO
        for v in hom_preimages(x.hom, w):
            acc = disj(acc, _eval(x.inner, v))
        return acc
    if isinstance(x, InvHomImage):
        return _eval(x.inner, x.hom(w))
    raise TypeError(f"not a language expression: {x!r}")


def stgsupp(x: LangExpr, maxlen: int) -> set:
    """Words of length at most ``maxlen`` whose value has ``t != 0``."""
    return {w for w in all_words(x.alphabet, maxlen) if _eval(x, w).t != 0}


# -- text syntax -------------------------------------------------------------

class ExprSyntaxError(ValueError):
    pass


def load_hom(path, target: Sequence | None = None) -> StrictAlphabeticHom:
    """Read a hom map file: one ``source target`` pair per line, source order = file order."""
    from .textfmt import parse_letter

    pairs = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            toks = line.split("#", 1)[0].split()
            if not toks:
                continue
            if len(toks) != 2:
                raise ExprSyntaxError(f"{path}:{lineno}: expected 'source target'")
            pairs.append((parse_letter(toks[0]), parse_letter(toks[1])))
    src = [a for a, _ in pairs]
    if len(set(src)) != len(src):
        raise ExprSyntaxError(f"{path}: source letter mapped twice")
    tgt = list(target) if target is not None else list(dict.fromkeys(b for _, b in pairs))
    return StrictAlphabeticHom(src, tgt, dict(pairs))


def _deferred(x) -> bool:
    return callable(x) and not isinstance(x, LangExpr)


_TOKEN = re.compile(r"\s*(?:(<[^>]*>)|(\"[^\"]*\")|([A-Za-z]+)(?=\s*\()|([(),])|([^\s(),]+))")


def _lex(text: str) -> list[tuple[str, str]]:
    out, pos = [], 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ExprSyntaxError(f"unexpected input at offset {pos}: {text[pos:pos + 10]!r}")
        kinds = ("truth", "string", "name", "punct", "path")
        for kind, val in zip(kinds, m.groups()):
            if val is not None:
                out.append((kind, val))
                break
        pos = m.end()
    return out


def parse_expr(text: str, base_dir: str = ".",
               loader: Callable | None = None) -> LangExpr:
    """Parse the parenthesized expression syntax.

    ``auto(file)``, ``char(file)``, ``hom(map,e)`` and ``invhom(map,e)`` read
    files relative to ``base_dir``.  ``const(<k>)`` and ``word("...")`` take
    their alphabet from the nearest enclosing operand that has one, so they
    must appear next to an automaton operand.
    """
    from .textfmt import load_automaton, parse_word

    load = loader or load_automaton
    toks = _lex(text)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else ("eof", "")

    def take(kind=None, val=None):
        nonlocal pos
        t = peek()
        if (kind and t[0] != kind) or (val and t[1] != val):
            raise ExprSyntaxError(f"expected {val or kind}, got {t[1] or 'end of input'!r}")
        pos += 1
        return t[1]

    def path_arg():
        t = peek()
        if t[0] in ("path", "name", "string"):
            take()
            return os.path.join(base_dir, t[1].strip('"'))
        raise ExprSyntaxError(f"expected a file name, got {t[1]!r}")

    # Deferred nodes: alphabet-free leaves become callables resolved by the parent.
    def node():
        name = take("name")
        take("punct", "(")
        if name == "auto":
            m = load(path_arg())
            if not isinstance(m, MkAutomaton):
                raise ExprSyntaxError("auto(...) needs an mk automaton file")
            res = Behavior(m)
        elif name == "char":
            m = load(path_arg())
            if isinstance(m, MkAutomaton):
                raise ExprSyntaxError("char(...) needs a classical automaton file")
            res = CharOf(m)
        elif name == "const":
            k = parse_truth(take("truth"))
            res = lambda alph: Constant(k, tuple(alph))  # noqa: E731
        elif name == "word":
            raw = take("string").strip('"')
            res = lambda alph: WordIndicator(parse_word(raw, alph), tuple(alph))  # noqa: E731
        elif name in ("disj", "conj", "cauchy"):
            left = node()
            take("punct", ",")
            right = node()
            left, right = _resolve_pair(left, right)
            res = {"disj": Disj, "conj": Conj, "cauchy": Cauchy}[name](left, right)
        elif name == "scalarL":
            k = parse_truth(take("truth"))
            take("punct", ",")
            res = _lift(node(), lambda e: ScalarLeft(k, e))
        elif name == "scalarR":
            inner = node()
            take("punct", ",")
            k = parse_truth(take("truth"))
            res = _lift(inner, lambda e: ScalarRight(e, k))
        elif name in ("hom", "invhom"):
            mp = path_arg()
            take("punct", ",")
            inner = node()
            h = load_hom(mp)
            if name == "hom":
                inner = inner(h.source) if _deferred(inner) else inner
                res = HomImage(h, inner)
            else:
                if _deferred(inner):
                    raise ExprSyntaxError("invhom(...) needs an operand with an alphabet")
                h = StrictAlphabeticHom(h.source, inner.alphabet, h.mapping)
                res = InvHomImage(h, inner)
        else:
            raise ExprSyntaxError(f"unknown operator {name!r}")
        take("punct", ")")
        return res

    def _lift(inner, wrap):
        if _deferred(inner):
            return lambda alph: wrap(inner(alph))
        return wrap(inner)

    def _resolve_pair(left, right):
        lc, rc = _deferred(left), _deferred(right)
        if lc and rc:
            raise ExprSyntaxError("cannot infer an alphabet: neither operand has one")
        if lc:
            left = left(right.alphabet)
        if rc:
            right = right(left.alphabet)
        return left, right

    result = node()
    if pos != len(toks):
        raise ExprSyntaxError(f"trailing input: {toks[pos][1]!r}")
    if _deferred(result):
        raise ExprSyntaxError("cannot infer an alphabet for a bare const(...) or word(...)")
    return result
