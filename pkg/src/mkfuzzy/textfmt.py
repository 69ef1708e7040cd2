"""Line-oriented automaton files and word literals.

::

    mkfa 1
    kind mk
    alphabet a b
    state p
    state q
    initial p <1,0,0,0>
    trans p a q <3/10,1/5,2/5,1/10>
    final q <1,0,0,0>

Classical automata use ``kind classical`` and omit the truth literals.
State order is the order of ``state`` lines, alphabet order is the order on
the ``alphabet`` line.  A token starting with ``#`` begins a comment.
Serialization is canonical: records appear in state order, then letter order.
"""

from __future__ import annotations

import re
from typing import Sequence, Union

from .fclassic import Dfa, ExtLetter, Nfa, letter_name
from .kvalues import TruthValue, TruthValueError, format_truth, parse_truth
from .mkauto import MkAutomaton

__all__ = [
    "FormatError",
    "parse_automaton",
    "load_automaton",
    "dump_automaton",
    "dump_classical",
    "parse_letter",
    "parse_word",
    "format_word",
]


class FormatError(ValueError):
    def __init__(self, msg: str, line: int | None = None):
        super().__init__(msg if line is None else f"line {line}: {msg}")
        self.line = line


_EXT = re.compile(r"^([^\[\]\s]+)\[((?:[A-Za-z][A-Za-z0-9]*=[01])(?:,[A-Za-z][A-Za-z0-9]*=[01])*)\]$")


def parse_letter(tok: str):
    """``a`` stays a string; ``a[X=1,x=0]`` becomes an :class:`ExtLetter`."""
    m = _EXT.match(tok)
    if not m:
        return tok
    row = tuple(sorted((v, int(b)) for v, b in (p.split("=") for p in m.group(2).split(","))))
    return ExtLetter(m.group(1), row)


def _tokens(line: str) -> list[str]:
    out = []
    for tok in line.split():
        if tok.startswith("#"):
            break
        out.append(tok)
    return out


def _truth(tok: str, lineno: int) -> TruthValue:
    try:
        return parse_truth(tok)
    except TruthValueError as exc:
        raise FormatError(str(exc), lineno) from None


def parse_automaton(text: str) -> Union[MkAutomaton, Nfa]:
    """Parse an automaton file; ``kind classical`` yields an :class:`Nfa`."""
    kind = None
    alphabet = None
    states: list[str] = []
    initial, final, trans = {}, {}, {}
    seen_header = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        toks = _tokens(raw)
        if not toks:
            continue
        head, args = toks[0], toks[1:]
        if not seen_header:
            if head != "mkfa" or args != ["1"]:
                raise FormatError("expected header 'mkfa 1'", lineno)
            seen_header = True
            continue
        if head == "kind":
            if len(args) != 1 or args[0] not in ("mk", "classical"):
                raise FormatError("kind must be 'mk' or 'classical'", lineno)
            kind = args[0]
            continue
        if kind is None:
            raise FormatError("'kind' line must precede records", lineno)
        weighted = kind == "mk"
        if head == "alphabet":
            if alphabet is not None:
                raise FormatError("duplicate alphabet line", lineno)
            alphabet = [parse_letter(t) for t in args]
            if len(set(alphabet)) != len(alphabet):
                raise FormatError("duplicate letter in alphabet", lineno)
        elif head == "state":
            if len(args) != 1:
                raise FormatError("state takes one name", lineno)
            if args[0] in states:
                raise FormatError(f"duplicate state {args[0]!r}", lineno)
            states.append(args[0])
        elif head in ("initial", "final"):
            need = 2 if weighted else 1
            if len(args) != need:
                raise FormatError(f"{head} takes {need} field(s)", lineno)
            target = initial if head == "initial" else final
            target[args[0]] = _truth(args[1], lineno) if weighted else True
        elif head == "trans":
            need = 4 if weighted else 3
            if len(args) != need:
                raise FormatError(f"trans takes {need} fields", lineno)
            key = (args[0], parse_letter(args[1]), args[2])
            if key in trans:
                raise FormatError("duplicate transition", lineno)
            trans[key] = _truth(args[3], lineno) if weighted else True
        else:
            raise FormatError(f"unknown record {head!r}", lineno)
    if not seen_header:
        raise FormatError("empty file")
    if kind is None:
        raise FormatError("missing 'kind' line")
    if alphabet is None:
        raise FormatError("missing 'alphabet' line")
    if kind == "mk":
        return MkAutomaton(states, alphabet, initial, trans, final)
    try:
        return Nfa.build(states, alphabet, initial, trans, final)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def load_automaton(path) -> Union[MkAutomaton, Nfa]:
    with open(path, encoding="utf-8") as fh:
        return parse_automaton(fh.read())


def dump_automaton(a: MkAutomaton) -> str:
    """Canonical text of an MK-fuzzy automaton."""
    lines = ["mkfa 1", "kind mk", "alphabet " + " ".join(letter_name(x) for x in a.alphabet)]
    lines += [f"state {q}" for q in a.states]
    order = [q for q in a.states]
    lines += [f"initial {q} {format_truth(a.initial[q])}" for q in order if q in a.initial]
    lines += [f"trans {p} {letter_name(x)} {q} {format_truth(a.transitions[(p, x, q)])}"
              for p, x, q in a.sorted_transitions()]
    lines += [f"final {q} {format_truth(a.final[q])}" for q in order if q in a.final]
    return "\n".join(lines) + "\n"


def dump_classical(m: Union[Dfa, Nfa]) -> str:
    """Canonical text of a boolean automaton."""
    if isinstance(m, Dfa):
        m = m.to_nfa()
    sidx = {q: i for i, q in enumerate(m.states)}
    lidx = {x: i for i, x in enumerate(m.alphabet)}
    lines = ["mkfa 1", "kind classical",
             "alphabet " + " ".join(letter_name(x) for x in m.alphabet)]
    lines += [f"state {q}" for q in m.states]
    lines += [f"initial {q}" for q in m.states if q in m.initial]
    for p, x, q in sorted(m.transitions, key=lambda t: (sidx[t[0]], lidx[t[1]], sidx[t[2]])):
        lines.append(f"trans {p} {letter_name(x)} {q}")
    lines += [f"final {q}" for q in m.states if q in m.final]
    return "\n".join(lines) + "\n"


def parse_word(text: str, alphabet: Sequence) -> tuple:
    """Read a word: ``"aab"`` when every letter is one character, else tokens.

    Tokens are separated by whitespace or commas.  ``""`` and ``ε`` denote the
    empty word.  Unknown letters are kept; callers check them.
    """
    text = text.strip()
    if text in ("", "ε"):
        return ()
    names = {letter_name(x): x for x in alphabet}
    if re.search(r"[\s,]", text):
        return tuple(names.get(t, parse_letter(t)) for t in re.split(r"[\s,]+", text) if t)
    if all(len(n) == 1 for n in names):
        return tuple(names.get(c, c) for c in text)
    return (names.get(text, parse_letter(text)),)


def format_word(word: Sequence) -> str:
    names = [letter_name(x) for x in word]
    if not names:
        return "ε"
    if all(len(n) == 1 for n in names):
        return "".join(names)
    return " ".join(names)
