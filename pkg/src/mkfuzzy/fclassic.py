"""Boolean finite automata over arbitrary, linearly ordered symbol sets.

Symbols are hashable tokens.  Base letters are plain strings; letters of an
extended alphabet ``A_V = A x {0,1}^V`` are :class:`ExtLetter` instances that
carry their own variable row, so projection and cylindrification need no
outside context.  State order is list position; constructed automata order
their states by the indices of their constituents.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, NamedTuple, Optional, Sequence

__all__ = [
    "ExtLetter",
    "ForeignLetterError",
    "AlphabetMismatchError",
    "Nfa",
    "Dfa",
    "letter_name",
    "ext_alphabet",
    "is_first_order",
    "accepts",
    "determinize",
    "complete",
    "product",
    "complement",
    "union",
    "project",
    "cylindrify",
    "valid_assignments_dfa",
    "all_words",
]


class ForeignLetterError(ValueError):
    pass


class AlphabetMismatchError(ValueError):
    pass


def is_first_order(var: str) -> bool:
    """Case convention: lower-case names are first-order, upper-case second-order."""
    return var[:1].islower()


class ExtLetter(NamedTuple):
    """A base letter paired with a 0/1 row over named variables.

    ``row`` is a tuple of ``(variable, bit)`` pairs sorted by variable name.
    """

    base: str
    row: tuple = ()

    def bit(self, var: str) -> int:
        for v, b in self.row:
            if v == var:
                return b
        raise KeyError(var)

    def variables(self) -> tuple:
        return tuple(v for v, _ in self.row)

    def drop(self, var: str) -> "ExtLetter":
        if var not in self.variables():
            raise KeyError(var)
        return ExtLetter(self.base, tuple((v, b) for v, b in self.row if v != var))

    def with_bit(self, var: str, bit: int) -> "ExtLetter":
        row = dict(self.row)
        row[var] = bit
        return ExtLetter(self.base, tuple(sorted(row.items())))

    def __str__(self) -> str:
        if not self.row:
            return self.base
        return self.base + "[" + ",".join(f"{v}={b}" for v, b in self.row) + "]"


def letter_name(a: Hashable) -> str:
    if isinstance(a, ExtLetter):
        return str(a)
    if isinstance(a, tuple):
        return "[" + ",".join(letter_name(x) for x in a) + "]"
    return str(a)


def ext_alphabet(base: Sequence[str], variables: Sequence[str]) -> tuple:
    """Ordered extended alphabet ``A_V``.

    Letters are ordered by base letter, then by the rows of ``variables`` in
    the given significance order, with bit 1 *before* bit 0 on every row.
    """
    out = []
    names = tuple(variables)
    for a in base:
        for bits in itertools.product((1, 0), repeat=len(names)):
            out.append(ExtLetter(a, tuple(sorted(zip(names, bits)))))
    return tuple(out)


def _check_word(alphabet_set, word):
    for a in word:
        if a not in alphabet_set:
            raise ForeignLetterError(f"letter {letter_name(a)!r} not in alphabet")


@dataclass(frozen=True, eq=False)
class Nfa:
    states: tuple
    alphabet: tuple
    initial: frozenset
    transitions: frozenset
    final: frozenset

    def __post_init__(self):
        sset, aset = set(self.states), set(self.alphabet)
        if len(sset) != len(self.states):
            raise ValueError("duplicate states")
        if not (self.initial <= sset and self.final <= sset):
            raise ValueError("initial/final reference unknown states")
        for p, a, q in self.transitions:
            if p not in sset or q not in sset:
                raise ValueError(f"transition ({p},{letter_name(a)},{q}) references an unknown state")
            if a not in aset:
                raise ValueError(f"transition ({p},{letter_name(a)},{q}) uses a foreign letter")

    @classmethod
    def build(cls, states, alphabet, initial, transitions, final) -> "Nfa":
        return cls(tuple(states), tuple(alphabet), frozenset(initial),
                   frozenset(transitions), frozenset(final))

    def successors(self) -> dict:
        idx = {q: i for i, q in enumerate(self.states)}
        succ: dict = {}
        for p, a, q in self.transitions:
            succ.setdefault((p, a), []).append(q)
        for v in succ.values():
            v.sort(key=idx.__getitem__)
        return succ

    def is_deterministic(self) -> bool:
        if len(self.initial) > 1:
            return False
        seen = set()
        for p, a, _ in self.transitions:
            if (p, a) in seen:
                return False
            seen.add((p, a))
        return True

    def to_dfa(self) -> "Dfa":
        """Reinterpret a structurally deterministic Nfa as a Dfa."""
        if not self.is_deterministic():
            raise ValueError("automaton is not deterministic")
        init = next(iter(self.initial)) if self.initial else None
        return Dfa(self.states, self.alphabet, init,
                   {(p, a): q for p, a, q in self.transitions}, self.final)

    def accepts(self, word) -> bool:
        return accepts(self, word)


@dataclass(frozen=True, eq=False)
class Dfa:
    """Deterministic automaton; ``delta`` may be partial (missing = reject).

    ``initial`` may be ``None`` for the empty language.
    """

    states: tuple
    alphabet: tuple
    initial: Optional[Hashable]
    delta: Mapping = field(default_factory=dict)
    final: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "final", frozenset(self.final))
        object.__setattr__(self, "delta", dict(self.delta))
        sset, aset = set(self.states), set(self.alphabet)
        if len(sset) != len(self.states):
            raise ValueError("duplicate states")
        if self.initial is not None and self.initial not in sset:
            raise ValueError("initial state unknown")
        if not self.final <= sset:
            raise ValueError("final states unknown")
        for (p, a), q in self.delta.items():
            if p not in sset or q not in sset or a not in aset:
                raise ValueError(f"bad transition ({p},{letter_name(a)},{q})")

    @property
    def is_complete(self) -> bool:
        return self.initial is not None and all(
            (q, a) in self.delta for q in self.states for a in self.alphabet)

    @property
    def transitions(self) -> frozenset:
        return frozenset((p, a, q) for (p, a), q in self.delta.items())

    def to_nfa(self) -> Nfa:
        init = frozenset() if self.initial is None else frozenset([self.initial])
        return Nfa(self.states, self.alphabet, init, self.transitions, self.final)

    def run(self, word) -> Optional[Hashable]:
        _check_word(set(self.alphabet), word)
        q = self.initial
        for a in word:
            if q is None:
                return None
            q = self.delta.get((q, a))
        return q

    def accepts(self, word) -> bool:
        q = self.run(word)
        return q is not None and q in self.final

    def renumber(self) -> "Dfa":
        """Rename states to ``"0", "1", ...`` preserving their order."""
        names = {q: str(i) for i, q in enumerate(self.states)}
        return Dfa(
            tuple(names[q] for q in self.states),
            self.alphabet,
            None if self.initial is None else names[self.initial],
            {(names[p], a): names[q] for (p, a), q in self.delta.items()},
            frozenset(names[q] for q in self.final),
        )

    def accessible(self) -> "Dfa":
        if self.initial is None:
            return Dfa((), self.alphabet, None, {}, frozenset())
        seen = {self.initial}
        todo = deque([self.initial])
        while todo:
            p = todo.popleft()
            for a in self.alphabet:
                q = self.delta.get((p, a))
                if q is not None and q not in seen:
                    seen.add(q)
                    todo.append(q)
        states = tuple(q for q in self.states if q in seen)
        return Dfa(states, self.alphabet, self.initial,
                   {k: v for k, v in self.delta.items() if k[0] in seen},
                   self.final & seen)


def accepts(m, word) -> bool:
    if isinstance(m, Dfa):
        return m.accepts(word)
    _check_word(set(m.alphabet), word)
    succ = m.successors()
    current = set(m.initial)
    for a in word:
        nxt = set()
        for p in current:
            nxt.update(succ.get((p, a), ()))
        current = nxt
        if not current:
            return False
    return bool(current & m.final)


def _subset_name(members: Sequence) -> str:
    return "{" + ",".join(str(q) for q in members) + "}"


def determinize(m: Nfa) -> Dfa:
    """Subset construction; the output is complete and contains only reachable subsets."""
    if isinstance(m, Dfa):
        m = m.to_nfa()
    idx = {q: i for i, q in enumerate(m.states)}
    succ = m.successors()

    def key(s):
        return tuple(sorted(idx[q] for q in s))

    start = frozenset(m.initial)
    seen = {start}
    todo = deque([start])
    delta = {}
    while todo:
        s = todo.popleft()
        for a in m.alphabet:
            t = frozenset(q for p in s for q in succ.get((p, a), ()))
            delta[(s, a)] = t
            if t not in seen:
                seen.add(t)
                todo.append(t)
    ordered = sorted(seen, key=key)
    names = {s: _subset_name([m.states[i] for i in key(s)]) for s in ordered}
    return Dfa(
        tuple(names[s] for s in ordered),
        m.alphabet,
        names[start],
        {(names[s], a): names[t] for (s, a), t in delta.items()},
        frozenset(names[s] for s in ordered if s & m.final),
    )


SINK = "_sink"


def complete(d: Dfa) -> Dfa:
    """Total version of ``d``; adds a rejecting sink only when needed."""
    if d.is_complete:
        return d
    sink = SINK
    while sink in d.states:
        sink += "'"
    delta = dict(d.delta)
    states = d.states + (sink,)
    for q in states:
        for a in d.alphabet:
            delta.setdefault((q, a), sink)
    init = sink if d.initial is None else d.initial
    return Dfa(states, d.alphabet, init, delta, d.final)


def _same_alphabet(d1, d2):
    if set(d1.alphabet) != set(d2.alphabet):
        raise AlphabetMismatchError("automata are over different alphabets")


def _pair_name(p, q) -> str:
    return f"({p},{q})"


def _product(d1: Dfa, d2: Dfa, accept) -> Dfa:
    _same_alphabet(d1, d2)
    if d1.initial is None or d2.initial is None:
        return Dfa((), d1.alphabet, None, {}, frozenset())
    i1 = {q: i for i, q in enumerate(d1.states)}
    i2 = {q: i for i, q in enumerate(d2.states)}
    start = (d1.initial, d2.initial)
    seen = {start}
    todo = deque([start])
    delta = {}
    while todo:
        p1, p2 = todo.popleft()
        for a in d1.alphabet:
            q1, q2 = d1.delta.get((p1, a)), d2.delta.get((p2, a))
            if q1 is None or q2 is None:
                continue
            delta[((p1, p2), a)] = (q1, q2)
            if (q1, q2) not in seen:
                seen.add((q1, q2))
                todo.append((q1, q2))
    ordered = sorted(seen, key=lambda s: (i1[s[0]], i2[s[1]]))
    name = {s: _pair_name(*s) for s in ordered}
    return Dfa(
        tuple(name[s] for s in ordered),
        d1.alphabet,
        name[start],
        {(name[s], a): name[t] for (s, a), t in delta.items()},
        frozenset(name[s] for s in ordered if accept(s[0] in d1.final, s[1] in d2.final)),
    )


def product(d1: Dfa, d2: Dfa) -> Dfa:
    """Intersection; missing transitions kill the run."""
    return _product(d1, d2, lambda x, y: x and y)


def union(d1: Dfa, d2: Dfa) -> Dfa:
    _same_alphabet(d1, d2)
    return _product(complete(d1), complete(d2), lambda x, y: x or y)


def complement(d: Dfa) -> Dfa:
    c = complete(d)
    return Dfa(c.states, c.alphabet, c.initial, c.delta,
               frozenset(q for q in c.states if q not in c.final))


def project(m, erase: str, target_alphabet: Optional[Sequence] = None) -> Nfa:
    """Erase the ``erase`` row from every extended letter (existential projection)."""
    if isinstance(m, Dfa):
        m = m.to_nfa()
    for a in m.alphabet:
        if not isinstance(a, ExtLetter) or erase not in a.variables():
            raise KeyError(f"variable {erase!r} is not a row of the alphabet")
    if target_alphabet is None:
        target_alphabet = tuple(dict.fromkeys(a.drop(erase) for a in m.alphabet))
    return Nfa.build(
        m.states,
        target_alphabet,
        m.initial,
        {(p, a.drop(erase), q) for p, a, q in m.transitions},
        m.final,
    )


def cylindrify(d: Dfa, var: str, target_alphabet: Sequence) -> Dfa:
    """Add an unconstrained row ``var``: every letter is read regardless of its bit."""
    delta = {}
    for (p, a), q in d.delta.items():
        for bit in (1, 0):
            delta[(p, a.with_bit(var, bit))] = q
    return Dfa(d.states, tuple(target_alphabet), d.initial, delta, d.final)


def valid_assignments_dfa(variables: Sequence[str], base: Sequence[str]) -> Dfa:
    """Recognizes ``N_V``: every first-order row carries exactly one 1.

    A state records, per first-order variable, whether its 1 has been seen;
    a second 1 has no transition (rejection).
    """
    variables = tuple(variables)
    alphabet = ext_alphabet(base, variables)
    fo = [v for v in variables if is_first_order(v)]
    states = list(itertools.product((0, 1), repeat=len(fo)))
    delta = {}
    for s in states:
        for a in alphabet:
            nxt = []
            ok = True
            for seen, v in zip(s, fo):
                b = a.bit(v)
                if seen and b:
                    ok = False
                    break
                nxt.append(seen or b)
            if ok:
                delta[(s, a)] = tuple(nxt)

    def name(s):
        return "".join(map(str, s)) or "ok"

    return Dfa(
        tuple(name(s) for s in states),
        alphabet,
        name(states[0]),
        {(name(s), a): name(t) for (s, a), t in delta.items()},
        frozenset([name(states[-1])]),
    )


def all_words(alphabet: Sequence, maxlen: int, minlen: int = 0) -> Iterable[tuple]:
    """All words of length ``minlen..maxlen`` in length-then-lexicographic order."""
    for n in range(minlen, maxlen + 1):
        yield from itertools.product(alphabet, repeat=n)
