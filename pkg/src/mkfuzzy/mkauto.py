"""MK-fuzzy automata: representation, classification, ordered path enumeration.

Because ``⊓`` does not distribute over ``⊔`` there is no matrix evaluation:
the value of a word is the ``⊔``-fold of its accepting path weights in path
order.  Paths are compared lexicographically on their full state sequence
``q0 ... qn`` (the last state breaks ties between paths agreeing on
``q0 ... q(n-1)``).  A depth-first walk that visits successors in ascending
state order produces the paths already sorted, so nothing is materialized.
"""

from __future__ import annotations

from collections import deque
from typing import Hashable, Iterator, Mapping, Sequence

from .fclassic import ForeignLetterError, Nfa, letter_name
from .kvalues import ONE, ZERO, TruthValue, conj, conj_fold, disj, disj_fold

__all__ = [
    "MkAutomaton",
    "Path",
    "validate",
    "paths",
    "path_weight",
    "behavior",
    "behavior_reference",
    "is_deterministic",
    "is_normalized",
    "is_unambiguous",
    "underlying_nfa",
    "const_automaton",
]

Transition = tuple  # (source, letter, target)


class MkAutomaton:
    """``(Q, I, T, F, in, wt, ter)`` with ``Q`` ordered by list position.

    ``initial`` and ``final`` map states to truth values; ``transitions`` maps
    ``(p, a, q)`` triples to truth values.  Instances are treated as immutable.
    """

    __slots__ = ("states", "alphabet", "initial", "transitions", "final",
                 "_sidx", "_lidx", "_succ", "_pred")

    def __init__(self, states: Sequence[str], alphabet: Sequence[Hashable],
                 initial: Mapping[str, TruthValue],
                 transitions: Mapping[Transition, TruthValue],
                 final: Mapping[str, TruthValue]):
        self.states = tuple(states)
        self.alphabet = tuple(alphabet)
        self.initial = dict(initial)
        self.transitions = dict(transitions)
        self.final = dict(final)
        self._sidx = {q: i for i, q in enumerate(self.states)}
        self._lidx = {a: i for i, a in enumerate(self.alphabet)}
        self._succ = None
        self._pred = None

    def __repr__(self):
        return (f"MkAutomaton(states={len(self.states)}, alphabet={len(self.alphabet)}, "
                f"transitions={len(self.transitions)})")

    def state_index(self, q) -> int:
        return self._sidx[q]

    def letter_index(self, a) -> int:
        return self._lidx[a]

    def sorted_transitions(self) -> list:
        """Transitions in (source, letter, target) order."""
        s, l = self._sidx, self._lidx
        return sorted(self.transitions, key=lambda t: (s[t[0]], l[t[1]], s[t[2]]))

    def successors(self, q, a) -> list:
        """Targets of ``(q, a, .)`` in ascending state order."""
        if self._succ is None:
            succ: dict = {}
            for p, b, r in self.transitions:
                succ.setdefault((p, b), []).append(r)
            for v in succ.values():
                v.sort(key=self._sidx.__getitem__)
            self._succ = succ
        return self._succ.get((q, a), [])

    def predecessors(self, q, a) -> list:
        if self._pred is None:
            pred: dict = {}
            for p, b, r in self.transitions:
                pred.setdefault((r, b), []).append(p)
            self._pred = pred
        return self._pred.get((q, a), [])

    def check_word(self, word) -> tuple:
        word = tuple(word)
        for a in word:
            if a not in self._lidx:
                raise ForeignLetterError(f"letter {letter_name(a)!r} not in alphabet")
        return word

    # -- derived automata -------------------------------------------------

    def replace(self, **kw) -> "MkAutomaton":
        args = dict(states=self.states, alphabet=self.alphabet, initial=self.initial,
                    transitions=self.transitions, final=self.final)
        args.update(kw)
        return MkAutomaton(**args)

    def restrict(self, keep) -> "MkAutomaton":
        keep = set(keep)
        return MkAutomaton(
            [q for q in self.states if q in keep],
            self.alphabet,
            {q: k for q, k in self.initial.items() if q in keep},
            {t: k for t, k in self.transitions.items() if t[0] in keep and t[2] in keep},
            {q: k for q, k in self.final.items() if q in keep},
        )

    def accessible_states(self) -> set:
        seen = set(self.initial)
        todo = deque(seen)
        out: dict = {}
        for p, _, r in self.transitions:
            out.setdefault(p, []).append(r)
        while todo:
            p = todo.popleft()
            for r in out.get(p, ()):
                if r not in seen:
                    seen.add(r)
                    todo.append(r)
        return seen

    def coaccessible_states(self) -> set:
        seen = set(self.final)
        todo = deque(seen)
        inc: dict = {}
        for p, _, r in self.transitions:
            inc.setdefault(r, []).append(p)
        while todo:
            r = todo.popleft()
            for p in inc.get(r, ()):
                if p not in seen:
                    seen.add(p)
                    todo.append(p)
        return seen

    def trim(self) -> "MkAutomaton":
        """Drop states on no accepting path.  Paths, their order and weights are unchanged."""
        return self.restrict(self.accessible_states() & self.coaccessible_states())

    def renumber(self, prefix: str = "") -> "MkAutomaton":
        """Rename states to ``prefix + "0"``, ... keeping their order."""
        n = {q: f"{prefix}{i}" for i, q in enumerate(self.states)}
        return MkAutomaton(
            [n[q] for q in self.states], self.alphabet,
            {n[q]: k for q, k in self.initial.items()},
            {(n[p], a, n[r]): k for (p, a, r), k in self.transitions.items()},
            {n[q]: k for q, k in self.final.items()},
        )

    def relabel_letters(self, mapping: Mapping) -> "MkAutomaton":
        """Rename letters injectively."""
        if len(set(mapping[a] for a in self.alphabet)) != len(self.alphabet):
            raise ValueError("letter relabelling must be injective")
        return MkAutomaton(
            self.states, [mapping[a] for a in self.alphabet], self.initial,
            {(p, mapping[a], r): k for (p, a, r), k in self.transitions.items()},
            self.final,
        )

    def reorder(self, order: Sequence[str]) -> "MkAutomaton":
        """Same automaton with a different linear order on its states."""
        if sorted(map(self._sidx.__getitem__, order)) != list(range(len(self.states))):
            raise ValueError("not a permutation of the states")
        return self.replace(states=tuple(order))


Path = tuple  # state sequence q0 ... qn


def validate(a: MkAutomaton) -> list[str]:
    """Return a list of human-readable invariant violations (empty when valid)."""
    out = []
    sset = set(a.states)
    if len(sset) != len(a.states):
        out.append("duplicate state names")
    if len(set(a.alphabet)) != len(a.alphabet):
        out.append("duplicate letters")
    for q, k in a.initial.items():
        if q not in sset:
            out.append(f"initial state {q!r} is not a declared state")
        if k == ZERO:
            out.append(f"initial weight of {q!r} is ZERO; initial weights must be non-zero "
                       "(a ZERO initial weight annihilates every path through it)")
    for q in a.final:
        if q not in sset:
            out.append(f"final state {q!r} is not a declared state")
    lset = set(a.alphabet)
    for (p, x, r) in a.transitions:
        for s in (p, r):
            if s not in sset:
                out.append(f"transition ({p},{letter_name(x)},{r}) references unknown state {s!r}")
        if x not in lset:
            out.append(f"transition ({p},{letter_name(x)},{r}) uses foreign letter")
    for k in list(a.initial.values()) + list(a.transitions.values()) + list(a.final.values()):
        if not isinstance(k, TruthValue):
            out.append(f"weight {k!r} is not a TruthValue")
    return out


def _alive_table(a: MkAutomaton, word: tuple) -> list:
    # alive[i]: states from which word[i:] reaches a final state
    n = len(word)
    alive = [set() for _ in range(n + 1)]
    alive[n] = set(a.final)
    for i in range(n - 1, -1, -1):
        nxt = alive[i + 1]
        cur = alive[i]
        for r in nxt:
            cur.update(a.predecessors(r, word[i]))
    return alive


def paths(a: MkAutomaton, word) -> Iterator[Path]:
    """Accepting paths over ``word`` in ascending path order, generated lazily."""
    word = a.check_word(word)
    n = len(word)
    alive = _alive_table(a, word)
    starts = sorted((q for q in a.initial if q in alive[0]), key=a.state_index)
    seq: list = []
    # explicit stack of iterators keeps memory at O(|w| * |Q|)
    stack = [iter(starts)]
    while stack:
        nxt = next(stack[-1], None)
        if nxt is None:
            stack.pop()
            if seq:
                seq.pop()
            continue
        seq.append(nxt)
        depth = len(seq) - 1
        if depth == n:
            yield tuple(seq)
            seq.pop()
        else:
            stack.append(iter([r for r in a.successors(nxt, word[depth])
                               if r in alive[depth + 1]]))


def path_weight(a: MkAutomaton, path: Path, word) -> TruthValue:
    """``in(q0) ⊓ wt(t1) ⊓ ... ⊓ wt(tn) ⊓ ter(qn)``, folded left to right."""
    word = tuple(word)
    if len(path) != len(word) + 1:
        raise ValueError("path length does not match word length")
    try:
        factors = [a.initial[path[0]]]
        factors.extend(a.transitions[(path[i], word[i], path[i + 1])] for i in range(len(word)))
        factors.append(a.final[path[-1]])
    except KeyError as exc:
        raise ValueError(f"not an accepting path: {exc}") from None
    return conj_fold(factors)


def behavior(a: MkAutomaton, word) -> TruthValue:
    """Ordered ``⊔``-fold of the accepting path weights; ``ZERO`` when there are none.

    For the empty word this is the fold of ``in(q) ⊓ ter(q)`` over ``I ∩ F``
    in state order, which is exactly the length-0 path case.
    """
    word = a.check_word(word)
    acc = ZERO
    for p in paths(a, word):
        acc = disj(acc, path_weight(a, p, word))
    return acc


def behavior_reference(a: MkAutomaton, word, tie_descending: bool = False) -> TruthValue:
    """Materialize every state sequence, sort, fold.  Exponential; testing only.

    ``tie_descending`` flips the order on the last state, the alternative
    refinement of the path order.
    """
    word = a.check_word(word)
    n = len(word)
    seqs = [(q,) for q in a.states]
    for i in range(n):
        seqs = [s + (r,) for s in seqs for r in a.states
                if (s[-1], word[i], r) in a.transitions]
    seqs = [s for s in seqs if s[0] in a.initial and s[-1] in a.final]
    idx = a.state_index
    if tie_descending:
        seqs.sort(key=lambda s: ([idx(q) for q in s[:-1]], -idx(s[-1])))
    else:
        seqs.sort(key=lambda s: [idx(q) for q in s])
    return disj_fold(path_weight(a, s, word) for s in seqs)


def is_deterministic(a: MkAutomaton) -> bool:
    if len(a.initial) != 1:
        return False
    seen = set()
    for p, x, _ in a.transitions:
        if (p, x) in seen:
            return False
        seen.add((p, x))
    return True


def is_normalized(a: MkAutomaton) -> bool:
    if len(a.initial) != 1:
        return False
    (q_in, k), = a.initial.items()
    if k != ONE or q_in in a.final:
        return False
    if any(v != ONE for v in a.final.values()):
        return False
    for p, _, r in a.transitions:
        if r == q_in or p in a.final:
            return False
    return True


def is_unambiguous(a: MkAutomaton) -> bool:
    """No word has two distinct accepting paths.

    Explores the self-product restricted to useful states, carrying a flag that
    records whether the two runs have already diverged.
    """
    t = a.trim()
    start = [(p, q, p != q) for p in t.initial for q in t.initial]
    seen = set(start)
    todo = deque(start)
    while todo:
        p, q, diverged = todo.popleft()
        if diverged and p in t.final and q in t.final:
            return False
        for x in t.alphabet:
            for p2 in t.successors(p, x):
                for q2 in t.successors(q, x):
                    s = (p2, q2, diverged or p2 != q2)
                    if s not in seen:
                        seen.add(s)
                        todo.append(s)
    return True


def underlying_nfa(a: MkAutomaton) -> Nfa:
    """Boolean automaton of the accepting-path language (weights forgotten)."""
    return Nfa.build(a.states, a.alphabet, a.initial, a.transitions, a.final)


def const_automaton(k: TruthValue, alphabet: Sequence, name: str = "q") -> MkAutomaton:
    """One-state automaton whose behavior is the constant ``k`` on every word.

    For ``k == ZERO`` the state is not initial (a ZERO initial weight is not
    allowed); the behavior is then ``ZERO`` everywhere, as required.
    """
    initial = {} if k == ZERO else {name: k}
    return MkAutomaton([name], alphabet, initial,
                       {(name, x, name): ONE for x in alphabet}, {name: ONE})

