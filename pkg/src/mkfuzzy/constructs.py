"""Automaton-level closure constructions and the Nivat decomposition.

State naming follows a ``<tag>:<original>`` scheme for copies and
``(<left>,<right>)`` for product states, so outputs are reproducible and
readable.  Product-style constructions keep only the reachable part of the
product; unreachable states carry no paths and so cannot affect behavior.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping, Sequence

from .fclassic import (AlphabetMismatchError, Dfa, Nfa, complement, determinize,
                       letter_name)
from .kvalues import ONE, ZERO, TruthValue, conj
from .mkauto import (MkAutomaton, behavior, const_automaton, is_deterministic,
                     is_normalized, is_unambiguous, underlying_nfa)

__all__ = [
    "ConstructionError",
    "StrictAlphabeticHom",
    "NivatData",
    "ScalarLeftResult",
    "char_automaton",
    "disjunction",
    "conj_char",
    "hom_image",
    "inv_hom",
    "scalar_right",
    "scalar_left",
    "normalize",
    "scalar_right_normalized",
    "cauchy",
    "strong_support",
    "letter_weight_automaton",
    "nivat_decompose",
    "nivat_inner",
    "nivat_compose",
    "in_ter_one",
]


class ConstructionError(ValueError):
    """A construction's precondition does not hold."""


def _tag(tag: str, q: str) -> str:
    return f"{tag}:{q}"


def _pair(p: str, q: str) -> str:
    return f"({p},{q})"


def _require_deterministic(a: MkAutomaton, op: str, why: str):
    if not is_deterministic(a):
        raise ConstructionError(f"{op}: input automaton must be deterministic ({why})")


def _same_alphabet(x, y, op: str):
    if set(x.alphabet) != set(y.alphabet):
        raise AlphabetMismatchError(f"{op}: operands are over different alphabets")


@dataclass(frozen=True)
class StrictAlphabeticHom:
    """Letter-to-letter map ``source -> target`` (extended to words)."""

    source: tuple
    target: tuple
    mapping: Mapping

    def __post_init__(self):
        object.__setattr__(self, "source", tuple(self.source))
        object.__setattr__(self, "target", tuple(self.target))
        object.__setattr__(self, "mapping", dict(self.mapping))
        tset = set(self.target)
        for a in self.source:
            if a not in self.mapping:
                raise ValueError(f"homomorphism undefined on {letter_name(a)!r}")
            if self.mapping[a] not in tset:
                raise ValueError(f"image of {letter_name(a)!r} is not a target letter")

    @classmethod
    def identity(cls, alphabet: Sequence) -> "StrictAlphabeticHom":
        return cls(alphabet, alphabet, {a: a for a in alphabet})

    def __call__(self, word) -> tuple:
        return tuple(self.mapping[a] for a in word)

    def preimage_letters(self, b) -> list:
        """Source letters mapped to ``b``, in source order."""
        return [a for a in self.source if self.mapping[a] == b]

    def __hash__(self):
        return hash((self.source, self.target, tuple(self.mapping[a] for a in self.source)))


def char_automaton(d) -> MkAutomaton:
    """Characteristic automaton ``1_L``: the structure of ``d`` with every weight ``ONE``.

    Works for an Nfa as well, since ``ONE ⊔ x = ONE``.
    """
    if isinstance(d, Dfa):
        d = d.to_nfa()
    return MkAutomaton(
        [str(q) for q in d.states], d.alphabet,
        {str(q): ONE for q in d.initial},
        {(str(p), a, str(q)): ONE for p, a, q in d.transitions},
        {str(q): ONE for q in d.final},
    )


def disjunction(*automata: MkAutomaton) -> MkAutomaton:
    """Ordered disjoint union: every state of operand ``i`` precedes those of ``i+1``.

    The union's path fold then factors as ``fold(paths of a1) ⊔ fold(paths of a2) ⊔ ...``.
    """
    if not automata:
        raise ConstructionError("disjunction of no automata")
    base = automata[0]
    for other in automata[1:]:
        _same_alphabet(base, other, "disjunction")
    states, initial, transitions, final = [], {}, {}, {}
    for i, a in enumerate(automata, start=1):
        t = str(i)
        states.extend(_tag(t, q) for q in a.states)
        initial.update({_tag(t, q): k for q, k in a.initial.items()})
        transitions.update({(_tag(t, p), x, _tag(t, q)): k
                            for (p, x, q), k in a.transitions.items()})
        final.update({_tag(t, q): k for q, k in a.final.items()})
    return MkAutomaton(states, base.alphabet, initial, transitions, final)


def conj_char(d, a: MkAutomaton) -> MkAutomaton:
    """``1_L(d) ⊓ ||a||`` by a product with a deterministic ``d``.

    Weights come from ``a``; product states are ordered second-component-major,
    ``(q1,q2) <= (q1',q2')`` iff ``q2 < q2'`` or ``q2 = q2'`` and ``q1 <= q1'``.
    """
    if isinstance(d, Nfa):
        d = d.to_dfa()
    _same_alphabet(d, a, "conj_char")
    if d.initial is None:
        return MkAutomaton([], a.alphabet, {}, {}, {})
    i1 = {q: i for i, q in enumerate(d.states)}
    start = [(d.initial, q) for q in a.initial]
    seen = set(start)
    todo = deque(start)
    trans = {}
    while todo:
        q1, q2 = todo.popleft()
        for x in a.alphabet:
            p1 = d.delta.get((q1, x))
            if p1 is None:
                continue
            for p2 in a.successors(q2, x):
                trans[((q1, q2), x, (p1, p2))] = a.transitions[(q2, x, p2)]
                if (p1, p2) not in seen:
                    seen.add((p1, p2))
                    todo.append((p1, p2))
    order = sorted(seen, key=lambda s: (a.state_index(s[1]), i1[s[0]]))
    name = {s: _pair(str(s[0]), s[1]) for s in order}
    return MkAutomaton(
        [name[s] for s in order], a.alphabet,
        {name[s]: a.initial[s[1]] for s in start},
        {(name[s], x, name[t]): k for (s, x, t), k in trans.items()},
        {name[s]: a.final[s[1]] for s in order if s[0] in d.final and s[1] in a.final},
    )


def hom_image(a: MkAutomaton, h: StrictAlphabeticHom) -> MkAutomaton:
    """Image automaton over ``h``'s target with states ``(letter, q)``.

    The state remembers the source letter just read; runs start at
    ``(min A, q)`` for initial ``q``.  Pair states are ordered
    first-component-major (letter order, then state order).  Only reachable
    pair states are built.
    """
    if set(a.alphabet) != set(h.source):
        raise AlphabetMismatchError("hom_image: automaton alphabet is not the source alphabet")
    src = h.source
    if not src:
        # only the empty word exists on the source side
        return MkAutomaton(a.states, h.target, a.initial, {}, a.final)
    lidx = {x: i for i, x in enumerate(src)}
    amin = src[0]
    start = [(amin, q) for q in a.initial]
    seen = set(start)
    todo = deque(start)
    trans = {}
    while todo:
        x, q = todo.popleft()
        for y in src:
            for r in a.successors(q, y):
                trans[((x, q), h.mapping[y], (y, r))] = a.transitions[(q, y, r)]
                if (y, r) not in seen:
                    seen.add((y, r))
                    todo.append((y, r))
    order = sorted(seen, key=lambda s: (lidx[s[0]], a.state_index(s[1])))
    name = {s: _pair(letter_name(s[0]), s[1]) for s in order}
    if len(set(name.values())) != len(name):
        raise ConstructionError("hom_image: state names collide; renumber the input first")
    return MkAutomaton(
        [name[s] for s in order], h.target,
        {name[s]: a.initial[s[1]] for s in start},
        {(name[s], b, name[t]): k for (s, b, t), k in trans.items()},
        {name[s]: a.final[s[1]] for s in order if s[1] in a.final},
    )


def inv_hom(a: MkAutomaton, h: StrictAlphabeticHom) -> MkAutomaton:
    """Automaton for ``w -> ||a||(h(w))``: same states and order, letters pulled back."""
    if not set(a.alphabet) >= set(h.mapping[x] for x in h.source):
        raise AlphabetMismatchError("inv_hom: automaton alphabet does not contain h's image")
    trans = {}
    for x in h.source:
        b = h.mapping[x]
        for (p, y, q), k in a.transitions.items():
            if y == b:
                trans[(p, x, q)] = k
    return MkAutomaton(a.states, h.source, a.initial, trans, a.final)


def scalar_right(a: MkAutomaton, k: TruthValue) -> MkAutomaton:
    """``||a|| ⊓ k`` for deterministic ``a``: final weights become ``ter(q) ⊓ k``."""
    _require_deterministic(a, "scalar_right", "right scalars are closed on deterministic automata")
    return a.replace(final={q: conj(t, k) for q, t in a.final.items()})


@dataclass(frozen=True)
class ScalarLeftResult:
    """Outcome of the left-scalar construction.

    ``automaton`` agrees with ``k ⊓ ||a||`` on every word with an accepting
    path.  On the words of ``dead_words`` it yields ``ZERO`` while the
    pointwise value is ``dead_value = k ⊓ ZERO``; ``discrepant`` tells whether
    those differ (they do exactly when ``e(k) != 0``).
    """

    automaton: MkAutomaton
    k: TruthValue
    dead_words: Dfa
    dead_value: TruthValue
    initial_removed: bool

    @property
    def discrepant(self) -> bool:
        return self.dead_value != ZERO


def scalar_left(k: TruthValue, a: MkAutomaton) -> ScalarLeftResult:
    """``k ⊓ ||a||`` on the live domain, for deterministic ``a``."""
    _require_deterministic(a, "scalar_left", "left scalars are closed on deterministic automata")
    (q0, w0), = a.initial.items()
    new_in = conj(k, w0)
    removed = new_in == ZERO
    out = a.replace(initial={} if removed else {q0: new_in})
    dead = complement(underlying_nfa(a).to_dfa())
    return ScalarLeftResult(out, k, dead, conj(k, ZERO), removed)


def normalize(a: MkAutomaton) -> MkAutomaton:
    """Normalized unambiguous automaton equal to ``a`` on non-empty words.

    Each state ``q`` is kept as ``o:q``; each final ``q`` gets a sink copy
    ``f:q`` (weight ``ONE``) reached by ``(p,x,f:q)`` with weight
    ``wt(p,x,q) ⊓ ter(q)``.  A fresh initial ``init`` absorbs ``in(q0)`` into
    its outgoing transitions.  Order: by original state, ``o`` before ``f``,
    ``init`` last.
    """
    _require_deterministic(a, "normalize", "normalization is defined for deterministic automata")
    (q0, w0), = a.initial.items()
    states = []
    for q in a.states:
        states.append(_tag("o", q))
        if q in a.final:
            states.append(_tag("f", q))
    q_in = "init"
    states.append(q_in)
    trans = {}
    for (p, x, q), k in a.transitions.items():
        trans[(_tag("o", p), x, _tag("o", q))] = k
        if q in a.final:
            trans[(_tag("o", p), x, _tag("f", q))] = conj(k, a.final[q])
        if p == q0:
            trans[(q_in, x, _tag("o", q))] = conj(w0, k)
            if q in a.final:
                trans[(q_in, x, _tag("f", q))] = conj(w0, conj(k, a.final[q]))
    out = MkAutomaton(states, a.alphabet, {q_in: ONE}, trans,
                      {_tag("f", q): ONE for q in a.final})
    keep = out.accessible_states() | {q_in}
    return out.restrict(keep)


def scalar_right_normalized(a: MkAutomaton, k: TruthValue) -> MkAutomaton:
    """``||a|| ⊓ k`` for normalized unambiguous ``a``: scale transitions entering finals."""
    if not (is_normalized(a) and is_unambiguous(a)):
        raise ConstructionError("scalar_right_normalized: input must be normalized and unambiguous")
    trans = {t: (conj(w, k) if t[2] in a.final else w) for t, w in a.transitions.items()}
    return a.replace(transitions=trans)


def _dead_domain_automaton(a: MkAutomaton, value: TruthValue) -> MkAutomaton:
    # constant `value` on the words where deterministic `a` has no accepting path
    dead = complement(underlying_nfa(a).to_dfa())
    c = char_automaton(dead)
    (q0,) = c.initial
    return c.replace(initial={q0: value})


def cauchy(a1: MkAutomaton, a2: MkAutomaton) -> MkAutomaton:
    """Automaton for the Cauchy product ``rs`` of two deterministic automata.

    ``rs = (ε̄ ⊓ r(ε) ⊓ s(ε)) ⊔ A3 ⊔ A ⊔ (A1 ⊓ s(ε))`` where ``A`` is the
    concatenation of the normalized automata (split at least one letter into
    each factor), ``A3`` recognizes ``r(ε) ⊓ s`` on non-empty words and
    ``A1 ⊓ s(ε)`` covers the split with empty suffix.  Words on which ``a2``
    has no accepting path still produce the non-zero split terms
    ``r(u) ⊓ ZERO``; ``A3`` and ``A`` carry extra branches for them.
    """
    for x, nm in ((a1, "first"), (a2, "second")):
        if not is_deterministic(x):
            raise ConstructionError(
                f"cauchy: the {nm} operand must be deterministic (the Cauchy product is "
                "closed only for deterministically recognizable languages)")
    _same_alphabet(a1, a2, "cauchy")
    alphabet = a1.alphabet
    r_eps = behavior(a1, ())
    s_eps = behavior(a2, ())

    n1 = normalize(a1)
    n2 = normalize(a2)
    q1_in, = n1.initial
    q2_in, = n2.initial
    f1 = set(n1.final)
    t1 = lambda q: _tag("1", q)  # noqa: E731
    t2 = lambda q: _tag("2", q)  # noqa: E731
    # Q2 entirely precedes Q1 \ F1
    states = [t2(q) for q in n2.states] + [t1(q) for q in n1.states if q not in f1]
    trans = {}
    for (p, x, q), k in n1.transitions.items():
        if q in f1:
            trans[(t1(p), x, t2(q2_in))] = k
        else:
            trans[(t1(p), x, t1(q))] = k
    for (p, x, q), k in n2.transitions.items():
        trans[(t2(p), x, t2(q))] = k
    finals = {t2(q): ONE for q in n2.final}
    # Splits u·v with v outside the accepted-path language of a2 contribute
    # r(u) ⊓ ZERO, which is not ZERO when e(r(u)) != 0.  A branch from the
    # initial state of the second factor reads exactly those v with path
    # weight ZERO, so the split term comes out as r(u) ⊓ ZERO.
    dead = _dead_domain_automaton(a2, ONE)
    nd = normalize(dead.replace(final={q: ZERO for q in dead.final}))
    if nd.final:
        nd_in, = nd.initial
        td = lambda q: t2(q2_in) if q == nd_in else t2(_tag("d", q))  # noqa: E731
        states[len(n2.states):len(n2.states)] = [td(q) for q in nd.states if q != nd_in]
        for (p, x, q), k in nd.transitions.items():
            trans[(td(p), x, td(q))] = k
        finals.update({td(q): ONE for q in nd.final})
    concat = MkAutomaton(states, alphabet, {t1(q1_in): ONE}, trans, finals)

    parts = []
    eps_value = conj(r_eps, s_eps)
    if eps_value != ZERO:
        parts.append(MkAutomaton(["e"], alphabet, {"e": eps_value}, {}, {"e": ONE}))
    if r_eps != ZERO:
        parts.append(normalize(scalar_left(r_eps, a2).automaton))
        dead_value = conj(r_eps, ZERO)
        if dead_value != ZERO:
            # the left-scalar automaton is ZERO where a2 has no path; restore r(ε) ⊓ ZERO there
            parts.append(normalize(_dead_domain_automaton(a2, dead_value)))
    parts.append(concat)
    parts.append(scalar_right_normalized(n1, s_eps))
    return disjunction(*parts)


def strong_support(a: MkAutomaton) -> Dfa:
    """Words whose value has a non-zero ``t`` component, for deterministic ``a``.

    The ``t`` component of ``⊓`` is multiplicative, so a single path has
    ``t != 0`` iff every factor does.
    """
    _require_deterministic(a, "strong_support", "the support construction needs a unique run")
    (q0, w0), = a.initial.items()
    return Dfa(
        a.states, a.alphabet,
        q0 if w0.t > 0 else None,
        {(p, x): q for (p, x, q), k in a.transitions.items() if k.t > 0},
        frozenset(q for q, k in a.final.items() if k.t > 0),
    )


def letter_weight_automaton(alphabet: Sequence, g: Mapping) -> MkAutomaton:
    """One state, ``in = ter = ONE``, loop on ``b`` weighted ``g(b)``: behavior ``⊓_i g(b_i)``."""
    return MkAutomaton(["g"], alphabet, {"g": ONE},
                       {("g", b, "g"): g[b] for b in alphabet}, {"g": ONE})


def in_ter_one(a: MkAutomaton) -> MkAutomaton:
    """Equivalent automaton on non-empty words whose initial and final weights are all ``ONE``.

    Initial copies ``i:q`` absorb ``in(q)`` into their outgoing weights and
    final copies ``f:q`` absorb ``ter(q)`` into their incoming ones; the
    originals ``o:q`` carry the middle of each path.  States are ordered by
    (original, tag), so the copy bijection preserves path order.  The value
    on the empty word is not preserved.
    """
    states = []
    for q in a.states:
        states.append(_tag("o", q))
        if q in a.initial:
            states.append(_tag("i", q))
        if q in a.final:
            states.append(_tag("f", q))
    trans = {}
    for (p, x, q), k in a.transitions.items():
        trans[(_tag("o", p), x, _tag("o", q))] = k
        if q in a.final:
            trans[(_tag("o", p), x, _tag("f", q))] = conj(k, a.final[q])
        if p in a.initial:
            trans[(_tag("i", p), x, _tag("o", q))] = conj(a.initial[p], k)
            if q in a.final:
                trans[(_tag("i", p), x, _tag("f", q))] = conj(a.initial[p], conj(k, a.final[q]))
    return MkAutomaton(states, a.alphabet,
                       {_tag("i", q): ONE for q in a.initial}, trans,
                       {_tag("f", q): ONE for q in a.final})


@dataclass(frozen=True)
class NivatData:
    """``(B, L, g, h)`` with ``s = h(L ∩ g)`` on non-empty words.

    ``automaton`` is the unit-weighted automaton whose transitions form ``B``.
    """

    inner_alphabet: tuple
    language: Nfa
    weights: Mapping
    hom: StrictAlphabeticHom
    automaton: MkAutomaton


def nivat_decompose(a: MkAutomaton) -> NivatData:
    """Decompose a recognizable language with ``s(ε) = ZERO``.

    The inner alphabet is the transition set (in source/letter/target order),
    ``L`` is the language of transition sequences forming accepting paths
    (minus ε), ``g`` reads off transition weights and ``h`` forgets all but
    the letter.  ``g`` has no access to initial and final weights, so an
    automaton with a non-``ONE`` initial or final weight is first rewritten
    by :func:`in_ter_one`.
    """
    if behavior(a, ()) != ZERO:
        raise ConstructionError("nivat_decompose: the value on the empty word must be ZERO")
    if any(k != ONE for k in list(a.initial.values()) + list(a.final.values())):
        a = in_ter_one(a).trim()
    B = tuple(a.sorted_transitions())
    letters = {t: t for t in B}
    # fresh non-final start state so that ε is excluded from L
    start = "start"
    while start in a.states:
        start += "'"
    trans = {(p, letters[(p, x, q)], q) for (p, x, q) in B}
    trans |= {(start, letters[(p, x, q)], q) for (p, x, q) in B if p in a.initial}
    lang = Nfa.build((start,) + a.states, B, {start}, trans, a.final)
    g = {t: a.transitions[t] for t in B}
    h = StrictAlphabeticHom(B, a.alphabet, {t: t[1] for t in B})
    return NivatData(B, lang, g, h, a)


def nivat_inner(n: NivatData) -> MkAutomaton:
    """``1_L ⊓ g`` over the inner alphabet: a deterministic automaton for ``L``
    times the one-state weighting automaton."""
    d = determinize(n.language)
    return conj_char(d, letter_weight_automaton(n.inner_alphabet, n.weights)).renumber()


def nivat_compose(n: NivatData) -> MkAutomaton:
    """``h(1_L ⊓ g)`` built from the pieces: product with the weighting, then image."""
    return hom_image(nivat_inner(n), n.hom)
