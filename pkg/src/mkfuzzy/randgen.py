"""Seeded random instances: truth values, automata, languages, homomorphisms."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .constructs import StrictAlphabeticHom
from .fclassic import Dfa
from .kvalues import ONE, ZERO, TruthValue
from .mkauto import MkAutomaton

__all__ = [
    "random_truth",
    "random_nonzero_truth",
    "random_automaton",
    "random_deterministic",
    "random_dfa",
    "random_hom",
]


def random_truth(rng: random.Random, denom: int | None = None, special: float = 0.1) -> TruthValue:
    """Uniform composition of ``denom`` into four parts; ``ZERO``/``ONE`` with
    probability ``special`` each half."""
    r = rng.random()
    if r < special / 2:
        return ZERO
    if r < special:
        return ONE
    if denom is None:
        denom = rng.choice((2, 3, 4, 5, 10, 12))
    cuts = sorted(rng.randint(0, denom) for _ in range(3))
    parts = [cuts[0], cuts[1] - cuts[0], cuts[2] - cuts[1], denom - cuts[2]]
    rng.shuffle(parts)
    return TruthValue(*(Fraction(p, denom) for p in parts))


def random_nonzero_truth(rng: random.Random, **kw) -> TruthValue:
    while True:
        k = random_truth(rng, **kw)
        if k != ZERO:
            return k


def _state_names(n: int) -> list[str]:
    return [f"q{i}" for i in range(n)]


def random_automaton(rng: random.Random, alphabet: Sequence, states: int | None = None,
                     max_states: int = 4, density: float = 0.35,
                     max_transitions: int | None = None) -> MkAutomaton:
    """Random (generally nondeterministic) automaton with at least one initial state."""
    n = states if states is not None else rng.randint(1, max_states)
    qs = _state_names(n)
    trans = {}
    for p in qs:
        for a in alphabet:
            for q in qs:
                if rng.random() < density:
                    trans[(p, a, q)] = random_truth(rng)
    if max_transitions is not None and len(trans) > max_transitions:
        keep = rng.sample(sorted(trans, key=str), max_transitions)
        trans = {t: trans[t] for t in keep}
    inits = [q for q in qs if rng.random() < 0.5] or [rng.choice(qs)]
    finals = [q for q in qs if rng.random() < 0.5] or [rng.choice(qs)]
    return MkAutomaton(qs, alphabet,
                       {q: random_nonzero_truth(rng) for q in inits}, trans,
                       {q: random_truth(rng) for q in finals})


def random_deterministic(rng: random.Random, alphabet: Sequence, states: int | None = None,
                         max_states: int = 4, density: float = 0.8) -> MkAutomaton:
    n = states if states is not None else rng.randint(1, max_states)
    qs = _state_names(n)
    trans = {}
    for p in qs:
        for a in alphabet:
            if rng.random() < density:
                trans[(p, a, rng.choice(qs))] = random_truth(rng)
    finals = [q for q in qs if rng.random() < 0.5] or [rng.choice(qs)]
    return MkAutomaton(qs, alphabet, {qs[0]: random_nonzero_truth(rng)}, trans,
                       {q: random_truth(rng) for q in finals})


def random_dfa(rng: random.Random, alphabet: Sequence, max_states: int = 4,
               density: float = 0.85) -> Dfa:
    n = rng.randint(1, max_states)
    qs = _state_names(n)
    delta = {(p, a): rng.choice(qs) for p in qs for a in alphabet if rng.random() < density}
    finals = frozenset(q for q in qs if rng.random() < 0.5)
    return Dfa(tuple(qs), tuple(alphabet), qs[0], delta, finals)


def random_hom(rng: random.Random, source: Sequence, target: Sequence) -> StrictAlphabeticHom:
    return StrictAlphabeticHom(source, target, {a: rng.choice(list(target)) for a in source})
