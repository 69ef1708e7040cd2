"""Logic to automata and back.

``mso_to_dfa`` is the classical compilation over the extended alphabet.
``rmso_to_automaton`` builds an MK-fuzzy automaton for a restricted formula
by structural induction, recording every homomorphic-image step so that the
fold order of each step can be checked against the direct semantics.
``automaton_to_rmso`` emits a restricted sentence for an automaton.

Variable significance in ``A_V`` follows the order of introduction: free
variables first, each quantified variable as the least significant row,
with bit 1 ordered before bit 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from ..constructs import (StrictAlphabeticHom, char_automaton, conj_char, disjunction,
                          hom_image, in_ter_one)
from ..fclassic import (Dfa, ExtLetter, complement, determinize, ext_alphabet,
                        is_first_order, product, project, union, valid_assignments_dfa)
from ..kvalues import ONE, ZERO, conj, disj, disj_fold
from ..mkauto import MkAutomaton, behavior, const_automaton
from .semantics import implication_clauses, is_rmso
from .syntax import (Bool, Const, Exists, Label, Leq, Member, Not, Or, Plus, Prod, Sum,
                     Times, TrueF, alpha_rename, conj_all, disj_all, false, first, forall,
                     free_vars, implies, is_mso, last, member_implies, partition, succ)

__all__ = [
    "NotRestrictedError",
    "HomStep",
    "Decompiled",
    "mso_to_dfa",
    "rmso_to_automaton",
    "automaton_to_rmso",
    "minimize",
]


class NotRestrictedError(ValueError):
    pass


# -- boolean compilation ------------------------------------------------------------

def minimize(d: Dfa) -> Dfa:
    """Moore partition refinement on the accessible part; states renamed ``0..``."""
    d = d.accessible()
    if d.initial is None:
        return d
    block = {q: int(q in d.final) for q in d.states}
    while True:
        sig = {q: (block[q],) + tuple(block.get(d.delta.get((q, a)), -1) for a in d.alphabet)
               for q in d.states}
        ids: dict = {}
        # number blocks by first occurrence in state order, so the result is canonical
        new = {q: ids.setdefault(sig[q], len(ids)) for q in d.states}
        if len(ids) == len(set(block.values())):
            block = new
            break
        block = new
    reps = {}
    for q in d.states:
        reps.setdefault(block[q], q)
    delta = {}
    for b, q in reps.items():
        for a in d.alphabet:
            r = d.delta.get((q, a))
            if r is not None:
                delta[(str(b), a)] = str(block[r])
    out = Dfa(tuple(str(b) for b in sorted(reps)), d.alphabet, str(block[d.initial]), delta,
              frozenset(str(block[q]) for q in d.final))
    # drop states that cannot reach acceptance: missing transitions already reject
    live = set(out.final)
    grew = True
    while grew:
        grew = False
        for (p, _), q in out.delta.items():
            if q in live and p not in live:
                live.add(p)
                grew = True
    if out.initial not in live:
        return Dfa((out.initial,), out.alphabet, out.initial, {}, frozenset())
    if len(live) < len(out.states):
        out = Dfa(tuple(q for q in out.states if q in live), out.alphabet, out.initial,
                  {k: v for k, v in out.delta.items() if k[0] in live and v in live},
                  out.final)
    return out


def _tracker(alphabet, variables, step, accept) -> Dfa:
    """DFA whose state is a tuple of flags; ``step(flags, letter)`` returns the next
    flags or ``None`` to reject."""
    start = tuple(0 for _ in variables)
    seen = {start}
    todo = [start]
    delta = {}
    while todo:
        s = todo.pop()
        for a in alphabet:
            t = step(s, a)
            if t is None:
                continue
            delta[(s, a)] = t
            if t not in seen:
                seen.add(t)
                todo.append(t)
    order = sorted(seen)
    name = {s: "".join(map(str, s)) or "q" for s in order}
    return Dfa(tuple(name[s] for s in order), alphabet, name[start],
               {(name[s], a): name[t] for (s, a), t in delta.items()},
               frozenset(name[s] for s in order if accept(s)))


def _atom(f, alphabet) -> Dfa:
    if isinstance(f, Label):
        x, letter = f.var, f.letter

        def step(s, a):
            if a.bit(x):
                return (1,) if a.base == letter and not s[0] else None
            return s
        return _tracker(alphabet, [x], step, lambda s: s == (1,))
    if isinstance(f, Leq):
        x, y = f.left, f.right

        def step(s, a):
            sx, sy = s
            bx, by = a.bit(x), a.bit(y)
            if by and not (sx or bx):
                return None
            return (sx | bx, sy | by)
        return _tracker(alphabet, [x, y], step, lambda s: s == (1, 1))
    if isinstance(f, Member):
        x, X = f.var, f.setvar

        def step(s, a):
            if a.bit(x):
                return (1,) if a.bit(X) and not s[0] else None
            return s
        return _tracker(alphabet, [x], step, lambda s: s == (1,))
    raise TypeError(f"not an atom: {f!r}")


def mso_to_dfa(f, variables: Sequence[str], alphabet: Sequence[str]) -> Dfa:
    """DFA over ``A_V`` recognizing ``{(w, σ) ∈ N_V : (w, σ) ⊨ f}``."""
    variables = tuple(variables)
    extra = free_vars(f) - set(variables)
    if extra:
        raise ValueError(f"free variable(s) {sorted(extra)} not in V")
    f = alpha_rename(f, variables)
    return _mso(f, variables, tuple(alphabet))


@lru_cache(maxsize=256)
def _valid(variables: tuple, alphabet: tuple) -> Dfa:
    return valid_assignments_dfa(variables, alphabet)


def _mso(f, variables: tuple, alphabet: tuple) -> Dfa:
    nv = _valid(variables, alphabet)
    if isinstance(f, TrueF):
        return nv
    if isinstance(f, (Label, Leq, Member)):
        return minimize(product(nv, _atom(f, nv.alphabet)))
    if isinstance(f, Not):
        return minimize(product(nv, complement(_mso(f.sub, variables, alphabet))))
    if isinstance(f, Or):
        return minimize(union(_mso(f.left, variables, alphabet),
                              _mso(f.right, variables, alphabet)))
    if isinstance(f, Exists):
        inner = _mso(f.body, variables + (f.var,), alphabet)
        return minimize(determinize(project(inner, f.var, nv.alphabet)))
    raise TypeError(f"not an MSO formula: {f!r}")


# -- restricted MK formulas to automata ---------------------------------------------

@dataclass(frozen=True, eq=False)
class HomStep:
    """One ``⊕`` quantifier compiled through a homomorphic image.

    ``inner`` recognizes the body over ``A_{V ∪ {var}}``; ``result`` is the
    image restricted to valid encodings over ``A_V``.
    """

    var: str
    variables: tuple
    inner: MkAutomaton
    hom: StrictAlphabeticHom
    result: MkAutomaton


def _tidy(a: MkAutomaton) -> MkAutomaton:
    return a.trim().renumber()


def rmso_to_automaton(f, variables: Sequence[str] = (), alphabet: Sequence[str] = ("a", "b"),
                      trace: list | None = None) -> MkAutomaton:
    """MK-fuzzy automaton over ``A_V`` with behavior ``‖f‖_V``.

    For a sentence with ``V`` empty the result is relabelled to the base
    alphabet.  ``trace``, if given, receives a :class:`HomStep` per ``⊕``
    quantifier, innermost first.
    """
    ok, problems = is_rmso(f)
    if not ok:
        where = "; ".join(f"{loc}: {msg}" for loc, msg in problems)
        raise NotRestrictedError(f"formula is not in the restricted fragment: {where}")
    variables = tuple(variables)
    extra = free_vars(f) - set(variables)
    if extra:
        raise ValueError(f"free variable(s) {sorted(extra)} not in V")
    if is_mso(f):
        f = Bool(f)
    f = alpha_rename(f, variables)
    alphabet = tuple(alphabet)
    out = _mk(f, variables, alphabet, trace if trace is not None else [])
    if not variables:
        out = out.relabel_letters({x: x.base for x in out.alphabet})
    return out


def _mk(f, variables: tuple, alphabet: tuple, trace: list) -> MkAutomaton:
    nv = _valid(variables, alphabet)
    av = nv.alphabet
    if isinstance(f, Const):
        return _tidy(conj_char(nv, const_automaton(f.k, av)))
    if isinstance(f, Bool):
        return _tidy(char_automaton(mso_to_dfa(f.phi, variables, alphabet)))
    if isinstance(f, Plus):
        return _tidy(disjunction(_mk(f.left, variables, alphabet, trace),
                                 _mk(f.right, variables, alphabet, trace)))
    if isinstance(f, Times):
        d = mso_to_dfa(f.left.phi, variables, alphabet)
        return _tidy(conj_char(d, _mk(f.right, variables, alphabet, trace)))
    if isinstance(f, Sum):
        inner_vars = variables + (f.var,)
        inner = _mk(f.body, inner_vars, alphabet, trace)
        source = _valid(inner_vars, alphabet).alphabet
        h = StrictAlphabeticHom(source, av, {x: x.drop(f.var) for x in source})
        result = _tidy(conj_char(nv, hom_image(inner, h)))
        trace.append(HomStep(f.var, variables, inner, h, result))
        return result
    if isinstance(f, Prod):
        clauses = implication_clauses(f.body, f.var)
        weights = {}
        for x in av:
            weights[x] = disj_fold(conj(ONE if x.bit(s) else ZERO, k) for s, k in clauses)
        one = MkAutomaton(["q"], av, {"q": ONE}, {("q", x, "q"): weights[x] for x in av},
                          {"q": ONE})
        return _tidy(conj_char(nv, one))
    raise TypeError(f"unexpected formula node {f!r}")


# -- automata to restricted sentences ------------------------------------------------

@dataclass(frozen=True, eq=False)
class Decompiled:
    """A restricted sentence for an automaton.

    ``automaton`` is the unit-weighted automaton the sentence describes on
    non-empty words; ``setvars[i]`` stands for ``transitions[i]``.
    """

    formula: object
    automaton: MkAutomaton
    transitions: tuple
    setvars: tuple
    psi: object = None
    epsilon_value: object = field(default=ZERO)


def automaton_to_rmso(a: MkAutomaton) -> Decompiled:
    """Restricted sentence ``ξ`` with ``‖ξ‖ = ‖a‖`` up to the order of assignments.

    One set variable per transition, numbered in transition order; ``ψ``
    holds exactly for the encodings of accepting paths and the ``⊗_x`` part
    multiplies the transition weights along the encoded path.
    """
    eps = behavior(a, ())
    b = in_ter_one(a).trim()
    trans = tuple(b.sorted_transitions())
    names = tuple(f"X{i}" for i in range(1, len(trans) + 1))
    var = dict(zip(trans, names))
    psi = false()
    if not trans:
        xi = Bool(psi)
    else:
        label_ok = [forall("x", implies(Member("x", var[t]), Label(str(t[1]), "x"))) for t in trans]
        links = disj_all(conj_all([Member("x", var[t]), Member("y", var[u])])
                         for t in trans for u in trans if t[2] == u[0])
        chain = forall("x", forall("y", implies(succ("y", "x", "z"), links)))
        starts = Exists("z", conj_all([first("z", "x"),
                                       disj_all(Member("z", var[t]) for t in trans
                                                if t[0] in b.initial)]))
        ends = Exists("u", conj_all([last("u", "x"),
                                     disj_all(Member("u", var[t]) for t in trans
                                              if t[2] in b.final)]))
        psi = conj_all([partition(list(names), "x")] + label_ok + [chain, starts, ends])
        clauses = [member_implies("x", var[t], b.transitions[t]) for t in trans]
        body = clauses[0]
        for c in clauses[1:]:
            body = Plus(body, c)
        xi = Times(Bool(psi), Prod("x", body))
        for name in reversed(names):
            xi = Sum(name, xi)
    if eps != ZERO:
        xi = Plus(xi, Times(Bool(forall("x", Not(Leq("x", "x")))), Const(eps)))
    return Decompiled(xi, b, trans, names, psi, eps)
