"""Randomized verification suites and gap probes.

A *suite* checks an asserted invariant; any ``mismatch`` is a failure.  A
*probe* searches for instances where an unproven ordering question bites;
its ``counterexample`` verdicts are findings, never failures.

Every trial draws from its own generator seeded by ``(name, seed, trial)``,
so a single report can be regenerated without replaying the whole run, and
the ``instance`` text of a report holds every input needed to rebuild it.
"""

from __future__ import annotations

import json
import random
from collections import Counter
from dataclasses import asdict, dataclass
from typing import Callable, Iterable, Iterator

from . import langops as L
from .constructs import (StrictAlphabeticHom, cauchy, char_automaton, conj_char, disjunction,
                         hom_image, in_ter_one, inv_hom, nivat_compose, nivat_decompose,
                         nivat_inner, normalize, scalar_left, scalar_right,
                         scalar_right_normalized, strong_support)
from .fclassic import accepts, all_words, ext_alphabet, is_first_order
from .kvalues import ONE, ZERO, TruthValue, conj, disj, format_truth
from .logic import (automaton_to_rmso, is_rmso, mk_eval, mk_eval_encoded, mso_satisfies,
                    mso_to_dfa, parse_mk, parse_mso, rmso_to_automaton)
from .logic.compile import HomStep
from .logic.semantics import assignments, decode, encode, models, subsets_ascending
from .logic.syntax import Bool, free_vars
from .mkauto import (MkAutomaton, behavior, behavior_reference, is_deterministic,
                     is_normalized, is_unambiguous, path_weight, paths)
from .randgen import (random_automaton, random_deterministic, random_dfa, random_hom,
                      random_truth)
from .textfmt import dump_automaton, dump_classical, format_word

__all__ = [
    "ProbeReport",
    "RunSummary",
    "SUITES",
    "PROBES",
    "MSO_SUITE",
    "EXTENSION_SUITE",
    "RMSO_SUITE",
    "run_suite",
    "run_probe",
    "hom_step_divergences",
    "sigma_key_fold",
    "default_trials",
]

MATCH = "match"
MISMATCH = "mismatch"
REPORTED = "reported"
COUNTEREXAMPLE = "counterexample"


@dataclass
class ProbeReport:
    probe: str
    seed: int
    trial: int
    verdict: str
    instance: str = ""
    word: str | None = None
    expected: str | None = None
    actual: str | None = None
    note: str = ""

    def record(self) -> str:
        return json.dumps(asdict(self), ensure_ascii=False, sort_keys=True)

    def text(self, with_instance: bool = True) -> str:
        head = f"[{self.verdict}] {self.probe} seed={self.seed} trial={self.trial}"
        if self.word is not None:
            head += f" word={self.word}"
        lines = [head]
        if self.expected is not None or self.actual is not None:
            lines.append(f"  expected {self.expected}")
            lines.append(f"  actual   {self.actual}")
        if self.note:
            lines.append(f"  note: {self.note}")
        if with_instance and self.instance:
            lines.extend("  | " + ln for ln in self.instance.rstrip("\n").split("\n"))
        return "\n".join(lines)


@dataclass
class RunSummary:
    name: str
    seed: int
    trials: int
    counts: Counter

    @property
    def failed(self) -> bool:
        return self.counts.get(MISMATCH, 0) > 0

    def text(self) -> str:
        parts = ", ".join(f"{v} {k}" for k, v in sorted(self.counts.items()))
        return f"{self.name}: {self.trials} trials ({parts or 'none'})"

    def record(self) -> str:
        return json.dumps({"summary": self.name, "seed": self.seed, "trials": self.trials,
                           "counts": dict(sorted(self.counts.items()))}, sort_keys=True)


@dataclass
class Outcome:
    verdict: str
    instance: str = ""
    word: tuple | None = None
    expected: TruthValue | str | None = None
    actual: TruthValue | str | None = None
    note: str = ""


# -- instance dumps -----------------------------------------------------------------

def _dump(**parts) -> str:
    out = []
    for name, val in parts.items():
        out.append(f"--- {name}")
        if isinstance(val, MkAutomaton):
            out.append(dump_automaton(val).rstrip("\n"))
        elif isinstance(val, TruthValue):
            out.append(format_truth(val))
        elif isinstance(val, StrictAlphabeticHom):
            out.extend(f"{x} {val.mapping[x]}" for x in val.source)
        elif hasattr(val, "delta") or hasattr(val, "transitions"):
            out.append(dump_classical(val).rstrip("\n"))
        else:
            out.append(str(val))
    return "\n".join(out) + "\n"


def _fmt(v) -> str | None:
    if v is None:
        return None
    return format_truth(v) if isinstance(v, TruthValue) else str(v)


def _compare(instance: str, words: Iterable, expected: Callable, actual: Callable,
             note: str = "") -> Outcome:
    for w in words:
        e, a = expected(w), actual(w)
        if e != a:
            return Outcome(MISMATCH, instance, w, e, a, note)
    return Outcome(MATCH)


def _alphabet(rng: random.Random, most: int = 3, letters: str = "abc") -> tuple:
    return tuple(letters[:rng.randint(1, most)])


# -- construction suites -------------------------------------------------------------

def _v_bimonoid(rng, maxlen):
    special = 0.3
    a, b, c = (random_truth(rng, special=special,
                            denom=rng.choice((None, 7, 60, 97))) for _ in range(3))

    def closed(k):
        comps = k.astuple()
        return all(0 <= x <= 1 for x in comps) and sum(comps) == 1

    ab_d, ab_c = disj(a, b), conj(a, b)
    laws = [
        ("closure of disj", True, closed(ab_d)),
        ("closure of conj", True, closed(ab_c)),
        ("disj associative", disj(ab_d, c), disj(a, disj(b, c))),
        ("conj associative", conj(ab_c, c), conj(a, conj(b, c))),
        ("ZERO left unit of disj", a, disj(ZERO, a)),
        ("ZERO right unit of disj", a, disj(a, ZERO)),
        ("ONE left unit of conj", a, conj(ONE, a)),
        ("ONE right unit of conj", a, conj(a, ONE)),
        ("ONE left-absorbing for disj", ONE, disj(ONE, a)),
        ("ZERO left-absorbing for conj", ZERO, conj(ZERO, a)),
        ("k conj ZERO", TruthValue(0, a.t + a.f + a.u, 0, a.e), conj(a, ZERO)),
        ("zero-sum free", True, ab_d != ZERO or (a == ZERO and b == ZERO)),
        ("no zero divisors", True, ab_c != ZERO or a == ZERO or b == ZERO),
    ]
    for name, want, got in laws:
        if want != got:
            return Outcome(MISMATCH, _dump(a=a, b=b, c=c), None, _fmt(want), _fmt(got), name)
    return Outcome(MATCH)


def _v_behavior(rng, maxlen):
    al = _alphabet(rng)
    a = random_automaton(rng, al, max_states=3)
    return _compare(_dump(a=a), all_words(al, maxlen),
                    lambda w: behavior_reference(a, w), lambda w: behavior(a, w))


def _v_char(rng, maxlen):
    al = _alphabet(rng)
    d = random_dfa(rng, al)
    c = char_automaton(d)
    if not is_deterministic(c):
        return Outcome(MISMATCH, _dump(d=d), note="characteristic automaton not deterministic")
    return _compare(_dump(d=d), all_words(al, maxlen),
                    L.CharOf(d), lambda w: behavior(c, w))


def _v_disjunction(rng, maxlen):
    al = _alphabet(rng)
    a1, a2 = random_automaton(rng, al), random_automaton(rng, al)
    c = disjunction(a1, a2)
    return _compare(_dump(a1=a1, a2=a2), all_words(al, maxlen),
                    L.Disj(L.Behavior(a1), L.Behavior(a2)), lambda w: behavior(c, w))


def _v_conj_char(rng, maxlen):
    al = _alphabet(rng)
    d, a = random_dfa(rng, al), random_automaton(rng, al)
    c = conj_char(d, a)
    return _compare(_dump(d=d, a=a), all_words(al, maxlen),
                    L.Conj(L.CharOf(d), L.Behavior(a)), lambda w: behavior(c, w))


def _v_inv_hom(rng, maxlen):
    src, tgt = _alphabet(rng), _alphabet(rng, letters="xyz")
    h = random_hom(rng, src, tgt)
    a = random_automaton(rng, tgt)
    c = inv_hom(a, h)
    return _compare(_dump(a=a, h=h), all_words(src, maxlen),
                    L.InvHomImage(h, L.Behavior(a)), lambda w: behavior(c, w))


def _v_scalar_right(rng, maxlen):
    al = _alphabet(rng)
    a, k = random_deterministic(rng, al), random_truth(rng)
    c = scalar_right(a, k)
    return _compare(_dump(a=a, k=k), all_words(al, maxlen),
                    L.ScalarRight(L.Behavior(a), k), lambda w: behavior(c, w))


def _v_scalar_right_normalized(rng, maxlen):
    al = _alphabet(rng)
    a, k = normalize(random_deterministic(rng, al)), random_truth(rng)
    c = scalar_right_normalized(a, k)
    return _compare(_dump(a=a, k=k), all_words(al, maxlen),
                    L.ScalarRight(L.Behavior(a), k), lambda w: behavior(c, w))


def _v_normalize(rng, maxlen):
    al = _alphabet(rng)
    a = random_deterministic(rng, al)
    n = normalize(a)
    inst = _dump(a=a)
    if not is_normalized(n):
        return Outcome(MISMATCH, inst, note="result is not normalized")
    if not is_unambiguous(n):
        return Outcome(MISMATCH, inst, note="result is ambiguous")
    if behavior(n, ()) != ZERO:
        return Outcome(MISMATCH, inst, (), ZERO, behavior(n, ()), "value on the empty word")
    return _compare(inst, all_words(al, maxlen, 1),
                    lambda w: behavior(a, w), lambda w: behavior(n, w))


def _v_in_ter_one(rng, maxlen):
    al = _alphabet(rng)
    a = random_automaton(rng, al)
    b = in_ter_one(a)
    inst = _dump(a=a)
    if any(k != ONE for k in list(b.initial.values()) + list(b.final.values())):
        return Outcome(MISMATCH, inst, note="initial/final weights not all ONE")
    return _compare(inst, all_words(al, maxlen, 1),
                    lambda w: behavior(a, w), lambda w: behavior(b, w))


def _v_cauchy(rng, maxlen):
    al = _alphabet(rng)
    a1 = random_deterministic(rng, al, max_states=3)
    a2 = random_deterministic(rng, al, max_states=3)
    c = cauchy(a1, a2)
    return _compare(_dump(a1=a1, a2=a2), all_words(al, min(maxlen, 4)),
                    L.Cauchy(L.Behavior(a1), L.Behavior(a2)), lambda w: behavior(c, w))


def _v_strong_support(rng, maxlen):
    al = _alphabet(rng)
    a = random_deterministic(rng, al)
    d = strong_support(a)
    return _compare(_dump(a=a), all_words(al, maxlen),
                    lambda w: behavior(a, w).t != 0, lambda w: accepts(d, w))


def _weights(a: MkAutomaton, word) -> list:
    return [path_weight(a, p, word) for p in paths(a, word)]


def _v_hom_image(rng, maxlen):
    src, tgt = _alphabet(rng), _alphabet(rng, most=2, letters="xyz")
    h = random_hom(rng, src, tgt)
    a = random_automaton(rng, src)
    img = hom_image(a, h)

    def source_side(u):
        return sorted(k for v in L.live_preimages(a, h, u) for k in _weights(a, v))

    out = _compare(_dump(a=a, h=h), all_words(tgt, maxlen), source_side,
                   lambda u: sorted(_weights(img, u)), "path-weight multisets differ")
    if out.verdict == MISMATCH:
        out.expected = "[" + ", ".join(map(format_truth, out.expected)) + "]"
        out.actual = "[" + ", ".join(map(format_truth, out.actual)) + "]"
    return out


def _v_scalar_left(rng, maxlen):
    al = _alphabet(rng)
    a, k = random_deterministic(rng, al), random_truth(rng)
    res = scalar_left(k, a)
    inst = _dump(k=k, a=a)
    for w in all_words(al, maxlen):
        got = behavior(res.automaton, w)
        if accepts(res.dead_words, w):
            if got != ZERO:
                return Outcome(MISMATCH, inst, w, ZERO, got, "dead word must yield ZERO")
            if conj(k, behavior(a, w)) != res.dead_value:
                return Outcome(MISMATCH, inst, w, res.dead_value, conj(k, behavior(a, w)),
                               "predicted dead value")
        elif got != conj(k, behavior(a, w)):
            return Outcome(MISMATCH, inst, w, conj(k, behavior(a, w)), got, "live word")
    return Outcome(MATCH)


def _nivat_source(rng):
    # redraw until the value on ε is ZERO and some accepting path remains
    al = _alphabet(rng, most=2)
    while True:
        a = random_automaton(rng, al, max_states=3, density=0.4)
        a = a.replace(final={q: k for q, k in a.final.items() if q not in a.initial})
        if a.trim().transitions:
            return al, a


def _v_nivat(rng, maxlen):
    al, a = _nivat_source(rng)
    inst = _dump(a=a)
    n = nivat_decompose(a)
    if len(n.inner_alphabet) != len(n.automaton.transitions):
        return Outcome(MISMATCH, inst, note="|B| differs from the number of transitions")
    inner = nivat_inner(n)
    img = hom_image(inner, n.hom)
    words = list(all_words(al, min(maxlen, 4), 1))
    for u in words:
        if behavior(img, u) != L.evaluate(L.HomImage(n.hom, L.Behavior(inner)), u):
            return Outcome(REPORTED, inst, u, note="hom step diverges; round trip not asserted")
    c = nivat_compose(n)
    return _compare(inst, words, lambda w: behavior(a, w), lambda w: behavior(c, w))


# -- logic suites ------------------------------------------------------------------

MSO_SUITE = (
    ("true", ()),
    ("true", ("x", "X")),
    ("exists x . P_a(x)", ()),
    ("P_a(x)", ("x",)),
    ("x <= y", ("x", "y")),
    ("x <= y", ("y", "x")),
    ("x in X", ("x", "X")),
    ("!(x in X)", ("X", "x")),
    ("first(x)", ("x",)),
    ("last(x) | P_b(x)", ("x",)),
    ("succ(y,x)", ("x", "y")),
    ("exists X . (forall x . (x in X -> P_a(x)))", ()),
    ("forall y . (x <= y)", ("x", "Y")),
    ("exists y . ((x <= y) & !(y <= x) & (y in X))", ("x", "X")),
    ("partition(X,Y)", ("X", "Y")),
    ("exists x . exists y . (succ(y,x) & P_a(x) & P_b(y))", ()),
)

EXTENSION_SUITE = (
    ("<1/2,1/4,1/8,1/8> (+) P_a(x)", ("x", "y")),
    ("(x in X) (*) <3/10,1/5,2/5,1/10>", ("X", "x")),
    ("sum y . ((x <= y) (*) <1/5,1/5,1/5,2/5>)", ("x", "Z")),
    ("prod y . ((y in X -> <1/2,0,1/2,0>) (+) (y in Y -> <0,1/4,1/4,1/2>))", ("X", "Y")),
    ("sum Y . ((forall y . (y in Y -> P_a(y))) (*) <1/3,1/3,1/3,0>)", ("x", "X")),
    ("last(x) (*) (<1/10,3/5,1/10,1/5> (+) <1/2,1/2,0,0>)", ("y", "x")),
    ("exists y . (x <= y & P_b(y))", ("x", "Y")),
)

_K1 = "<3/10,1/5,2/5,1/10>"
_K2 = "<1/5,1/10,3/10,2/5>"
_K3 = "<1/2,1/4,0,1/4>"

RMSO_SUITE = (
    (_K1, ()),
    ("exists x . P_a(x)", ()),
    (f"{_K1} (+) {_K2}", ()),
    (f"(forall x . P_a(x)) (+) {_K3}", ()),
    (f"(exists x . P_b(x)) (*) {_K2}", ()),
    (f"P_a(x) (*) {_K1}", ("x",)),
    (f"prod x . ((x in X -> {_K1}) (+) (x in Y -> {_K2}))", ("X", "Y")),
    (f"sum x . (P_a(x) (*) {_K1})", ()),
    (f"sum x . ((P_a(x) (*) {_K1}) (+) (P_b(x) (*) {_K2}))", ()),
    (f"(exists x . P_a(x)) (*) (sum y . (last(y) (*) {_K3}))", ()),
    (f"sum X . ((forall x . (x in X -> P_a(x))) (*) {_K2})", ()),
    (f"sum X . sum Y . (partition(X,Y) (*) (prod x . ((x in X -> {_K1}) (+) (x in Y -> {_K2}))))",
     ()),
)


def _ext_words(alphabet, variables, maxlen):
    return all_words(ext_alphabet(alphabet, variables), maxlen)


def _v_mso(rng, maxlen, index):
    text, variables = MSO_SUITE[index % len(MSO_SUITE)]
    f = parse_mso(text)
    d = mso_to_dfa(f, variables, ("a", "b"))
    inst = _dump(formula=text, variables=" ".join(variables) or "-")

    def direct(x):
        dec = decode(x, variables)
        return dec is not None and mso_satisfies(f, *dec)

    return _compare(inst, _ext_words(("a", "b"), variables, min(maxlen, 3)),
                    direct, lambda x: accepts(d, x))


def _v_extension(rng, maxlen, index):
    text, variables = EXTENSION_SUITE[index % len(EXTENSION_SUITE)]
    f = parse_mk(text)
    free = tuple(v for v in variables if v in free_vars(f))
    inst = _dump(formula=text, variables=" ".join(variables))
    for n in range(min(maxlen, 3) + 1):
        for w in all_words(("a", "b"), n, n):
            for sigma in assignments(n, variables):
                big = mk_eval(f, w, sigma, variables)
                small = mk_eval(f, w, {v: sigma[v] for v in free}, free)
                if big != small:
                    return Outcome(MISMATCH, inst, w, small, big, f"sigma={sigma}")
                enc = encode(w, sigma, variables)
                if mk_eval_encoded(f, variables, enc) != big:
                    return Outcome(MISMATCH, inst, w, big, mk_eval_encoded(f, variables, enc),
                                   "encoded evaluation")
    # the boolean compilation is consistent in the same way
    if isinstance(f, Bool):
        d_big = mso_to_dfa(f.phi, variables, ("a", "b"))
        d_small = mso_to_dfa(f.phi, free, ("a", "b"))
        for x in _ext_words(("a", "b"), variables, min(maxlen, 3)):
            if decode(x, variables) is None:
                continue
            y = x
            for v in variables:
                if v not in free:
                    y = tuple(letter.drop(v) for letter in y)
            if accepts(d_big, x) != accepts(d_small, y):
                return Outcome(MISMATCH, inst, x, accepts(d_small, y), accepts(d_big, x),
                               "automaton over the larger V")
    return Outcome(MATCH)


def hom_step_divergences(step: HomStep, alphabet, maxlen: int) -> Iterator[tuple]:
    """``(u, expected, actual)`` for words ``u`` over ``A_V`` where the
    compiled image disagrees with the direct ``⊕`` fold over the inner
    automaton (positions ascending, or subsets in ascending order)."""
    inner_vars = step.variables + (step.var,)
    fo = is_first_order(step.var)
    for u in _ext_words(alphabet, step.variables, maxlen):
        dec = decode(u, step.variables)
        if dec is None:
            continue
        w, sigma = dec
        acc = ZERO
        for val in (range(len(w)) if fo else subsets_ascending(len(w))):
            acc = disj(acc, behavior(step.inner, encode(w, {**sigma, step.var: val}, inner_vars)))
        got = behavior(step.result, u)
        if got != acc:
            yield u, acc, got


def _rmso_check(text, variables, maxlen):
    f = parse_mk(text)
    trace: list = []
    a = rmso_to_automaton(f, variables, ("a", "b"), trace)
    inst = _dump(formula=text, variables=" ".join(variables) or "-")
    n = min(maxlen, 4)
    if variables:
        words = _ext_words(("a", "b"), variables, n)
        oracle = lambda x: mk_eval_encoded(f, variables, x)
    else:
        words = all_words(("a", "b"), n)
        oracle = lambda w: mk_eval(f, w)
    out = _compare(inst, words, oracle, lambda x: behavior(a, x))
    if out.verdict == MISMATCH:
        for step in trace:
            bad = next(hom_step_divergences(step, ("a", "b"), n), None)
            if bad is not None:
                out.verdict = REPORTED
                out.note = (f"sum over {step.var}: image fold differs from the direct fold at "
                            f"{format_word(bad[0])}")
                break
    return out


def _v_rmso(rng, maxlen, index):
    text, variables = RMSO_SUITE[index % len(RMSO_SUITE)]
    return _rmso_check(text, variables, maxlen)


def sigma_key_fold(d, word) -> tuple[TruthValue, bool]:
    """Fold of the accepting paths of ``d.automaton`` over ``word`` in the
    nesting order of the emitted set quantifiers.  The flag tells whether
    that order is the path order."""
    b, trans = d.automaton, d.transitions
    ps = list(paths(b, word))

    def key(p):
        used = {t: [] for t in trans}
        for i, x in enumerate(word):
            used[(p[i], x, p[i + 1])].append(i)
        return tuple(tuple(used[t]) for t in trans)

    ordered = sorted(ps, key=key)
    acc = ZERO
    for p in ordered:
        acc = disj(acc, path_weight(b, p, word))
    return acc, ordered == ps


def _recdef_source(rng):
    return random_automaton(rng, ("a", "b"), max_states=2, density=0.5, max_transitions=4)


def _v_recdef(rng, maxlen):
    a = _recdef_source(rng)
    d = automaton_to_rmso(a)
    inst = _dump(a=a)
    ok, problems = is_rmso(d.formula)
    if not ok:
        return Outcome(MISMATCH, inst, note=f"emitted sentence not restricted: {problems}")
    n = min(maxlen, 3)
    eps = mk_eval(d.formula, ())
    if eps != behavior(a, ()):
        return Outcome(MISMATCH, inst, (), behavior(a, ()), eps, "empty word")
    reported = None
    for w in all_words(("a", "b"), n, 1):
        count = sum(1 for _ in models(d.psi, w, d.setvars))
        npaths = sum(1 for _ in paths(d.automaton, w))
        if count != npaths:
            return Outcome(MISMATCH, inst, w, str(npaths), str(count),
                           "satisfying assignments vs accepting paths")
        got = mk_eval(d.formula, w)
        keyed, same_order = sigma_key_fold(d, w)
        if got != keyed:
            return Outcome(MISMATCH, inst, w, keyed, got, "evaluator vs quantifier-order fold")
        want = behavior(a, w)
        if got != want:
            if same_order:
                return Outcome(MISMATCH, inst, w, want, got, "orders agree but values differ")
            reported = reported or Outcome(REPORTED, inst, w, want, got,
                                           "assignment order differs from path order")
    return reported or Outcome(MATCH)


# -- probes ----------------------------------------------------------------------

def _p_hom_order(rng, maxlen):
    src, tgt = _alphabet(rng), _alphabet(rng, most=2, letters="xyz")
    h = random_hom(rng, src, tgt)
    a = random_automaton(rng, src, max_states=3)
    img = hom_image(a, h)
    out = _compare(_dump(a=a, h=h), all_words(tgt, min(maxlen, 4)),
                   L.HomImage(h, L.Behavior(a)), lambda u: behavior(img, u),
                   "image fold differs from the word-major fold")
    return out


def _p_scalar_left(rng, maxlen):
    al = _alphabet(rng, most=2)
    a = random_deterministic(rng, al, density=0.5)
    k = random_truth(rng, denom=10)
    res = scalar_left(k, a)
    inst = _dump(k=k, a=a)
    predicted = TruthValue(0, k.t + k.f + k.u, 0, k.e)
    for w in all_words(al, maxlen):
        if not accepts(res.dead_words, w):
            continue
        got, want = behavior(res.automaton, w), conj(k, behavior(a, w))
        if got != want:
            tag = "matches" if want == predicted else "DOES NOT match"
            return Outcome(MISMATCH, inst, w, want, got,
                           f"dead word; pointwise value {tag} (0,t+f+u,0,e) of k")
    return Outcome(MATCH)


def _p_path_tie(rng, maxlen):
    al = _alphabet(rng, most=2)
    a = random_automaton(rng, al, max_states=3, density=0.5)
    return _compare(_dump(a=a), all_words(al, min(maxlen, 4)),
                    lambda w: behavior_reference(a, w, tie_descending=True),
                    lambda w: behavior(a, w),
                    "expected: last state compared descending; actual: ascending")


def _p_recdef_order(rng, maxlen):
    a = _recdef_source(rng)
    d = automaton_to_rmso(a)
    for w in all_words(("a", "b"), min(maxlen, 3), 1):
        _, same = sigma_key_fold(d, w)
        if not same:
            got, want = mk_eval(d.formula, w), behavior(a, w)
            if got != want:
                return Outcome(MISMATCH, _dump(a=a), w, want, got,
                               "expected: behavior; actual: value of the emitted sentence")
    return Outcome(MATCH)


def _p_reorder(rng, maxlen):
    al = _alphabet(rng, most=2)
    a = random_automaton(rng, al, max_states=3, density=0.5)
    order = list(a.states)
    rng.shuffle(order)
    b = a.reorder(order)
    return _compare(_dump(a=a, order=" ".join(order)), all_words(al, min(maxlen, 4)),
                    lambda w: behavior(a, w), lambda w: behavior(b, w),
                    "expected: declared order; actual: permuted order")


# -- registry and runners -----------------------------------------------------------

SUITES: dict = {
    "bimonoid": _v_bimonoid,
    "behavior": _v_behavior,
    "char": _v_char,
    "disjunction": _v_disjunction,
    "conj_char": _v_conj_char,
    "inv_hom": _v_inv_hom,
    "scalar_right": _v_scalar_right,
    "scalar_right_normalized": _v_scalar_right_normalized,
    "normalize": _v_normalize,
    "in_ter_one": _v_in_ter_one,
    "cauchy": _v_cauchy,
    "strong_support": _v_strong_support,
    "hom_image": _v_hom_image,
    "scalar_left": _v_scalar_left,
    "nivat": _v_nivat,
    "mso": _v_mso,
    "extension": _v_extension,
    "rmso": _v_rmso,
    "recdef": _v_recdef,
}

# suites over a fixed list: a trial index selects the entry
_INDEXED = {"mso": MSO_SUITE, "extension": EXTENSION_SUITE, "rmso": RMSO_SUITE}

PROBES: dict = {
    "hom-order": _p_hom_order,
    "scalar-left": _p_scalar_left,
    "path-tie": _p_path_tie,
    "recdef-order": _p_recdef_order,
    "reorder": _p_reorder,
}


def default_trials(name: str) -> int:
    if name == "bimonoid":
        return 10000
    if name in _INDEXED:
        return len(_INDEXED[name])
    if name == "recdef":
        return 20
    return 100


def _rng(name: str, seed: int, trial: int) -> random.Random:
    return random.Random(f"{name}/{seed}/{trial}")


def _report(name, seed, trial, o: Outcome) -> ProbeReport:
    return ProbeReport(name, seed, trial, o.verdict, o.instance,
                       None if o.word is None else format_word(o.word),
                       _fmt(o.expected), _fmt(o.actual), o.note)


def run_suite(name: str, seed: int = 0, trials: int | None = None,
              maxlen: int = 5) -> Iterator[ProbeReport]:
    """One report per trial; ``mismatch`` marks a failed invariant."""
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
    check = SUITES[name]
    for trial in range(default_trials(name) if trials is None else trials):
        rng = _rng(name, seed, trial)
        if name in _INDEXED:
            o = check(rng, maxlen, trial)
        else:
            o = check(rng, maxlen)
        yield _report(name, seed, trial, o)


def run_probe(name: str, seed: int = 0, budget: int = 1000, maxlen: int = 5,
              stop_after: int | None = 1) -> Iterator[ProbeReport]:
    """Search up to ``budget`` trials; a differing instance is reported as a
    ``counterexample``.  Stops after ``stop_after`` counterexamples."""
    if name not in PROBES:
        raise KeyError(f"unknown probe {name!r}; known: {', '.join(PROBES)}")
    found = 0
    for trial in range(budget):
        o = PROBES[name](_rng(name, seed, trial), maxlen)
        if o.verdict == MISMATCH:
            o.verdict = COUNTEREXAMPLE
        elif o.verdict != MATCH:
            o.verdict = MATCH
        yield _report(name, seed, trial, o)
        if o.verdict == COUNTEREXAMPLE:
            found += 1
            if stop_after is not None and found >= stop_after:
                return
