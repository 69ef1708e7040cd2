"""Direct semantics of MSO and MK-fuzzy MSO, and the restricted-fragment check.

A ``(V, w)``-assignment is a plain dict mapping first-order variables to
positions and second-order variables to frozensets of positions.  Encoded
words over ``A_V`` can be decoded with :func:`decode`; invalid encodings
evaluate to ``ZERO``.

Formulas are compiled once into closures.  Boolean subformulas are evaluated
three-valued (``True``/``False``/``None``), where a variable missing from the
environment is unknown.  The MK evaluator uses this to skip the terms of a
``⊕`` fold that are certainly ``ZERO``, which are units of ``⊔`` and so do
not change the fold.  This keeps nested set quantifiers tractable.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Callable, Iterator, Mapping, Sequence

from ..fclassic import ExtLetter, is_first_order
from ..kvalues import ONE, ZERO, TruthValue, conj, disj
from .syntax import (Bool, Const, Exists, Label, Leq, Member, Not, Or, Plus, Prod,
                     Sum, Times, TrueF, free_vars, is_mso)

__all__ = [
    "UnboundVariableError",
    "subsets_ascending",
    "mso_satisfies",
    "mso_eval3",
    "mk_eval",
    "mk_eval_encoded",
    "encode",
    "decode",
    "assignments",
    "models",
    "is_rmso",
    "implication_clauses",
]


class UnboundVariableError(ValueError):
    pass


@lru_cache(maxsize=None)
def subsets_ascending(n: int) -> tuple:
    """All subsets of ``{0..n-1}`` ordered by the lexicographic order of their
    ascending element sequences (a proper prefix comes first)."""
    subs = [frozenset(c) for r in range(n + 1) for c in itertools.combinations(range(n), r)]
    return tuple(sorted(subs, key=lambda s: tuple(sorted(s))))


# -- encoding -------------------------------------------------------------------

def encode(word: Sequence[str], sigma: Mapping, variables: Sequence[str]) -> tuple:
    """The word over ``A_V`` carrying ``sigma`` in its rows."""
    out = []
    for i, a in enumerate(word):
        row = []
        for v in variables:
            val = sigma[v]
            row.append((v, int(i == val) if is_first_order(v) else int(i in val)))
        out.append(ExtLetter(a, tuple(sorted(row))))
    return tuple(out)


def decode(ext_word: Sequence[ExtLetter], variables: Sequence[str]):
    """``(word, sigma)`` for a valid encoding, else ``None``."""
    word = tuple(x.base for x in ext_word)
    sigma = {}
    for v in variables:
        ones = [i for i, x in enumerate(ext_word) if x.bit(v)]
        if is_first_order(v):
            if len(ones) != 1:
                return None
            sigma[v] = ones[0]
        else:
            sigma[v] = frozenset(ones)
    return word, sigma


def assignments(n: int, variables: Sequence[str]) -> Iterator[dict]:
    """Every valid assignment of ``variables`` over a word of length ``n``."""
    choices = [range(n) if is_first_order(v) else subsets_ascending(n) for v in variables]
    for combo in itertools.product(*choices):
        yield dict(zip(variables, combo))


def _check_sigma(word, sigma: Mapping, needed) -> bool:
    """Raise on unbound variables; return ``False`` for out-of-range values."""
    missing = [v for v in needed if v not in sigma]
    if missing:
        raise UnboundVariableError(f"unbound variable(s): {', '.join(sorted(missing))}")
    n = len(word)
    for v, val in sigma.items():
        if is_first_order(v):
            if not (isinstance(val, int) and 0 <= val < n):
                return False
        elif any(not (0 <= i < n) for i in val):
            return False
    return True


# -- boolean MSO, three-valued ------------------------------------------------------

def _strip(f):
    while isinstance(f, Not) and isinstance(f.sub, Not):
        f = f.sub.sub
    return f


def _disjuncts(f) -> list:
    f = _strip(f)
    if isinstance(f, Or):
        return _disjuncts(f.left) + _disjuncts(f.right)
    return [f]


def _any3(parts):
    def any3(w, env):
        result = False
        for g in parts:
            r = g(w, env)
            if r is True:
                return True
            if r is None:
                result = None
        return result
    return any3


def _all3(parts):
    def all3(w, env):
        result = True
        for g in parts:
            r = g(w, env)
            if r is False:
                return False
            if r is None:
                result = None
        return result
    return all3


def _compile_mso(f) -> Callable:
    # n-ary Or/And chains are flattened; this only changes evaluation cost
    f = _strip(f)
    if isinstance(f, TrueF):
        return lambda w, env: True
    if isinstance(f, Label):
        a, x = f.letter, f.var

        def label(w, env):
            i = env.get(x)
            return None if i is None else w[i] == a
        return label
    if isinstance(f, Leq):
        x, y = f.left, f.right

        def leq(w, env):
            i, j = env.get(x), env.get(y)
            return None if i is None or j is None else i <= j
        return leq
    if isinstance(f, Member):
        x, X = f.var, f.setvar

        def member(w, env):
            i, s = env.get(x), env.get(X)
            return None if i is None or s is None else i in s
        return member
    if isinstance(f, Not):
        inner = _strip(f.sub)
        if isinstance(inner, Or):
            parts = _disjuncts(inner)
            if all(isinstance(g, Not) for g in parts):
                # ¬(¬a ∨ ¬b ∨ ...) is how conjunctions are desugared
                return _all3([_compile_mso(g.sub) for g in parts])
        sub = _compile_mso(inner)

        def neg(w, env):
            r = sub(w, env)
            return None if r is None else not r
        return neg
    if isinstance(f, Or):
        return _any3([_compile_mso(g) for g in _disjuncts(f)])
    if isinstance(f, Exists):
        v, body = f.var, _compile_mso(f.body)
        fo = is_first_order(v)

        def ex(w, env):
            had = v in env
            old = env.get(v)
            result = False
            for val in (range(len(w)) if fo else subsets_ascending(len(w))):
                env[v] = val
                r = body(w, env)
                if r is True:
                    result = True
                    break
                if r is None:
                    result = None
            if had:
                env[v] = old
            else:
                env.pop(v, None)
            return result
        return ex
    raise TypeError(f"not an MSO formula: {f!r}")


def mso_eval3(f, word, env: dict):
    """Three-valued truth of ``f``; variables absent from ``env`` are unknown."""
    return _compile_mso(f)(tuple(word), dict(env))


def mso_satisfies(f, word, sigma: Mapping | None = None) -> bool:
    """``(w, sigma) ⊨ f``; out-of-range assignments satisfy nothing."""
    sigma = dict(sigma or {})
    word = tuple(word)
    if not _check_sigma(word, sigma, free_vars(f)):
        return False
    return _compile_mso(f)(word, sigma) is True


def models(f, word, setvars: Sequence[str], sigma: Mapping | None = None) -> Iterator[dict]:
    """Assignments of ``setvars`` (extending ``sigma``) that satisfy ``f``, in
    the nesting order ``setvars[0]`` outermost.  Branches already refuted by the
    partial assignment are pruned."""
    word = tuple(word)
    m = _compile_mso(f)
    env = dict(sigma or {})
    setvars = list(setvars)

    def go(i):
        r = m(word, env)
        if r is False:
            return
        if i == len(setvars):
            if r is True:
                yield dict(env)
            return
        v = setvars[i]
        for val in (range(len(word)) if is_first_order(v) else subsets_ascending(len(word))):
            env[v] = val
            yield from go(i + 1)
        del env[v]

    yield from go(0)


# -- MK-fuzzy MSO -------------------------------------------------------------------

def _without(env: dict, v: str):
    # temporarily mark ``v`` unknown; returns a restore callback
    if v in env:
        old = env.pop(v)
        return lambda: env.__setitem__(v, old)
    return lambda: None


def _compile_mk(f):
    """Return ``(value, surely_zero)`` closures for an MK formula."""
    if isinstance(f, Const):
        k = f.k
        is_zero = k == ZERO
        return (lambda w, env: k), (lambda w, env: is_zero)
    if isinstance(f, Bool):
        m = _compile_mso(f.phi)
        return (lambda w, env: ONE if m(w, env) is True else ZERO), \
               (lambda w, env: m(w, env) is False)
    if isinstance(f, Plus):
        lv, lz = _compile_mk(f.left)
        rv, rz = _compile_mk(f.right)
        return (lambda w, env: disj(lv(w, env), rv(w, env))), \
               (lambda w, env: lz(w, env) and rz(w, env))
    if isinstance(f, Times):
        lv, lz = _compile_mk(f.left)
        rv, _ = _compile_mk(f.right)

        def times(w, env):
            a = lv(w, env)
            return ZERO if a == ZERO else conj(a, rv(w, env))
        return times, lz
    if isinstance(f, (Sum, Prod)):
        v = f.var
        bv, bz = _compile_mk(f.body)
        fo = is_first_order(v)
        is_sum = isinstance(f, Sum)

        def fold(w, env):
            had = v in env
            old = env.get(v)
            acc = ZERO if is_sum else ONE
            for val in (range(len(w)) if fo else subsets_ascending(len(w))):
                env[v] = val
                if is_sum:
                    if not bz(w, env):
                        acc = disj(acc, bv(w, env))
                else:
                    acc = conj(acc, bv(w, env))
                    if acc == ZERO:
                        break
            if had:
                env[v] = old
            else:
                env.pop(v, None)
            return acc

        def zero(w, env):
            if len(w) == 0 and fo:
                return is_sum
            restore = _without(env, v)
            try:
                return bz(w, env)
            finally:
                restore()
        return fold, zero
    if is_mso(f):
        return _compile_mk(Bool(f))
    raise TypeError(f"not an MK formula: {f!r}")


def mk_eval(f, word, sigma: Mapping | None = None,
            variables: Sequence[str] | None = None) -> TruthValue:
    """``‖f‖_V(w, sigma)``.

    ``variables`` (default: the free variables of ``f``) must cover the free
    variables and be assigned by ``sigma``; an invalid assignment (position
    out of range, e.g. any first-order variable on the empty word) gives
    ``ZERO``.
    """
    sigma = dict(sigma or {})
    word = tuple(word)
    needed = free_vars(f)
    if variables is not None:
        extra = set(needed) - set(variables)
        if extra:
            raise UnboundVariableError(f"free variable(s) {sorted(extra)} not in V")
        needed = set(variables)
    if not _check_sigma(word, sigma, needed):
        return ZERO
    value, _ = _compile_mk(f)
    return value(word, sigma)


def mk_eval_encoded(f, variables: Sequence[str], ext_word) -> TruthValue:
    """``‖f‖_V`` on a word over ``A_V``; ``ZERO`` outside ``N_V``."""
    dec = decode(tuple(ext_word), variables)
    if dec is None:
        return ZERO
    word, sigma = dec
    return mk_eval(f, word, sigma, variables)


# -- restricted fragment ------------------------------------------------------------

def implication_clauses(body, x: str):
    """``[(X_i, k_i)]`` if ``body`` is a ``⊕``-chain of ``(x ∈ X_i) ⊗ k_i``, else ``None``."""
    out = []
    stack = [body]
    while stack:
        g = stack.pop()
        if isinstance(g, Plus):
            stack += [g.right, g.left]
            continue
        if (isinstance(g, Times) and isinstance(g.left, Bool) and isinstance(g.left.phi, Member)
                and g.left.phi.var == x and isinstance(g.right, Const)):
            out.append((g.left.phi.setvar, g.right.k))
            continue
        return None
    return out


def is_rmso(f) -> tuple[bool, list[tuple[str, str]]]:
    """Check the restricted fragment; returns ``(ok, [(location, message)])``.

    Locations are dotted paths from the root, e.g. ``root.left.body``.
    """
    problems = []

    def go(g, path):
        if isinstance(g, Times):
            if not isinstance(g.left, Bool):
                problems.append((path, "left operand of (*) must be a boolean MSO formula"))
            go(g.left, path + ".left")
            go(g.right, path + ".right")
        elif isinstance(g, Plus):
            go(g.left, path + ".left")
            go(g.right, path + ".right")
        elif isinstance(g, Prod):
            if implication_clauses(g.body, g.var) is None:
                problems.append((path, f"body of 'prod {g.var}' must be a (+)-chain of "
                                       f"({g.var} in X -> <k>) clauses"))
            go(g.body, path + ".body")
        elif isinstance(g, Sum):
            go(g.body, path + ".body")

    go(f if not is_mso(f) else Bool(f), "root")
    return (not problems), problems
