"""Abstract syntax, parser and printer for boolean MSO and MK-fuzzy MSO.

Concrete syntax::

    true  false  P_a(x)  x <= y  x in X
    !phi  phi | phi  phi & phi  phi -> phi
    exists x . phi   forall X . phi
    <t,f,u,e>  phi (+) phi  phi (*) phi  sum x . phi  sum X . phi  prod x . phi
    first(x)  last(x)  succ(y,x)  partition(X1,...,Xm)  (x in X -> <k>)

Lower-case variables are first-order, upper-case ones second-order.  There
is no operator precedence: a chain may repeat one binary operator, mixing
operators needs parentheses.  A quantifier body extends as far right as
possible.  ``forall``, ``false``, ``&``, ``->`` and the named macros are
expanded while parsing.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Union

from ..fclassic import is_first_order
from ..kvalues import TruthValue, TruthValueError, format_truth, parse_truth

__all__ = [
    "TrueF", "Label", "Leq", "Member", "Not", "Or", "Exists",
    "Const", "Bool", "Plus", "Times", "Sum", "Prod",
    "MsoFormula", "MkFormula", "FormulaSyntaxError",
    "parse_mso", "parse_mk", "to_text", "free_vars", "is_mso",
    "false", "conj_all", "disj_all", "forall", "implies",
    "first", "last", "succ", "partition", "member_implies",
    "fresh_names", "alpha_rename", "variables_of",
]


class FormulaSyntaxError(ValueError):
    def __init__(self, msg: str, pos: int | None = None):
        super().__init__(msg if pos is None else f"{msg} (at offset {pos})")
        self.pos = pos


# -- boolean MSO --------------------------------------------------------------

@dataclass(frozen=True)
class TrueF:
    pass


@dataclass(frozen=True)
class Label:
    letter: str
    var: str


@dataclass(frozen=True)
class Leq:
    left: str
    right: str


@dataclass(frozen=True)
class Member:
    var: str
    setvar: str


@dataclass(frozen=True)
class Not:
    sub: "MsoFormula"


@dataclass(frozen=True)
class Or:
    left: "MsoFormula"
    right: "MsoFormula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "MsoFormula"


MsoFormula = Union[TrueF, Label, Leq, Member, Not, Or, Exists]
_MSO_TYPES = (TrueF, Label, Leq, Member, Not, Or, Exists)


# -- MK-fuzzy MSO -------------------------------------------------------------

@dataclass(frozen=True)
class Const:
    k: TruthValue


@dataclass(frozen=True)
class Bool:
    phi: MsoFormula


@dataclass(frozen=True)
class Plus:
    left: "MkFormula"
    right: "MkFormula"


@dataclass(frozen=True)
class Times:
    left: "MkFormula"
    right: "MkFormula"


@dataclass(frozen=True)
class Sum:
    """``⊕_x`` or ``⊕_X`` depending on the case of ``var``."""

    var: str
    body: "MkFormula"


@dataclass(frozen=True)
class Prod:
    var: str
    body: "MkFormula"


MkFormula = Union[Const, Bool, Plus, Times, Sum, Prod]


def is_mso(f) -> bool:
    return isinstance(f, _MSO_TYPES)


# -- derived forms --------------------------------------------------------------

def false() -> MsoFormula:
    return Not(TrueF())


def disj_all(parts: Iterable[MsoFormula]) -> MsoFormula:
    parts = list(parts)
    if not parts:
        return false()
    out = parts[0]
    for p in parts[1:]:
        out = Or(out, p)
    return out


def conj_all(parts: Iterable[MsoFormula]) -> MsoFormula:
    parts = list(parts)
    if not parts:
        return TrueF()
    out = parts[0]
    for p in parts[1:]:
        out = Not(Or(Not(out), Not(p)))
    return out


def forall(var: str, body: MsoFormula) -> MsoFormula:
    return Not(Exists(var, Not(body)))


def implies(a: MsoFormula, b: MsoFormula) -> MsoFormula:
    return Or(Not(a), b)


def first(y: str, fresh: str) -> MsoFormula:
    return forall(fresh, Leq(y, fresh))


def last(y: str, fresh: str) -> MsoFormula:
    return forall(fresh, Leq(fresh, y))


def succ(y: str, x: str, fresh: str) -> MsoFormula:
    """``y = x + 1``."""
    return conj_all([Leq(x, y), Not(Leq(y, x)),
                     forall(fresh, Or(Leq(fresh, x), Leq(y, fresh)))])


def partition(setvars: list[str], fresh: str) -> MsoFormula:
    clauses = []
    for i, xi in enumerate(setvars):
        others = [Not(Member(fresh, xj)) for j, xj in enumerate(setvars) if j != i]
        clauses.append(conj_all([Member(fresh, xi)] + others))
    return forall(fresh, disj_all(clauses))


def member_implies(x: str, setvar: str, k: TruthValue) -> MkFormula:
    """``(x in X -> k)``, taken as ``(x ∈ X) ⊗ k``: ``k`` on ``X``, ``ZERO`` off it."""
    return Times(Bool(Member(x, setvar)), Const(k))


def fresh_names(used: set, first_order: bool = True):
    """Infinite supply of variable names not in ``used`` (and then marked used)."""
    stem = "v" if first_order else "V"
    for i in itertools.count(1):
        name = f"{stem}{i}"
        if name not in used:
            used.add(name)
            yield name


# -- variables ------------------------------------------------------------------

def free_vars(f) -> frozenset:
    if isinstance(f, (TrueF, Const)):
        return frozenset()
    if isinstance(f, Label):
        return frozenset([f.var])
    if isinstance(f, Leq):
        return frozenset([f.left, f.right])
    if isinstance(f, Member):
        return frozenset([f.var, f.setvar])
    if isinstance(f, Not):
        return free_vars(f.sub)
    if isinstance(f, Bool):
        return free_vars(f.phi)
    if isinstance(f, (Or, Plus, Times)):
        return free_vars(f.left) | free_vars(f.right)
    if isinstance(f, (Exists, Sum, Prod)):
        return free_vars(f.body) - {f.var}
    raise TypeError(f"not a formula: {f!r}")


def variables_of(f) -> set:
    """Every variable name occurring in ``f``, free or bound."""
    out = set(free_vars(f))
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, (Exists, Sum, Prod)):
            out.add(g.var)
            stack.append(g.body)
        elif isinstance(g, (Or, Plus, Times)):
            stack += [g.left, g.right]
        elif isinstance(g, Not):
            stack.append(g.sub)
        elif isinstance(g, Bool):
            stack.append(g.phi)
    return out


def _subst(f, old: str, new: str):
    # rename free occurrences of ``old``
    if isinstance(f, (TrueF, Const)):
        return f
    if isinstance(f, Label):
        return Label(f.letter, new if f.var == old else f.var)
    if isinstance(f, Leq):
        return Leq(new if f.left == old else f.left, new if f.right == old else f.right)
    if isinstance(f, Member):
        return Member(new if f.var == old else f.var, new if f.setvar == old else f.setvar)
    if isinstance(f, Not):
        return Not(_subst(f.sub, old, new))
    if isinstance(f, Bool):
        return Bool(_subst(f.phi, old, new))
    if isinstance(f, (Or, Plus, Times)):
        return type(f)(_subst(f.left, old, new), _subst(f.right, old, new))
    if isinstance(f, (Exists, Sum, Prod)):
        if f.var == old:
            return f
        return type(f)(f.var, _subst(f.body, old, new))
    raise TypeError(f"not a formula: {f!r}")


def alpha_rename(f, avoid: Iterable[str]):
    """Rename bound variables so that none is in ``avoid`` or bound twice."""
    used = set(avoid) | variables_of(f)
    names = {True: fresh_names(used, True), False: fresh_names(used, False)}
    taken = set(avoid)

    def go(g):
        if isinstance(g, (Exists, Sum, Prod)):
            var, body = g.var, g.body
            if var in taken:
                new = next(names[is_first_order(var)])
                body = _subst(body, var, new)
                var = new
            taken.add(var)
            return type(g)(var, go(body))
        if isinstance(g, (Or, Plus, Times)):
            return type(g)(go(g.left), go(g.right))
        if isinstance(g, Not):
            return Not(go(g.sub))
        if isinstance(g, Bool):
            return Bool(go(g.phi))
        return g

    return go(f)


# -- printer --------------------------------------------------------------------

def to_text(f) -> str:
    """Fully parenthesized text that parses back to ``f``."""
    if isinstance(f, TrueF):
        return "true"
    if isinstance(f, Label):
        return f"P_{f.letter}({f.var})"
    if isinstance(f, Leq):
        return f"{f.left} <= {f.right}"
    if isinstance(f, Member):
        return f"{f.var} in {f.setvar}"
    if isinstance(f, Not):
        inner = to_text(f.sub)
        if isinstance(f.sub, (Leq, Member)):
            inner = f"({inner})"
        return "!" + inner
    if isinstance(f, Or):
        return f"({to_text(f.left)} | {to_text(f.right)})"
    if isinstance(f, Exists):
        return f"(exists {f.var} . {to_text(f.body)})"
    if isinstance(f, Const):
        return format_truth(f.k)
    if isinstance(f, Bool):
        return to_text(f.phi)
    if isinstance(f, Plus):
        return f"({to_text(f.left)} (+) {to_text(f.right)})"
    if isinstance(f, Times):
        return f"({to_text(f.left)} (*) {to_text(f.right)})"
    if isinstance(f, Sum):
        return f"(sum {f.var} . {to_text(f.body)})"
    if isinstance(f, Prod):
        return f"(prod {f.var} . {to_text(f.body)})"
    raise TypeError(f"not a formula: {f!r}")


# -- parser -------------------------------------------------------------------------

_TOKENS = re.compile(r"""
    (?P<ws>\s+)
  | (?P<op>\(\+\)|\(\*\)|<=|->|[()!|&.,])
  | (?P<truth><\s*[0-9][^<>]*>)
  | (?P<label>P_[A-Za-z0-9]+)
  | (?P<ident>[A-Za-z][A-Za-z0-9_]*)
""", re.VERBOSE)

_KEYWORDS = {"true", "false", "in", "exists", "forall", "sum", "prod",
             "first", "last", "succ", "partition"}
_BINOPS = {"|", "&", "->", "(+)", "(*)"}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out, pos = [], 0
    while pos < len(text):
        m = _TOKENS.match(text, pos)
        if not m:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            out.append((kind, m.group(kind), pos))
        pos = m.end()
    out.append(("eof", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0
        used = {v for k, v, _ in self.toks if k == "ident"}
        self.fresh = fresh_names(used, True)

    def peek(self, off: int = 0):
        return self.toks[min(self.i + off, len(self.toks) - 1)]

    def take(self, value: str | None = None, kind: str | None = None):
        k, v, p = self.peek()
        if (value is not None and v != value) or (kind is not None and k != kind):
            want = value or kind
            raise FormulaSyntaxError(f"expected {want!r}, found {v or 'end of input'!r}", p)
        self.i += 1
        return v

    def variable(self, first_order: bool | None = None) -> str:
        k, v, p = self.peek()
        if k != "ident" or v in _KEYWORDS:
            raise FormulaSyntaxError(f"expected a variable, found {v or 'end of input'!r}", p)
        if first_order is True and not is_first_order(v):
            raise FormulaSyntaxError(f"{v!r} must be a first-order (lower-case) variable", p)
        if first_order is False and is_first_order(v):
            raise FormulaSyntaxError(f"{v!r} must be a second-order (upper-case) variable", p)
        self.i += 1
        return v

    # expr := unary (OP unary)*  with a single repeated OP
    def expr(self):
        left = self.unary()
        op = None
        while self.peek()[1] in _BINOPS and self.peek()[0] == "op":
            _, v, p = self.peek()
            if op is not None and v != op:
                raise FormulaSyntaxError(
                    f"mixed operators {op!r} and {v!r} need parentheses", p)
            if v == "->" and op == "->":
                raise FormulaSyntaxError("chained '->' needs parentheses", p)
            op = v
            self.i += 1
            right = self.unary()
            left = self.combine(op, left, right, p)
        return left

    def combine(self, op, left, right, pos):
        if op in ("|", "&", "->"):
            if op == "->" and isinstance(left, Member) and isinstance(right, Const):
                return member_implies(left.var, left.setvar, right.k)
            if not (is_mso(left) and is_mso(right)):
                raise FormulaSyntaxError(f"boolean operator {op!r} applied to a fuzzy formula", pos)
            if op == "|":
                return Or(left, right)
            if op == "&":
                return conj_all([left, right])
            return implies(left, right)
        left = Bool(left) if is_mso(left) else left
        right = Bool(right) if is_mso(right) else right
        return Plus(left, right) if op == "(+)" else Times(left, right)

    def unary(self):
        k, v, p = self.peek()
        if k == "op" and v == "!":
            self.i += 1
            sub = self.unary()
            if not is_mso(sub):
                raise FormulaSyntaxError("negation applied to a fuzzy formula", p)
            return Not(sub)
        if k == "ident" and v in ("exists", "forall", "sum", "prod"):
            self.i += 1
            var = self.variable(True if v == "prod" else None)
            self.take(".")
            body = self.expr()
            if v in ("exists", "forall"):
                if not is_mso(body):
                    raise FormulaSyntaxError(f"'{v}' body must be a boolean formula", p)
                return Exists(var, body) if v == "exists" else forall(var, body)
            body = Bool(body) if is_mso(body) else body
            return Sum(var, body) if v == "sum" else Prod(var, body)
        return self.primary()

    def primary(self):
        k, v, p = self.peek()
        if k == "op" and v == "(":
            self.i += 1
            inner = self.expr()
            self.take(")")
            return inner
        if k == "truth":
            self.i += 1
            try:
                return Const(parse_truth(v))
            except TruthValueError as exc:
                raise FormulaSyntaxError(str(exc), p) from None
        if k == "label":
            self.i += 1
            self.take("(")
            x = self.variable(True)
            self.take(")")
            return Label(v[2:], x)
        if k == "ident":
            if v == "true":
                self.i += 1
                return TrueF()
            if v == "false":
                self.i += 1
                return false()
            if v in ("first", "last"):
                self.i += 1
                self.take("(")
                y = self.variable(True)
                self.take(")")
                return (first if v == "first" else last)(y, next(self.fresh))
            if v == "succ":
                self.i += 1
                self.take("(")
                y = self.variable(True)
                self.take(",")
                x = self.variable(True)
                self.take(")")
                return succ(y, x, next(self.fresh))
            if v == "partition":
                self.i += 1
                self.take("(")
                sets = [self.variable(False)]
                while self.peek()[1] == ",":
                    self.i += 1
                    sets.append(self.variable(False))
                self.take(")")
                return partition(sets, next(self.fresh))
            x = self.variable()
            _, op, q = self.peek()
            if op == "<=":
                self.i += 1
                if not is_first_order(x):
                    raise FormulaSyntaxError(f"{x!r} must be a first-order (lower-case) variable", p)
                return Leq(x, self.variable(True))
            if op == "in":
                self.i += 1
                if not is_first_order(x):
                    raise FormulaSyntaxError(f"{x!r} must be a first-order (lower-case) variable", p)
                return Member(x, self.variable(False))
            raise FormulaSyntaxError(f"expected '<=' or 'in' after {x!r}", q)
        raise FormulaSyntaxError(f"unexpected {v or 'end of input'!r}", p)

    def finish(self):
        k, v, p = self.peek()
        if k != "eof":
            raise FormulaSyntaxError(f"trailing input {v!r}", p)


def parse_mk(text: str) -> MkFormula:
    """Parse an MK-fuzzy formula; a boolean formula is wrapped as ``Bool``."""
    p = _Parser(text)
    f = p.expr()
    p.finish()
    return Bool(f) if is_mso(f) else f


def parse_mso(text: str) -> MsoFormula:
    p = _Parser(text)
    f = p.expr()
    p.finish()
    if not is_mso(f):
        raise FormulaSyntaxError("expected a boolean MSO formula")
    return f
