"""Exact arithmetic on four-valued truth quadruples.

A truth value is a quadruple ``(t, f, u, e)`` of rationals in ``[0, 1]``
summing to one.  The two operations, MK-disjunction and MK-conjunction, are
associative with units ``ZERO = (0, 1, 0, 0)`` and ``ONE = (1, 0, 0, 0)`` but
neither commutative, idempotent, nor distributive, so every fold in this
package is an *ordered* left-to-right fold.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

__all__ = [
    "TruthValue",
    "TruthValueError",
    "ZERO",
    "ONE",
    "disj",
    "conj",
    "disj_fold",
    "conj_fold",
    "parse_truth",
    "format_truth",
]

Number = Union[int, str, Fraction]


class TruthValueError(ValueError):
    """Malformed truth literal or quadruple violating the K invariants."""


def _as_fraction(x: Number) -> Fraction:
    if isinstance(x, float):
        raise TypeError("floats are not accepted; use a Fraction or a decimal string")
    return Fraction(x)


@dataclass(frozen=True, order=True)
class TruthValue:
    """An element of K.  Components are exact ``Fraction`` instances."""

    t: Fraction
    f: Fraction
    u: Fraction
    e: Fraction

    def __init__(self, t: Number, f: Number, u: Number, e: Number):
        comps = tuple(_as_fraction(c) for c in (t, f, u, e))
        for name, c in zip("tfue", comps):
            if c < 0 or c > 1:
                raise TruthValueError(f"component {name}={c} outside [0,1]")
        if sum(comps) != 1:
            raise TruthValueError(f"components sum to {sum(comps)}, not 1")
        for name, c in zip("tfue", comps):
            object.__setattr__(self, name, c)

    @classmethod
    def _raw(cls, t: Fraction, f: Fraction, u: Fraction, e: Fraction) -> "TruthValue":
        # unchecked constructor for results of disj/conj (closure is tested separately)
        obj = object.__new__(cls)
        object.__setattr__(obj, "t", t)
        object.__setattr__(obj, "f", f)
        object.__setattr__(obj, "u", u)
        object.__setattr__(obj, "e", e)
        return obj

    def astuple(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.t, self.f, self.u, self.e)

    def __iter__(self):
        return iter(self.astuple())

    def __repr__(self) -> str:
        return f"TruthValue{format_truth(self)}"

    def __str__(self) -> str:
        return format_truth(self)

    def __or__(self, other: "TruthValue") -> "TruthValue":
        return disj(self, other)

    def __and__(self, other: "TruthValue") -> "TruthValue":
        return conj(self, other)


ZERO = TruthValue(0, 1, 0, 0)
ONE = TruthValue(1, 0, 0, 0)


def disj(a: TruthValue, b: TruthValue) -> TruthValue:
    """MK-disjunction ``a ⊔ b``."""
    fu = a.f + a.u
    return TruthValue._raw(
        a.t + fu * b.t,
        a.f * b.f,
        a.f * b.u + a.u * (b.f + b.u),
        a.e + fu * b.e,
    )


def conj(a: TruthValue, b: TruthValue) -> TruthValue:
    """MK-conjunction ``a ⊓ b``."""
    tu = a.t + a.u
    return TruthValue._raw(
        a.t * b.t,
        a.f + tu * b.f,
        a.t * b.u + a.u * (b.t + b.u),
        a.e + tu * b.e,
    )


def disj_fold(values: Iterable[TruthValue]) -> TruthValue:
    """Left-to-right ``⊔`` fold; the empty fold is ``ZERO``."""
    acc = ZERO
    for v in values:
        acc = disj(acc, v)
    return acc


def conj_fold(values: Iterable[TruthValue]) -> TruthValue:
    """Left-to-right ``⊓`` fold; the empty fold is ``ONE``."""
    acc = ONE
    for v in values:
        acc = conj(acc, v)
    return acc


_COMPONENT = r"\s*(\d+(?:/\d+|\.\d+)?)\s*"
_LITERAL = re.compile(r"^\s*<" + ",".join([_COMPONENT] * 4) + r">\s*$")


def parse_truth(text: str) -> TruthValue:
    """Parse ``<c,c,c,c>`` where each ``c`` is ``p``, ``p/q`` or a finite decimal.

    >>> parse_truth("<0.3,0.2,0.4,0.1>")
    TruthValue<3/10,1/5,2/5,1/10>
    """
    m = _LITERAL.match(text)
    if not m:
        raise TruthValueError(f"malformed truth literal: {text!r}")
    comps = []
    for c in m.groups():
        if "/" in c and int(c.split("/")[1]) == 0:
            raise TruthValueError(f"zero denominator in {text!r}")
        comps.append(Fraction(c))
    return TruthValue(*comps)


def _fmt_component(x: Fraction, decimal: bool, digits: int) -> str:
    if decimal:
        s = f"{float(x):.{digits}f}".rstrip("0")
        return s + "0" if s.endswith(".") else s
    return str(x)


def format_truth(k: TruthValue, decimal: bool = False, digits: int = 6) -> str:
    """Canonical ``<p/q,...>`` rendering, or a decimal approximation."""
    return "<" + ",".join(_fmt_component(c, decimal, digits) for c in k.astuple()) + ">"
