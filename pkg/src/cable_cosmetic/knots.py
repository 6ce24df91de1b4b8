"""Knot expressions: unknot, torus knots, cables, and named leaf knots.

Grammar::

    expr := "U" | "T(a,b)" | "C(p,q; " expr ")" | "K(name)"

``K(name)`` resolves against a table of leaves when one is given, and
otherwise becomes a bare leaf with no diagram and unknown class.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from math import gcd
from typing import Mapping, Union

from .diagrams.codes import BraidWord, PDCode
from .errors import CableParameterError, MissingAttributeError, ParseError

__all__ = [
    "Unknot",
    "Torus",
    "Cable",
    "Leaf",
    "KnotExpr",
    "LeafClass",
    "parse_knot_expr",
    "parse_leaf_class",
    "simplify",
    "mirror",
    "tower_height",
]


@dataclass(frozen=True)
class LeafClass:
    """Declared geometric type of a leaf's exterior.

    ``kind`` is ``"hyperbolic"``, ``"satellite"`` or ``"unknown"``. A
    satellite leaf records how many JSJ pieces its exterior has and what
    its outermost piece is (``"hyperbolic"`` or ``"composing"``, the
    planar-base Seifert piece whose fibers are meridians). Cable-space
    outer pieces must be written with ``C(...)`` instead.
    """

    kind: str = "unknown"
    pieces: int = 1
    outer: str = "hyperbolic"

    def __str__(self):
        if self.kind == "satellite":
            return f"satellite:{self.pieces}:{self.outer}"
        return self.kind


HYPERBOLIC = LeafClass("hyperbolic")
UNKNOWN = LeafClass("unknown")


def parse_leaf_class(text: str | None) -> LeafClass:
    t = (text or "").strip().lower()
    if t in ("", "unknown"):
        return UNKNOWN
    if t == "hyperbolic":
        return HYPERBOLIC
    parts = t.split(":")
    if parts[0] == "satellite" and len(parts) in (2, 3):
        try:
            pieces = int(parts[1])
        except ValueError:
            raise ParseError(f"bad piece count in {text!r}") from None
        outer = parts[2] if len(parts) == 3 else "hyperbolic"
        if pieces < 2 or outer not in ("hyperbolic", "composing"):
            raise ParseError(f"bad satellite declaration {text!r}")
        return LeafClass("satellite", pieces, outer)
    raise ParseError(f"unknown leaf class {text!r}")


@dataclass(frozen=True)
class Unknot:
    def __str__(self):
        return "U"


@dataclass(frozen=True)
class Torus:
    a: int
    b: int

    def __post_init__(self):
        if abs(self.a) < 2 or abs(self.b) < 2:
            raise CableParameterError(f"T({self.a},{self.b}) has a unit parameter; write U")
        if gcd(self.a, self.b) != 1:
            raise CableParameterError(f"T({self.a},{self.b}) needs coprime parameters")
        if self.b < 0:
            object.__setattr__(self, "a", -self.a)
            object.__setattr__(self, "b", -self.b)

    def __str__(self):
        return f"T({self.a},{self.b})"


@dataclass(frozen=True)
class Cable:
    """The (p, q)-cable of ``companion``; stored with q >= 2."""

    p: int
    q: int
    companion: "KnotExpr"

    def __post_init__(self):
        p, q = self.p, self.q
        if q < 0:
            p, q = -p, -q
            object.__setattr__(self, "p", p)
            object.__setattr__(self, "q", q)
        if q < 2:
            raise CableParameterError(f"cable C({self.p},{self.q}) needs |q| >= 2")
        if gcd(p, q) != 1:
            raise CableParameterError(f"cable C({p},{q}) needs gcd(p, q) = 1")

    def __str__(self):
        return f"C({self.p},{self.q}; {self.companion})"


@dataclass(frozen=True)
class Leaf:
    """A named knot supplied by the user. Equality is by name."""

    name: str
    source: PDCode | BraidWord | None = field(default=None, compare=False)
    declared_class: LeafClass = field(default=UNKNOWN, compare=False)
    tau: int | None = field(default=None, compare=False)

    def __str__(self):
        return f"K({self.name})"


KnotExpr = Union[Unknot, Torus, Cable, Leaf]


class _Parser:
    def __init__(self, text: str, leaves: Mapping[str, KnotExpr] | None, strict: bool):
        self.text = text
        self.pos = 0
        self.leaves = leaves
        self.strict = strict

    def error(self, msg):
        raise ParseError(f"{msg} at position {self.pos} in {self.text!r}")

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def expect(self, ch):
        self.skip()
        if not self.text.startswith(ch, self.pos):
            self.error(f"expected {ch!r}")
        self.pos += len(ch)

    def integer(self) -> int:
        self.skip()
        m = re.compile(r"[+-]?\d+").match(self.text, self.pos)
        if m is None:
            self.error("expected an integer")
        self.pos = m.end()
        return int(m.group())

    def expr(self) -> KnotExpr:
        self.skip()
        head = self.text[self.pos:self.pos + 1]
        if head == "U":
            self.pos += 1
            return Unknot()
        if head == "T":
            self.pos += 1
            self.expect("(")
            a = self.integer()
            self.expect(",")
            b = self.integer()
            self.expect(")")
            return Torus(a, b)
        if head == "C":
            self.pos += 1
            self.expect("(")
            p = self.integer()
            self.expect(",")
            q = self.integer()
            self.expect(";")
            inner = self.expr()
            self.expect(")")
            return Cable(p, q, inner)
        if head == "K":
            self.pos += 1
            self.expect("(")
            end = self.text.find(")", self.pos)
            if end < 0:
                self.error("unterminated K(")
            name = self.text[self.pos:end].strip()
            if not name:
                self.error("empty leaf name")
            self.pos = end + 1
            if self.leaves is not None and name in self.leaves:
                return self.leaves[name]
            if self.strict:
                raise MissingAttributeError(f"unknown knot K({name})")
            return Leaf(name)
        self.error("expected U, T(, C( or K(")


def parse_knot_expr(
    text: str, leaves: Mapping[str, KnotExpr] | None = None, strict: bool = False
) -> KnotExpr:
    """Parse an expression; with ``strict`` every K(name) must be in ``leaves``."""
    parser = _Parser(text, leaves, strict)
    result = parser.expr()
    parser.skip()
    if parser.pos != len(text):
        parser.error("trailing input")
    return result


def simplify(k: KnotExpr) -> KnotExpr:
    """Re-root trivial cables: C(+-1, q; U) is U and C(p, q; U) is T(p, q)."""
    if isinstance(k, Cable):
        inner = simplify(k.companion)
        if isinstance(inner, Unknot):
            if abs(k.p) == 1:
                return Unknot()
            return Torus(k.p, k.q)
        if inner is not k.companion:
            return Cable(k.p, k.q, inner)
    return k


def mirror(k: KnotExpr) -> KnotExpr:
    if isinstance(k, Unknot):
        return k
    if isinstance(k, Torus):
        return Torus(-k.a, k.b)
    if isinstance(k, Cable):
        return Cable(-k.p, k.q, mirror(k.companion))
    if k.source is None:
        raise MissingAttributeError(f"leaf {k.name} has no diagram to mirror")
    return Leaf(f"{k.name}*", k.source.mirror(), k.declared_class, None if k.tau is None else -k.tau)


def tower_height(k: KnotExpr) -> int:
    """Number of cable operations applied on top of the innermost knot."""
    h = 0
    while isinstance(k, Cable):
        h += 1
        k = k.companion
    return h
