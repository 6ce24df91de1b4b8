"""Alexander and Jones data for knot expressions."""

from __future__ import annotations

import functools
from dataclasses import dataclass

from .diagrams import (
    BraidWord,
    PDCode,
    alexander_fox,
    braid_to_pd,
    cable_braid,
    jones,
    torus_braid,
)
from .diagrams.jones import max_crossings_default
from .errors import MissingAttributeError, ResourceLimitError
from .knots import Cable, KnotExpr, Leaf, Torus, Unknot, simplify
from .laurent import LaurentPoly, normalize_alexander

__all__ = [
    "Unavailable",
    "torus_alexander",
    "torus_delta2",
    "alexander",
    "delta2",
    "braid_for",
    "diagram_for",
    "jones_of",
    "v3_check",
]

_ONE = LaurentPoly.constant(1)


@dataclass(frozen=True)
class Unavailable:
    """A value that could not be computed, with the reason."""

    reason: str
    crossings: int | None = None

    def __str__(self):
        return f"unavailable ({self.reason})"


def torus_alexander(a: int, b: int) -> LaurentPoly:
    """(t^ab - 1)(t - 1) / ((t^a - 1)(t^b - 1)), normalized."""
    a, b = abs(a), abs(b)
    if a == 1 or b == 1:
        return _ONE
    num = (LaurentPoly({a * b: 1, 0: -1})) * LaurentPoly({1: 1, 0: -1})
    den = LaurentPoly({a: 1, 0: -1}) * LaurentPoly({b: 1, 0: -1})
    return normalize_alexander(num.exact_div(den))


def torus_delta2(a: int, b: int) -> int:
    """Closed form (a^2 - 1)(b^2 - 1)/12 for the second derivative at 1."""
    num = (a * a - 1) * (b * b - 1)
    assert num % 12 == 0
    return num // 12


@functools.lru_cache(maxsize=4096)
def _alexander_pd(d: PDCode) -> LaurentPoly:
    return alexander_fox(d)


@functools.lru_cache(maxsize=4096)
def _jones_pd(d: PDCode, cap: int) -> LaurentPoly:
    return jones(d, max_crossings=cap)


def _leaf_pd(k: Leaf) -> PDCode:
    if k.source is None:
        raise MissingAttributeError(f"leaf {k.name} has no diagram")
    if isinstance(k.source, BraidWord):
        return braid_to_pd(k.source)
    return k.source


def alexander(k: KnotExpr) -> LaurentPoly:
    """Normalized Alexander polynomial; cables use the satellite formula."""
    k = simplify(k)
    if isinstance(k, Unknot):
        return _ONE
    if isinstance(k, Torus):
        return torus_alexander(k.a, k.b)
    if isinstance(k, Leaf):
        return _alexander_pd(_leaf_pd(k))
    return alexander(k.companion).substitute_power(k.q) * torus_alexander(k.p, k.q)


def delta2(k: KnotExpr) -> int:
    """Second derivative of the normalized Alexander polynomial at t = 1."""
    k = simplify(k)
    if isinstance(k, Torus):
        return torus_delta2(k.a, k.b)
    return alexander(k).derivative_at_one(2)


def braid_for(k: KnotExpr) -> BraidWord | None:
    """A braid whose closure is k, or None (PD leaves cannot be cabled)."""
    k = simplify(k)
    if isinstance(k, Unknot):
        return BraidWord(1, ())
    if isinstance(k, Torus):
        return torus_braid(k.a, k.b)
    if isinstance(k, Leaf):
        if isinstance(k.source, BraidWord):
            return k.source
        return None
    inner = braid_for(k.companion)
    if inner is None:
        return None
    return cable_braid(inner, k.p, k.q)


def diagram_for(k: KnotExpr) -> PDCode | None:
    k = simplify(k)
    if isinstance(k, Leaf) and isinstance(k.source, PDCode):
        return k.source
    b = braid_for(k)
    return None if b is None else braid_to_pd(b)


def jones_of(k: KnotExpr, max_crossings: int | None = None) -> LaurentPoly | Unavailable:
    cap = max_crossings_default() if max_crossings is None else max_crossings
    if isinstance(simplify(k), Unknot):
        return _ONE
    d = diagram_for(k)
    if d is None:
        return Unavailable(f"no diagram for {k} (leaves need a braid to be cabled)")
    try:
        return _jones_pd(d, cap)
    except ResourceLimitError as exc:
        return Unavailable(str(exc), exc.crossings)


def v3_check(k: KnotExpr, max_crossings: int | None = None) -> int | Unavailable:
    """Third derivative of the Jones polynomial at t = 1, or why it is unavailable."""
    v = jones_of(k, max_crossings)
    if isinstance(v, Unavailable):
        return v
    return v.derivative_at_one(3)
