"""Cabling braid closures.

Each strand of the companion braid is replaced by a bundle of q parallel
strands, so each crossing becomes q^2 crossings of the same sign. The
blackboard-parallel bundle follows the companion with framing equal to
the braid's writhe, i.e. it is q parallel (w, 1) curves. Appending
``(sigma_1 ... sigma_{q-1})^k`` on the first bundle with k = p - q*w turns
that into the single (p, q) curve measured against the Seifert longitude.
"""

from __future__ import annotations

from math import gcd

from ..errors import CableParameterError, MultiComponentError
from .codes import BraidWord

__all__ = ["cable_braid", "torus_braid", "cable_crossing_count"]


def _bundle_crossing(i: int, q: int) -> list[int]:
    """Positive bundle crossing of bundles i and i+1 (1-based), q strands each."""
    word = []
    base = i * q  # rightmost strand of the left bundle
    for a in range(q):
        start = base - a
        word.extend(range(start, start + q))
    return word


def cable_crossing_count(b: BraidWord, p: int, q: int) -> int:
    return q * q * len(b.letters) + (q - 1) * abs(p - q * b.writhe())


def cable_braid(b: BraidWord, p: int, q: int) -> BraidWord:
    """Braid whose closure is the (p, q)-cable of the closure of ``b``."""
    if q < 2:
        raise CableParameterError(f"cable needs q >= 2, got q = {q}")
    if gcd(p, q) != 1:
        raise CableParameterError(f"gcd({p}, {q}) != 1")
    if not b.is_knot():
        raise MultiComponentError(f"closure of {b} is not a knot")
    letters: list[int] = []
    for i in b.letters:
        block = _bundle_crossing(abs(i), q)
        if i > 0:
            letters.extend(block)
        else:
            letters.extend(-g for g in reversed(block))
    k = p - q * b.writhe()
    twist = list(range(1, q))
    if k < 0:
        twist = [-g for g in reversed(twist)]
    letters.extend(twist * abs(k))
    return BraidWord(b.strands * q, tuple(letters))


def torus_braid(a: int, b: int) -> BraidWord:
    """Braid for T(a, b) on min(|a|, |b|) strands; sign(a*b) gives the handedness."""
    if abs(a) < 2 or abs(b) < 2 or gcd(a, b) != 1:
        raise CableParameterError(f"T({a},{b}) is not a non-trivial torus knot")
    strands, turns = sorted((abs(a), abs(b)))
    sign = 1 if a * b > 0 else -1
    return cable_braid(BraidWord(1, ()), sign * turns, strands)
