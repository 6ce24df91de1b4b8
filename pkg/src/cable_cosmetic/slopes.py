"""Slopes on a torus: reduced fractions m/n with 1/0 as the meridian."""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd

from .errors import InvalidSlopeError

__all__ = [
    "Slope",
    "INFINITY",
    "slope_new",
    "slope_negate",
    "intersection_number",
    "parse_slope",
]


@dataclass(frozen=True, order=True)
class Slope:
    """A slope m/n in meridian/longitude coordinates.

    Always canonical: gcd(|m|, n) = 1, n >= 0, and infinity is exactly (1, 0).
    Build instances with :func:`slope_new` (or ``Slope.of``) unless the
    pair is already reduced.
    """

    m: int
    n: int

    def __post_init__(self):
        if self.n < 0 or gcd(self.m, self.n) != 1 or (self.n == 0 and self.m != 1):
            raise InvalidSlopeError(f"non-canonical slope ({self.m}, {self.n}); use slope_new")

    @classmethod
    def of(cls, m: int, n: int = 1) -> Slope:
        return slope_new(m, n)

    @property
    def is_infinite(self) -> bool:
        return self.n == 0

    @property
    def is_integral(self) -> bool:
        return self.n == 1

    def __neg__(self) -> Slope:
        return slope_negate(self)

    def __str__(self) -> str:
        return f"{self.m}/{self.n}"


def slope_new(m: int, n: int) -> Slope:
    m, n = int(m), int(n)
    if m == 0 and n == 0:
        raise InvalidSlopeError("(0, 0) is not a slope")
    g = gcd(m, n)
    m, n = m // g, n // g
    if n < 0 or (n == 0 and m < 0):
        m, n = -m, -n
    return Slope(m, n)


INFINITY = Slope(1, 0)


def slope_negate(r: Slope) -> Slope:
    if r.is_infinite:
        return r
    return Slope(-r.m, r.n)


def intersection_number(r: Slope, s: Slope) -> int:
    """Minimal geometric intersection number |m n' - m' n| of two slopes."""
    return abs(r.m * s.n - s.m * r.n)


_SLOPE_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*([+-]?\d+)\s*)?$")


def parse_slope(text: str) -> Slope:
    """Parse ``"m/n"``, ``"m"`` or ``"inf"`` (also ``"1/0"``)."""
    t = text.strip().lower()
    if t in ("inf", "infinity", "∞", "+inf", "-inf"):
        return INFINITY
    match = _SLOPE_RE.match(t)
    if match is None:
        raise InvalidSlopeError(f"cannot parse slope {text!r}")
    m = int(match.group(1))
    n = int(match.group(2)) if match.group(2) is not None else 1
    return slope_new(m, n)
