"""Sparse integer Laurent polynomials in one variable ``t``."""

from __future__ import annotations

from typing import Iterable, Mapping

from .errors import (
    InputError,
    InvalidSubstitutionError,
    NotAnAlexanderPolynomialError,
)

__all__ = ["LaurentPoly", "normalize_alexander"]


class LaurentPoly:
    """An element of Z[t, t^-1], stored as ``{exponent: coefficient}``.

    Zero coefficients are never stored, so the zero polynomial is the
    empty map. Instances are immutable and hashable.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        c: dict[int, int] = {}
        for e, a in items:
            if a:
                e = int(e)
                v = c.get(e, 0) + int(a)
                if v:
                    c[e] = v
                else:
                    c.pop(e, None)
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, c: dict[int, int]) -> LaurentPoly:
        obj = cls.__new__(cls)
        obj._c = c
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, a: int) -> LaurentPoly:
        return cls({0: a})

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> LaurentPoly:
        return cls({exponent: coeff})

    # -- inspection -------------------------------------------------------

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._c)

    def terms(self) -> list[tuple[int, int]]:
        """(exponent, coefficient) pairs, descending exponent."""
        return sorted(self._c.items(), reverse=True)

    def is_zero(self) -> bool:
        return not self._c

    def max_exp(self) -> int:
        return max(self._c)

    def min_exp(self) -> int:
        return min(self._c)

    def coefficient(self, e: int) -> int:
        return self._c.get(e, 0)

    def __bool__(self) -> bool:
        return bool(self._c)

    def __len__(self) -> int:
        return len(self._c)

    # -- ring structure ---------------------------------------------------

    @staticmethod
    def _coerce(other) -> LaurentPoly | None:
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        c = dict(self._c)
        for e, a in other._c.items():
            v = c.get(e, 0) + a
            if v:
                c[e] = v
            else:
                del c[e]
        return LaurentPoly._raw(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -a for e, a in self._c.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        c: dict[int, int] = {}
        for e1, a1 in self._c.items():
            for e2, a2 in other._c.items():
                e = e1 + e2
                c[e] = c.get(e, 0) + a1 * a2
        return LaurentPoly._raw({e: a for e, a in c.items() if a})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self._c) == 1:
                ((e, a),) = self._c.items()
                if a in (1, -1):
                    return LaurentPoly({e * k: a ** (-k)})
            raise InputError("only units can be raised to negative powers")
        result = LaurentPoly.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by t^k."""
        return LaurentPoly._raw({e + k: a for e, a in self._c.items()})

    def exact_div(self, other: LaurentPoly) -> LaurentPoly:
        """Quotient ``self / other`` when it exists in Z[t, t^-1].

        Raises :class:`InputError` if ``other`` does not divide ``self``.
        """
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return self
        g_top, g_bot = other.max_exp(), other.min_exp()
        lead = other._c[g_top]
        rem = dict(self._c)
        floor = self.min_exp() - g_bot
        quot: dict[int, int] = {}
        while rem:
            top = max(rem)
            e = top - g_top
            a, r = divmod(rem[top], lead)
            if r or e < floor:
                raise InputError("polynomial division is not exact")
            quot[e] = a
            for ge, gc in other._c.items():
                k = ge + e
                v = rem.get(k, 0) - a * gc
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return LaurentPoly._raw(quot)

    # -- comparison -------------------------------------------------------

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    # -- calculus and substitution ---------------------------------------

    def substitute_power(self, q: int) -> LaurentPoly:
        """Return f(t^q)."""
        if q == 0:
            raise InvalidSubstitutionError("t -> t^0 is not a substitution")
        return LaurentPoly._raw({e * q: a for e, a in self._c.items()})

    def mirror(self) -> LaurentPoly:
        """f(t^-1)."""
        return self.substitute_power(-1)

    def derivative(self, order: int = 1) -> LaurentPoly:
        c = self._c
        for _ in range(order):
            c = {e - 1: e * a for e, a in c.items() if e != 0}
        return LaurentPoly._raw(c)

    def eval_at_one(self) -> int:
        return sum(self._c.values())

    def derivative_at_one(self, order: int) -> int:
        """f^(order)(1), via falling factorials on the exponents."""
        total = 0
        for e, a in self._c.items():
            ff = 1
            for i in range(order):
                ff *= e - i
            total += a * ff
        return total

    def is_symmetric(self) -> bool:
        return all(self._c.get(-e) == a for e, a in self._c.items())

    # -- text -------------------------------------------------------------

    def __str__(self) -> str:
        if not self._c:
            return "0"
        out = []
        for i, (e, a) in enumerate(self.terms()):
            sign = "-" if a < 0 else "+"
            mag = abs(a)
            if e == 0:
                body = str(mag)
            elif mag == 1:
                body = f"t^{e}"
            else:
                body = f"{mag}*t^{e}"
            if i == 0:
                out.append(body if sign == "+" else "-" + body)
            else:
                out.append(f"{sign} {body}")
        return " ".join(out)

    def __repr__(self) -> str:
        return f"LaurentPoly({str(self)!r})"


T = LaurentPoly.monomial(1)
ONE = LaurentPoly.constant(1)


def normalize_alexander(f: LaurentPoly) -> LaurentPoly:
    """Return the unique ``±t^k * f`` that is symmetric with value 1 at t = 1."""
    if f.is_zero():
        raise NotAnAlexanderPolynomialError("zero is not an Alexander polynomial")
    span = f.max_exp() + f.min_exp()
    if span % 2:
        raise NotAnAlexanderPolynomialError(f"{f} has an even number of terms in its span")
    value = f.eval_at_one()
    if value not in (1, -1):
        raise NotAnAlexanderPolynomialError(f"{f} evaluates to {value} at t = 1")
    g = f.shift(-span // 2)
    if value == -1:
        g = -g
    if not g.is_symmetric():
        raise NotAnAlexanderPolynomialError(f"{f} is not symmetric up to a unit")
    return g
