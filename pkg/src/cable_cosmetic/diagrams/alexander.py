"""Alexander polynomial from the Wirtinger presentation of a PD diagram."""

from __future__ import annotations

from ..laurent import LaurentPoly, normalize_alexander
from .codes import PDCode

__all__ = ["alexander_fox", "alexander_matrix", "laurent_det"]

_ZERO = LaurentPoly()
_ONE = LaurentPoly.constant(1)
_T = LaurentPoly.monomial(1)


def _wirtinger_generators(d: PDCode) -> dict[int, int]:
    """Map each arc label to its Wirtinger generator (over-arcs glued through)."""
    parent = {a: a for a in d.arcs()}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for _, b, _, dd in d.crossings:
        rb, rd = find(b), find(dd)
        if rb != rd:
            parent[rb] = rd
    roots = sorted({find(a) for a in parent})
    index = {r: i for i, r in enumerate(roots)}
    return {a: index[find(a)] for a in parent}


def alexander_matrix(d: PDCode) -> list[list[LaurentPoly]]:
    """Abelianized Fox Jacobian: one row per crossing relator.

    With x the incoming under generator, z the outgoing one and y the
    over generator, a positive crossing gives z = y x y^-1 and a negative
    one z = y^-1 x y. Rows are scaled by units so entries are polynomials.
    """
    gen = _wirtinger_generators(d)
    n = max(gen.values()) + 1
    rows = []
    for (a, b, c, _), sign in zip(d.crossings, d.signs):
        row = [_ZERO] * n
        x, y, z = gen[a], gen[b], gen[c]
        if sign > 0:
            entries = ((x, _T), (z, -_ONE), (y, _ONE - _T))
        else:
            entries = ((x, _ONE), (z, -_T), (y, _T - _ONE))
        for j, v in entries:
            row[j] = row[j] + v
        rows.append(row)
    return rows


def laurent_det(matrix: list[list[LaurentPoly]]) -> LaurentPoly:
    """Determinant by Bareiss fraction-free elimination (exact divisions)."""
    m = [list(r) for r in matrix]
    n = len(m)
    if n == 0:
        return _ONE
    sign = 1
    prev = _ONE
    for k in range(n - 1):
        if m[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if swap is None:
                return _ZERO
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            for j in range(k + 1, n):
                num = pivot * m[i][j] - mik * m[k][j]
                m[i][j] = num.exact_div(prev) if not num.is_zero() else num
            m[i][k] = _ZERO
        prev = pivot
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


def alexander_fox(d: PDCode) -> LaurentPoly:
    """Normalized Alexander polynomial: symmetric, value 1 at t = 1."""
    if d.num_crossings == 0:
        return _ONE
    mat = alexander_matrix(d)
    minor = [row[:-1] for row in mat[:-1]]
    return normalize_alexander(laurent_det(minor))
