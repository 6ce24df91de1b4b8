from math import gcd

import pytest
from hypothesis import given, strategies as st

from cable_cosmetic.errors import InvalidSlopeError
from cable_cosmetic.slopes import INFINITY, Slope, intersection_number, parse_slope, slope_negate, slope_new

ints = st.integers(-60, 60)


@given(ints, ints)
def test_slope_new_is_canonical(m, n):
    if m == 0 and n == 0:
        with pytest.raises(InvalidSlopeError):
            slope_new(m, n)
        return
    s = slope_new(m, n)
    assert s.n >= 0
    assert gcd(s.m, s.n) == 1
    if n == 0:
        assert s == INFINITY
    else:
        assert s.m * n == m * s.n


def test_sign_moves_to_numerator():
    assert slope_new(3, -6) == Slope(-1, 2)
    assert slope_new(-4, 0) == INFINITY


def test_non_canonical_constructor_rejected():
    for m, n in [(2, 4), (1, -2), (3, 0), (0, 2)]:
        with pytest.raises(InvalidSlopeError):
            Slope(m, n)


@given(ints, st.integers(1, 60))
def test_negate_is_involution(m, n):
    s = slope_new(m, n) if (m, n) != (0, 0) else INFINITY
    assert slope_negate(slope_negate(s)) == s


def test_negate_fixes_zero_and_infinity():
    assert -Slope.of(0) == Slope.of(0)
    assert -INFINITY == INFINITY


@given(ints, st.integers(1, 60), ints, st.integers(1, 60))
def test_intersection_number_symmetric(a, b, c, d):
    r, s = slope_new(a or 1, b), slope_new(c or 1, d)
    assert intersection_number(r, s) == intersection_number(s, r)
    assert intersection_number(r, r) == 0


@pytest.mark.parametrize("p,q", [(3, 2), (-5, 3), (1, 7), (0, 1), (7, -4)])
def test_intersection_with_meridian_is_denominator(p, q):
    assert intersection_number(INFINITY, slope_new(p, q)) == abs(q)


@pytest.mark.parametrize(
    "text,expected",
    [("5/2", Slope(5, 2)), ("-9", Slope(-9, 1)), (" 4/-6 ", Slope(-2, 3)), ("inf", INFINITY), ("1/0", INFINITY), ("∞", INFINITY)],
)
def test_parse_slope(text, expected):
    assert parse_slope(text) == expected


@pytest.mark.parametrize("text", ["", "a/b", "1/2/3", "0/0", "1.5"])
def test_parse_slope_rejects(text):
    with pytest.raises(InvalidSlopeError):
        parse_slope(text)


def test_str_round_trip():
    for s in [Slope(-13, 2), INFINITY, Slope(0, 1)]:
        assert parse_slope(str(s)) == s
