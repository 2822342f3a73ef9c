import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hankelcert.errors import EmptyDomain
from hankelcert.interval import Box, Interval, add, enclose, mul, pow_int, recip, sqrt_clamped, sub

finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False, allow_infinity=False)
positive = st.floats(min_value=1e-6, max_value=1e6, allow_nan=False, allow_infinity=False)


@st.composite
def intervals(draw, elements=finite):
    a, b = draw(elements), draw(elements)
    return Interval(min(a, b), max(a, b))


def exact(iv):
    return Fraction(iv.lo), Fraction(iv.hi)


def test_add_examples():
    assert add(Interval(1, 2), Interval(3, 4)) == Interval(4, 6)
    assert add(Interval(0, 0), Interval(-0.25, 7.5)) == Interval(-0.25, 7.5)
    assert add(Interval(-1, 1), Interval(-1, 1)) == Interval(-2, 2)


def test_mul_examples():
    assert mul(Interval(-1, 2), Interval(3, 4)) == Interval(-4, 8)
    assert mul(Interval(0, 0), Interval(-3.5, 9)) == Interval(0, 0)
    assert mul(Interval(2, 3), Interval(2, 3)) == Interval(4, 9)


def test_sqrt_examples():
    assert sqrt_clamped(Interval(-0.1, 0.25)) == Interval(0, 0.5)
    assert sqrt_clamped(Interval(0, 1)) == Interval(0, 1)
    assert sqrt_clamped(Interval(4, 9)) == Interval(2, 3)
    with pytest.raises(EmptyDomain):
        sqrt_clamped(Interval(-2, -1))


def test_pow_examples():
    assert pow_int(Interval(-1, 2), 2) == Interval(0, 4)
    assert pow_int(Interval(-2, 1), 3) == Interval(-8, 1)
    assert pow_int(Interval(0.3, 0.3), 0) == Interval(1, 1)


def test_inexact_results_are_widened():
    third = enclose(Fraction(1, 3))
    assert third.lo < third.hi
    assert Fraction(third.lo) < Fraction(1, 3) < Fraction(third.hi)
    s = add(Interval(0.1), Interval(0.2))
    assert Fraction(s.lo) <= Fraction(0.1) + Fraction(0.2) <= Fraction(s.hi)
    r = sqrt_clamped(Interval(2.0))
    assert Fraction(r.lo) ** 2 < 2 < Fraction(r.hi) ** 2


def test_recip():
    assert recip(Interval(2, 4)) == Interval(0.25, 0.5)
    r = recip(Interval(0, 2))
    assert r.lo == 0.5 and r.hi == math.inf
    with pytest.raises(ValueError):
        recip(Interval(-1, 1))


def test_box_bisect_splits_wider_side_ties_x():
    left, right = Box.from_bounds(0, 1, 0, 1).bisect()
    assert left.x == Interval(0, 0.5) and right.x == Interval(0.5, 1)
    low, high = Box.from_bounds(0, 1, 0, 4).bisect()
    assert low.y == Interval(0, 2) and high.y == Interval(2, 4)


def test_immutable():
    iv = Interval(0, 1)
    with pytest.raises(AttributeError):
        iv.lo = 3


@given(intervals(), intervals())
def test_add_sub_mul_enclose_exact_result(a, b):
    alo, ahi = exact(a)
    blo, bhi = exact(b)
    s, d, p = exact(add(a, b)), exact(sub(a, b)), exact(mul(a, b))
    assert s[0] <= alo + blo and ahi + bhi <= s[1]
    assert d[0] <= alo - bhi and ahi - blo <= d[1]
    for x in (alo, ahi):
        for y in (blo, bhi):
            assert p[0] <= x * y <= p[1]


@given(intervals(st.floats(min_value=-50, max_value=50, allow_nan=False)), st.integers(min_value=0, max_value=6))
def test_pow_encloses_exact_powers(a, n):
    lo, hi = exact(pow_int(a, n))
    alo, ahi = exact(a)
    for k in range(11):
        x = alo + (ahi - alo) * Fraction(k, 10)
        assert lo <= x**n <= hi


@given(st.floats(min_value=0, max_value=1e6, allow_nan=False))
def test_sqrt_outward(x):
    r = sqrt_clamped(Interval(x))
    assert Fraction(r.lo) ** 2 <= Fraction(x) <= Fraction(r.hi) ** 2


@given(positive)
def test_recip_outward(x):
    r = recip(Interval(x))
    assert Fraction(r.lo) * Fraction(x) <= 1 <= Fraction(r.hi) * Fraction(x)


@given(st.fractions(min_value=-1000, max_value=1000, max_denominator=10**9))
def test_enclose_rational(q):
    iv = enclose(q)
    assert Fraction(iv.lo) <= q <= Fraction(iv.hi)


@settings(max_examples=200)
@given(intervals(), intervals(), st.floats(0, 1), st.floats(0, 1), st.floats(0, 1), st.floats(0, 1))
def test_inclusion_monotonicity(a, b, s1, s2, s3, s4):
    def shrink(iv, u, v):
        lo = iv.lo + (iv.hi - iv.lo) * min(u, v)
        hi = iv.lo + (iv.hi - iv.lo) * max(u, v)
        lo, hi = max(lo, iv.lo), min(hi, iv.hi)
        return Interval(min(lo, hi), max(lo, hi))

    a2, b2 = shrink(a, s1, s2), shrink(b, s3, s4)
    for op in (add, sub, mul):
        assert op(a, b).contains(op(a2, b2))
    assert pow_int(a, 2).contains(pow_int(a2, 2))
    assert pow_int(a, 3).contains(pow_int(a2, 3))
    if a.hi >= 0 and a2.hi >= 0:
        assert sqrt_clamped(a).contains(sqrt_clamped(a2))


@given(finite, finite)
def test_point_consistency(x, y):
    X, Y = Interval(x), Interval(y)
    assert (X + Y).contains(x + y)
    assert (X - Y).contains(x - y)
    assert (X * Y).contains(x * y)
    assert pow_int(X, 2).contains(x * x)
    if x >= 0:
        assert sqrt_clamped(X).contains(math.sqrt(x))


def test_underflow_keeps_known_sign():
    tiny = Interval(-5.0272898622948936e-123)
    assert pow_int(tiny, 3).hi <= 0.0
    assert pow_int(Interval(-5.0272898622948936e-123, 0.0), 3).contains(pow_int(tiny, 3))
    assert mul(Interval(1e-200), Interval(1e-200)).lo >= 0.0
