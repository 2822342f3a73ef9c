"""Outward-rounded real interval arithmetic.

Python gives no portable control over the FPU rounding mode, so every
endpoint is computed in round-to-nearest and then moved one ulp outward
*only when the operation was inexact*.  Exactness is detected with the
classical error-free transformations (Knuth's TwoSum, Dekker's TwoProduct),
so results such as ``[1, 2] + [3, 4] == [4, 6]`` stay tight while inexact
results are guaranteed to enclose the real-arithmetic image.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

from hankelcert.errors import EmptyDomain

__all__ = [
    "Interval",
    "Box",
    "add",
    "sub",
    "mul",
    "pow_int",
    "sqrt_clamped",
    "recip",
    "enclose",
]

_INF = math.inf
_SPLITTER = 134217729.0  # 2**27 + 1
_TINY = 2.0 ** -960  # below this Dekker splitting may underflow

Number = Union[int, float, Fraction]


def _down(x: float) -> float:
    return math.nextafter(x, -_INF)


def _up(x: float) -> float:
    return math.nextafter(x, _INF)


def _sum_err(a: float, b: float, s: float) -> float:
    bb = s - a
    return (a - (s - bb)) + (b - bb)


def _split(a: float):
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def _prod_err(a: float, b: float, p: float) -> float:
    ahi, alo = _split(a)
    bhi, blo = _split(b)
    return ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo


def _add_bounds(a: float, b: float):
    s = a + b
    if not math.isfinite(s):
        return s, s
    e = _sum_err(a, b, s)
    if e > 0:
        return s, _up(s)
    if e < 0:
        return _down(s), s
    return s, s


def _mul_bounds(a: float, b: float):
    p = a * b
    if a == 0.0 or b == 0.0:
        # 0 * inf is taken as 0 when forming endpoints
        return 0.0, 0.0
    if not math.isfinite(p):
        return p, p
    ap = abs(p)
    if ap < _TINY or ap > 1e300:
        # the exact sign is known, so an underflow never crosses zero
        if (a > 0.0) == (b > 0.0):
            return max(_down(p), 0.0), _up(p)
        return _down(p), min(_up(p), -0.0)
    e = _prod_err(a, b, p)
    if e > 0:
        return p, _up(p)
    if e < 0:
        return _down(p), p
    return p, p


def _sqrt_bounds(x: float):
    if x == 0.0 or x == _INF:
        return x, x
    s = math.sqrt(x)
    if x < _TINY:
        return _down(s), _up(s)
    p = s * s
    d = (p - x) + _prod_err(s, s, p)
    if d > 0:
        return _down(s), s
    if d < 0:
        return s, _up(s)
    return s, s


def _recip_bounds(x: float):
    q = 1.0 / x
    if x < _TINY or x > 1e300:
        return _down(q), _up(q)
    p = x * q
    r = (1.0 - p) - _prod_err(x, q, p)
    if r > 0:
        return q, _up(q)
    if r < 0:
        return _down(q), q
    return q, q


def _float_bounds(q: Number):
    """Tightest float interval around an exact rational or int."""
    if isinstance(q, float):
        return q, q
    f = float(q)
    exact = Fraction(f)
    q = Fraction(q)
    if exact < q:
        return f, _up(f)
    if exact > q:
        return _down(f), f
    return f, f


class Interval:
    """Closed real interval ``[lo, hi]`` with outward-rounded arithmetic.

    Instances are immutable by convention.  Scalars mixed into arithmetic are
    converted exactly (floats are taken at face value, ints and fractions are
    enclosed).
    """

    __slots__ = ("lo", "hi")

    def __init__(self, lo: Number, hi: Number | None = None):
        if hi is None:
            lo, hi = _float_bounds(lo)
        else:
            lo = _float_bounds(lo)[0]
            hi = _float_bounds(hi)[1]
        if math.isnan(lo) or math.isnan(hi):
            raise ValueError("interval endpoint is NaN")
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def _raw(cls, lo: float, hi: float) -> "Interval":
        iv = object.__new__(cls)
        object.__setattr__(iv, "lo", lo)
        object.__setattr__(iv, "hi", hi)
        return iv

    def __setattr__(self, name, value):
        raise AttributeError("Interval is immutable")

    def __repr__(self) -> str:
        return f"Interval({self.lo!r}, {self.hi!r})"

    def __eq__(self, other) -> bool:
        if isinstance(other, Interval):
            return self.lo == other.lo and self.hi == other.hi
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.lo, self.hi))

    def __reduce__(self):
        return (Interval, (self.lo, self.hi))

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def contains(self, x) -> bool:
        if isinstance(x, Interval):
            return self.lo <= x.lo and x.hi <= self.hi
        return self.lo <= x <= self.hi

    __contains__ = contains

    def is_point(self) -> bool:
        return self.lo == self.hi

    def intersect(self, other: "Interval") -> "Interval":
        lo = max(self.lo, other.lo)
        hi = min(self.hi, other.hi)
        if lo > hi:
            raise EmptyDomain(f"{self!r} and {other!r} are disjoint")
        return Interval._raw(lo, hi)

    def hull(self, other: "Interval") -> "Interval":
        return Interval._raw(min(self.lo, other.lo), max(self.hi, other.hi))

    def __add__(self, other):
        return add(self, _coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return sub(self, _coerce(other))

    def __rsub__(self, other):
        return sub(_coerce(other), self)

    def __neg__(self):
        return Interval._raw(-self.hi, -self.lo)

    def __mul__(self, other):
        return mul(self, _coerce(other))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        return pow_int(self, n)

    def sqrt(self) -> "Interval":
        return sqrt_clamped(self)

    def recip(self) -> "Interval":
        return recip(self)


def _coerce(x) -> Interval:
    if isinstance(x, Interval):
        return x
    return Interval(x)


def enclose(q: Number) -> Interval:
    """Smallest float interval containing the exact value ``q``."""
    return Interval._raw(*_float_bounds(q))


def add(a: Interval, b: Interval) -> Interval:
    lo = _add_bounds(a.lo, b.lo)[0]
    hi = _add_bounds(a.hi, b.hi)[1]
    return Interval._raw(lo, hi)


def sub(a: Interval, b: Interval) -> Interval:
    lo = _add_bounds(a.lo, -b.hi)[0]
    hi = _add_bounds(a.hi, -b.lo)[1]
    return Interval._raw(lo, hi)


def mul(a: Interval, b: Interval) -> Interval:
    al, ah, bl, bh = a.lo, a.hi, b.lo, b.hi
    if al >= 0.0 and bl >= 0.0:
        return Interval._raw(_mul_bounds(al, bl)[0], _mul_bounds(ah, bh)[1])
    cands = [(al, bl), (al, bh), (ah, bl), (ah, bh)]
    lo = min(_mul_bounds(x, y)[0] for x, y in cands)
    hi = max(_mul_bounds(x, y)[1] for x, y in cands)
    return Interval._raw(lo, hi)


def _pow_nonneg(lo: float, hi: float, n: int) -> Interval:
    plo = Interval._raw(lo, lo)
    phi = Interval._raw(hi, hi)
    rlo, rhi = Interval._raw(1.0, 1.0), Interval._raw(1.0, 1.0)
    for _ in range(n):
        rlo = mul(rlo, plo)
        rhi = mul(rhi, phi)
    return Interval._raw(rlo.lo, rhi.hi)


def pow_int(a: Interval, n: int) -> Interval:
    """Tight enclosure of ``{x**n : x in a}`` for a natural ``n``."""
    if n < 0:
        raise ValueError("pow_int needs n >= 0")
    if n == 0:
        return Interval._raw(1.0, 1.0)
    if n == 1:
        return a
    if n % 2 == 1:
        if a.lo >= 0.0:
            return _pow_nonneg(a.lo, a.hi, n)
        if a.hi <= 0.0:
            return -_pow_nonneg(-a.hi, -a.lo, n)
        neg = _pow_nonneg(0.0, -a.lo, n)
        pos = _pow_nonneg(0.0, a.hi, n)
        return Interval._raw(-neg.hi, pos.hi)
    if a.lo >= 0.0:
        return _pow_nonneg(a.lo, a.hi, n)
    if a.hi <= 0.0:
        return _pow_nonneg(-a.hi, -a.lo, n)
    return _pow_nonneg(0.0, max(-a.lo, a.hi), n)


def sqrt_clamped(a: Interval) -> Interval:
    """Square root of ``a`` intersected with ``[0, inf)``.

    Raises EmptyDomain when the whole interval is negative.
    """
    if a.hi < 0.0:
        raise EmptyDomain(f"sqrt of negative interval {a!r}")
    lo = _sqrt_bounds(a.lo)[0] if a.lo > 0.0 else 0.0
    hi = _sqrt_bounds(a.hi)[1]
    return Interval._raw(lo, hi)


def recip(a: Interval) -> Interval:
    """``1/a`` for a nonnegative interval; a zero lower end maps to +inf."""
    if a.lo < 0.0 or a.hi == 0.0:
        raise ValueError(f"recip needs a positive interval, got {a!r}")
    lo = _recip_bounds(a.hi)[0] if a.hi != _INF else 0.0
    hi = _recip_bounds(a.lo)[1] if a.lo > 0.0 else _INF
    return Interval._raw(lo, hi)


class Box:
    """Axis-aligned rectangle ``x × y`` of intervals."""

    __slots__ = ("x", "y")

    def __init__(self, x: Interval, y: Interval):
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    def __setattr__(self, name, value):
        raise AttributeError("Box is immutable")

    def __repr__(self) -> str:
        return f"Box(x={self.x!r}, y={self.y!r})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Box) and self.x == other.x and self.y == other.y

    def __hash__(self) -> int:
        return hash((self.x, self.y))

    def __reduce__(self):
        return (Box, (self.x, self.y))

    @classmethod
    def from_bounds(cls, xlo, xhi, ylo, yhi) -> "Box":
        return cls(Interval(xlo, xhi), Interval(ylo, yhi))

    @property
    def key(self):
        """Lexicographic ordering key used for deterministic tie-breaking."""
        return (self.x.lo, self.y.lo, self.x.hi, self.y.hi)

    @property
    def mid(self):
        return self.x.mid, self.y.mid

    def bisect(self):
        """Split the wider side at its midpoint; ties split x."""
        if self.x.width >= self.y.width:
            m = self.x.mid
            return (
                Box(Interval._raw(self.x.lo, m), self.y),
                Box(Interval._raw(m, self.x.hi), self.y),
            )
        m = self.y.mid
        return (
            Box(self.x, Interval._raw(self.y.lo, m)),
            Box(self.x, Interval._raw(m, self.y.hi)),
        )
