"""Exact real-root isolation with Sturm sequences over the rationals."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from hankelcert.errors import NotSquareFree

__all__ = ["Polynomial", "RootInterval", "isolate_roots", "BOUNDARY_OCTIC"]


class Polynomial:
    """Univariate polynomial with exact rational coefficients, ascending degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1]

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        return f"Polynomial({[str(c) for c in self.coeffs]})"

    def derivative(self) -> "Polynomial":
        return Polynomial([k * c for k, c in enumerate(self.coeffs)][1:])

    def __neg__(self) -> "Polynomial":
        return Polynomial([-c for c in self.coeffs])

    def divmod(self, other: "Polynomial"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        quot = [Fraction(0)] * max(len(rem) - len(other.coeffs) + 1, 0)
        lead = other.leading
        dq = other.degree
        while len(rem) - 1 >= dq and any(rem):
            shift = len(rem) - 1 - dq
            factor = rem[-1] / lead
            quot[shift] = factor
            for i, c in enumerate(other.coeffs):
                rem[i + shift] -= factor * c
            rem.pop()
            while rem and rem[-1] == 0:
                rem.pop()
        return Polynomial(quot), Polynomial(rem)

    def __mod__(self, other: "Polynomial") -> "Polynomial":
        return self.divmod(other)[1]

    def monic(self) -> "Polynomial":
        return Polynomial([c / self.leading for c in self.coeffs])

    def gcd(self, other: "Polynomial") -> "Polynomial":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic() if not a.is_zero() else a

    def is_square_free(self) -> bool:
        return self.gcd(self.derivative()).degree <= 0

    def sturm_sequence(self) -> list:
        seq = [self, self.derivative()]
        while not seq[-1].is_zero():
            seq.append(-(seq[-2] % seq[-1]))
        return seq[:-1]


@dataclass(frozen=True)
class RootInterval:
    """Open interval ``(lo, hi)`` holding exactly one root."""

    lo: Fraction
    hi: Fraction
    sign_change: bool

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo


def _variations(seq, x) -> int:
    count, last = 0, 0
    for p in seq:
        v = p(x)
        if v == 0:
            continue
        s = 1 if v > 0 else -1
        if last and s != last:
            count += 1
        last = s
    return count


def _count_open(seq, lo, hi) -> int:
    """Number of distinct roots in the open interval ``(lo, hi)``."""
    n = _variations(seq, lo) - _variations(seq, hi)
    if seq[0](hi) == 0:
        n -= 1
    return n


def _split_point(p: Polynomial, lo: Fraction, hi: Fraction) -> Fraction:
    m = (lo + hi) / 2
    k = 3
    while p(m) == 0:
        m = lo + (hi - lo) * Fraction(k - 1, 2 * k - 1)
        k += 1
    return m


def isolate_roots(p, a, b, width: float = 1e-12) -> list:
    """Isolating intervals for the real roots of ``p`` in ``(a, b)``.

    Every returned interval has rational endpoints, width below ``width`` and
    contains exactly one root.  Only ``a`` or ``b`` themselves can be roots of
    ``p``; every split point is chosen off the roots.  Raises NotSquareFree when
    ``p`` has a repeated factor.
    """
    if not isinstance(p, Polynomial):
        p = Polynomial(p)
    a, b = Fraction(a), Fraction(b)
    if a >= b:
        raise ValueError("need a < b")
    if p.degree < 1:
        return []
    if not p.is_square_free():
        raise NotSquareFree(f"{p!r} shares a factor with its derivative")
    seq = p.sturm_sequence()
    w = Fraction(width)
    out = []
    stack = [(a, b, _count_open(seq, a, b))]
    while stack:
        lo, hi, n = stack.pop()
        if n == 0:
            continue
        if n == 1 and hi - lo < w:
            out.append(RootInterval(lo, hi, p(lo) * p(hi) < 0))
            continue
        m = _split_point(p, lo, hi)
        left = _count_open(seq, lo, m)
        # push right first so roots come out in increasing order
        stack.append((m, hi, n - left))
        stack.append((lo, m, left))
    return out


# boundary stationarity polynomial of F1 on y = 0: 5x^8 - 5x^6 + 4x^4 - 4x^2 + 1
BOUNDARY_OCTIC = Polynomial([1, 0, -4, 0, 4, 0, -5, 0, 5])
