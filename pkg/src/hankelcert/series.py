"""Truncated formal power series in one and two variables.

Coefficients may be exact (``int``/``Fraction``) or floating (``float``/
``complex``); every routine uses only ring operations plus division by
small integers, so the exact mode stays exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from hankelcert.errors import BadLeadingTerm
from hankelcert.grunsky import GrunskyTable

__all__ = [
    "Series1",
    "Series2",
    "mul1",
    "sqrt_normalized",
    "odd_transform",
    "grunsky_from_series",
]


def _div_int(value, n: int):
    if isinstance(value, (int, Fraction)):
        return Fraction(value) / n
    return value / n


def _is_zero(value) -> bool:
    return value == 0


class Series1:
    """Univariate series ``c_0 + c_1 z + ... + c_N z^N + O(z^{N+1})``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence, order: int | None = None):
        coeffs = list(coeffs)
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError("series order must be >= 0")
        coeffs = coeffs[: order + 1] + [0] * (order + 1 - len(coeffs))
        self.coeffs = tuple(coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int):
        if n < 0:
            raise IndexError(n)
        if n > self.order:
            raise IndexError(f"coefficient z^{n} is beyond truncation order {self.order}")
        return self.coeffs[n]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Series1):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __repr__(self) -> str:
        return f"Series1({list(self.coeffs)!r}, order={self.order})"

    def __add__(self, other: "Series1") -> "Series1":
        n = min(self.order, other.order)
        return Series1([self.coeffs[k] + other.coeffs[k] for k in range(n + 1)])

    def __sub__(self, other: "Series1") -> "Series1":
        n = min(self.order, other.order)
        return Series1([self.coeffs[k] - other.coeffs[k] for k in range(n + 1)])

    def __mul__(self, other):
        if isinstance(other, Series1):
            return mul1(self, other)
        return Series1([c * other for c in self.coeffs])

    __rmul__ = __mul__

    def substitute_power(self, k: int) -> "Series1":
        """Return ``f(z**k)``.

        The result is known through degree ``k*(N+1) - 1`` because the next
        unknown term of ``f`` lands at ``z**(k*(N+1))``.
        """
        out = [0] * (k * (self.order + 1))
        for n, c in enumerate(self.coeffs):
            out[k * n] = c
        return Series1(out)

    def is_normalized(self) -> bool:
        return self.order >= 1 and self.coeffs[0] == 0 and self.coeffs[1] == 1

    def taylor(self, n: int):
        """Coefficient ``a_n``; zero-order functions read as exact zeros."""
        return self[n]


def mul1(a: Series1, b: Series1) -> Series1:
    """Cauchy product truncated at the smaller of the two orders."""
    n = min(a.order, b.order)
    ac, bc = a.coeffs, b.coeffs
    out = []
    for k in range(n + 1):
        s = 0
        for i in range(k + 1):
            if not _is_zero(ac[i]) and not _is_zero(bc[k - i]):
                s = s + ac[i] * bc[k - i]
        out.append(s)
    return Series1(out)


def _sqrt_unit(h: Sequence) -> list:
    """Coefficients of ``sqrt(h)`` for a series with ``h[0] == 1``."""
    s = [1]
    for n in range(1, len(h)):
        acc = h[n]
        for k in range(1, n):
            if not _is_zero(s[k]) and not _is_zero(s[n - k]):
                acc = acc - s[k] * s[n - k]
        s.append(_div_int(acc, 2))
    return s


def sqrt_normalized(a: Series1) -> Series1:
    """Square root of a series of the form ``z**2 (1 + ...)``.

    Returns the branch with leading term ``z``.  The inner unit series is
    rooted with the recurrence ``2 s_n = h_n - sum_{0<k<n} s_k s_{n-k}``.
    """
    if a.order < 2:
        raise BadLeadingTerm("need at least the z^2 coefficient")
    if not (_is_zero(a.coeffs[0]) and _is_zero(a.coeffs[1])):
        raise BadLeadingTerm("series must start at z^2")
    if a.coeffs[2] != 1:
        raise BadLeadingTerm(f"inner constant term is {a.coeffs[2]!r}, expected 1")
    root = _sqrt_unit(a.coeffs[2:])
    return Series1([0] + root)


def odd_transform(f: Series1) -> Series1:
    """``f2(z) = sqrt(f(z**2))`` for a normalized ``f`` of order ``N``.

    The result has order ``2N``: its ``z**(2N+1)`` coefficient would need
    ``a_{N+1}``.  Only odd powers are nonzero.
    """
    if not f.is_normalized():
        raise BadLeadingTerm("odd transform needs f(0) = 0 and f'(0) = 1")
    return sqrt_normalized(f.substitute_power(2))


class Series2:
    """Bivariate series ``sum d[p][q] t^p z^q`` truncated per variable at N."""

    __slots__ = ("coeffs", "known_degree")

    def __init__(self, coeffs: Sequence[Sequence], known_degree: int | None = None):
        self.coeffs = [list(row) for row in coeffs]
        n = len(self.coeffs) - 1
        if any(len(row) != n + 1 for row in self.coeffs):
            raise ValueError("Series2 coefficients must form a square table")
        # entries with p + q > known_degree are not determined by the input
        self.known_degree = 2 * n if known_degree is None else known_degree

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, pq):
        p, q = pq
        return self.coeffs[p][q]

    def is_symmetric(self, rel_tol: float = 0.0) -> bool:
        n = self.order
        for p in range(n + 1):
            for q in range(p + 1, n + 1):
                if p + q > self.known_degree:
                    continue
                a, b = self.coeffs[p][q], self.coeffs[q][p]
                if rel_tol == 0.0:
                    if a != b:
                        return False
                elif abs(a - b) > rel_tol * max(abs(a), abs(b), 1.0):
                    return False
        return True

    @classmethod
    def divided_difference(cls, f: Series1, n: int) -> "Series2":
        """``(f(t) - f(z)) / (t - z)`` truncated per variable at ``n``.

        The coefficient of ``a_k`` spreads over the complete homogeneous
        polynomial ``h_{k-1}(t, z)``, so ``d[i][j] = a_{i+j+1}``.
        """
        m = f.order
        zero = 0
        rows = []
        for i in range(n + 1):
            rows.append([f.coeffs[i + j + 1] if i + j + 1 <= m else zero for j in range(n + 1)])
        return cls(rows, known_degree=min(2 * n, m - 1))

    def log(self) -> "Series2":
        """``log`` of a series with unit constant term.

        Uses ``D * dL/dt = dD/dt`` column by column; the ``p = 0`` row is the
        univariate logarithm of ``D(0, z)``.  Only entries with
        ``p + q <= known_degree`` are computed; the rest are left as zero.
        """
        d = self.coeffs
        if d[0][0] != 1:
            raise BadLeadingTerm("log needs a unit constant term")
        n = self.order
        top = self.known_degree
        zero = 0
        out = [[zero] * (n + 1) for _ in range(n + 1)]
        for q in range(1, min(n, top) + 1):
            acc = q * d[0][q]
            for j in range(1, q):
                if not _is_zero(out[0][j]) and not _is_zero(d[0][q - j]):
                    acc = acc - j * out[0][j] * d[0][q - j]
            out[0][q] = _div_int(acc, q)
        for p in range(1, n + 1):
            for q in range(0, n + 1):
                if p + q > top:
                    break
                acc = p * d[p][q]
                for i in range(1, p + 1):
                    for j in range(0, q + 1):
                        if i == p and j == q:
                            continue
                        lij = out[i][j]
                        dij = d[p - i][q - j]
                        if _is_zero(lij) or _is_zero(dij):
                            continue
                        acc = acc - i * lij * dij
                out[p][q] = _div_int(acc, p)
        return Series2(out, known_degree=top)


def grunsky_from_series(f: Series1, n: int | None = None) -> GrunskyTable:
    """Grunsky coefficients of a normalized ``f``.

    Expands ``log((f(t) - f(z)) / (t - z))`` and returns every coefficient
    ``omega[p, q]`` with ``p, q <= n`` that the truncation of ``f`` fixes,
    i.e. those with ``p + q + 1 <= f.order``.  ``n`` defaults to
    ``f.order - 1``.
    """
    if not f.is_normalized():
        raise BadLeadingTerm("Grunsky coefficients need f(0) = 0 and f'(0) = 1")
    if n is None:
        n = f.order - 1
    if n > f.order:
        raise ValueError(f"table size {n} exceeds series order {f.order}")
    logd = Series2.divided_difference(f, n).log()
    entries = {}
    for p in range(n + 1):
        for q in range(n + 1):
            if p + q <= logd.known_degree:
                entries[(p, q)] = logd.coeffs[p][q]
    return GrunskyTable(entries, max_index=n)
