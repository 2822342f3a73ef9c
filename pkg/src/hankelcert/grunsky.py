"""Grunsky tables of odd functions and the coefficient identities built on them.

All index pairs below refer to the table of the odd transform ``f2`` of a
normalized ``f``; ``omega[1, 3]`` is the coefficient of ``t z^3`` in
``log((f2(t) - f2(z)) / (t - z))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from hankelcert.errors import AsymmetricTable, MissingIndex, NegativeRadicand

__all__ = [
    "GrunskyTable",
    "CoefficientVector",
    "TestVector",
    "CascadeReport",
    "coefficients_from_table",
    "verify_coefficient_identities",
    "derived_omega33",
    "derived_omega35",
    "quadratic_form_slack",
    "omega_cascade_bounds",
    "fekete_szego",
]

FLOAT_REL_TOL = 1e-12


def _exact(value) -> bool:
    return isinstance(value, (int, Fraction))


def _abs2(value):
    if _exact(value):
        return value * value
    if isinstance(value, complex):
        return value.real * value.real + value.imag * value.imag
    return value * value


class GrunskyTable:
    """Symmetric map ``(p, q) -> omega[p, q]``.

    Symmetric partners are filled in automatically; if both are supplied they
    must agree (exactly for rationals, to ``1e-12`` relative for floats).
    """

    def __init__(self, entries: Mapping, max_index: int | None = None):
        omega = {}
        for (p, q), value in entries.items():
            if p < 0 or q < 0:
                raise ValueError(f"negative index ({p}, {q})")
            for key in ((p, q), (q, p)):
                if key in omega:
                    other = omega[key]
                    if _exact(other) and _exact(value):
                        same = other == value
                    else:
                        same = abs(other - value) <= FLOAT_REL_TOL * max(abs(other), abs(value), 1.0)
                    if not same:
                        raise AsymmetricTable(f"omega{key} = {other!r} but its partner is {value!r}")
                else:
                    omega[key] = value
        self.omega = omega
        if max_index is None:
            max_index = max((max(k) for k in omega), default=0)
        self.max_index = max_index

    @classmethod
    def zero(cls, max_index: int = 9) -> "GrunskyTable":
        entries = {(p, q): 0 for p in range(max_index + 1) for q in range(max_index + 1)}
        return cls(entries, max_index)

    def __getitem__(self, pq):
        try:
            return self.omega[tuple(pq)]
        except KeyError:
            raise MissingIndex(f"omega{tuple(pq)} is not in the table") from None

    def __contains__(self, pq) -> bool:
        return tuple(pq) in self.omega

    def get(self, p: int, q: int):
        return self[(p, q)]

    def replace(self, updates: Mapping) -> "GrunskyTable":
        """Copy with some entries (and their symmetric partners) overwritten."""
        omega = dict(self.omega)
        for (p, q), value in updates.items():
            omega[(p, q)] = value
            omega[(q, p)] = value
        table = GrunskyTable.__new__(GrunskyTable)
        table.omega = omega
        table.max_index = max(self.max_index, *(max(k) for k in updates)) if updates else self.max_index
        return table

    @property
    def is_exact(self) -> bool:
        return all(_exact(v) for v in self.omega.values())

    def is_symmetric(self) -> bool:
        return all(self.omega.get((q, p)) == v for (p, q), v in self.omega.items())

    def has_odd_support(self) -> bool:
        """True when every entry with ``p + q`` odd vanishes (tables of odd functions)."""
        for (p, q), v in self.omega.items():
            if (p + q) % 2 == 1:
                if _exact(v):
                    if v != 0:
                        return False
                elif abs(v) > FLOAT_REL_TOL:
                    return False
        return True

    def __repr__(self) -> str:
        return f"GrunskyTable(<{len(self.omega)} entries>, max_index={self.max_index})"


@dataclass(frozen=True)
class CoefficientVector:
    a2: object
    a3: object
    a4: object
    a5: object

    def as_tuple(self):
        return (self.a2, self.a3, self.a4, self.a5)


@dataclass(frozen=True)
class TestVector:
    """Nonzero entries ``x_1, x_3`` of a Grunsky test sequence."""

    __test__ = False  # keep pytest from collecting this class

    x1: complex
    x3: complex


@dataclass(frozen=True)
class CascadeReport:
    margins: tuple
    passed: tuple

    @property
    def ok(self) -> bool:
        return all(self.passed)


def coefficients_from_table(t: GrunskyTable) -> CoefficientVector:
    """Taylor coefficients ``a_2..a_5`` of ``f`` from the table of ``f2``."""
    w11, w13, w33, w35 = t[1, 1], t[1, 3], t[3, 3], t[3, 5]
    a2 = 2 * w11
    a3 = 2 * w13 + 3 * w11**2
    a4 = 2 * w33 + 8 * w11 * w13 + Fraction(10, 3) * w11**3
    # the square term is omega13^2; an omega15^2 variant is a misprint
    a5 = 2 * w35 + 8 * w11 * w33 + 5 * w13**2 + 18 * w11**2 * w13 + Fraction(7, 3) * w11**4
    return CoefficientVector(a2, a3, a4, a5)


def verify_coefficient_identities(t: GrunskyTable, c: CoefficientVector) -> list:
    """Six residuals: four coefficient relations, then two table constraints."""
    expected = coefficients_from_table(t)
    w11, w13, w15, w17 = t[1, 1], t[1, 3], t[1, 5], t[1, 7]
    w33, w35 = t[3, 3], t[3, 5]
    residuals = [got - want for got, want in zip(c.as_tuple(), expected.as_tuple())]
    residuals.append(3 * w15 - 3 * w11 * w13 + w11**3 - 3 * w33)
    residuals.append(w17 - w35 - w11 * w33 - w13**2 + Fraction(1, 3) * w11**4)
    return residuals


def derived_omega33(t: GrunskyTable):
    w11 = t[1, 1]
    return t[1, 5] - w11 * t[1, 3] + Fraction(1, 3) * w11**3


def derived_omega35(t: GrunskyTable):
    w11, w13 = t[1, 1], t[1, 3]
    return t[1, 7] - w11 * t[1, 5] + w11**2 * w13 - w13**2


def fekete_szego(t: GrunskyTable):
    """``2 omega13 - omega11^2``, which equals ``a3 - a2^2``."""
    return 2 * t[1, 3] - t[1, 1] ** 2


def _real_slack(t: GrunskyTable, x1, x3):
    lhs = 0
    for q in (1, 3, 5, 7):
        lhs = lhs + q * _abs2(t[1, q] * x1 + t[3, q] * x3)
    return _abs2(x1) + Fraction(1, 3) * _abs2(x3) - lhs


def quadratic_form_slack(t: GrunskyTable, x: TestVector):
    """Right side minus left side of the two-term odd Grunsky inequality.

    For a real exact table the Hermitian form splits into real and imaginary
    parts, so complex float test vectors are converted to exact rationals and
    the slack is returned as an exact ``Fraction``.
    """
    real_table = t.is_exact
    if real_table:
        for q in (1, 3, 5, 7):
            t[1, q], t[3, q]  # raise MissingIndex early
        parts = []
        for z in (x.x1, x.x3):
            z = complex(z)
            parts.append((Fraction(z.real), Fraction(z.imag)))
        (r1, i1), (r3, i3) = parts
        return _real_slack(t, r1, r3) + _real_slack(t, i1, i3)
    x1, x3 = complex(x.x1), complex(x.x3)
    lhs = 0.0
    for q in (1, 3, 5, 7):
        lhs += q * _abs2(complex(t[1, q]) * x1 + complex(t[3, q]) * x3)
    return _abs2(x1) + _abs2(x3) / 3 - lhs


def omega_cascade_bounds(t: GrunskyTable, *, strict: bool = False, tol: float = 0.0) -> CascadeReport:
    """Check the four modulus bounds on ``omega11, omega13, omega15, omega17``.

    Each margin is ``bound - |omega|``.  A negative radicand raises
    NegativeRadicand when ``strict``; otherwise the bound is continued as
    ``-sqrt(-radicand)`` so the margin stays negative and informative.
    """
    mods = [abs(complex(t[1, q])) if not _exact(t[1, q]) else abs(Fraction(t[1, q])) for q in (1, 3, 5, 7)]
    margins = []
    radicand = Fraction(1) if all(_exact(t[1, q]) for q in (1, 3, 5, 7)) else 1.0
    for k, (q, m) in enumerate(zip((1, 3, 5, 7), mods)):
        if k == 0:
            bound = 1.0
        else:
            scaled = radicand / q
            if scaled < 0:
                if strict:
                    raise NegativeRadicand(f"radicand for |omega1{q}| is {float(radicand)!r}")
                bound = -math.sqrt(float(-scaled))
            else:
                bound = math.sqrt(float(scaled))
        margins.append(bound - float(m))
        radicand = radicand - q * m * m
    passed = tuple(mg >= -tol for mg in margins)
    return CascadeReport(tuple(margins), passed)
