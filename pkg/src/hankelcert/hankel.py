"""Second and third order Hankel determinants.

Values are computed in whatever coefficient field the inputs carry (exact
rationals or complex floats); bound comparisons use the modulus.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from hankelcert.grunsky import CoefficientVector, GrunskyTable, coefficients_from_table

__all__ = [
    "HankelValues",
    "ReferenceBounds",
    "REFERENCE",
    "h2_from_coeffs",
    "h3_from_coeffs",
    "h2_from_grunsky",
    "h3_from_grunsky",
    "reduced_a4_a5",
    "hankel_values",
]


@dataclass(frozen=True)
class HankelValues:
    h2: object
    h3: object


@dataclass(frozen=True)
class ReferenceBounds:
    """Earlier and improved upper bounds for |H2(2)| and |H3(1)| over S."""

    h2_old: float = 11 / 3
    h3_old: float = (32 + math.sqrt(285)) / 15
    h2_new: float = 1.3614
    h3_new: float = 1.6787

    @property
    def h2_old_exact(self) -> Fraction:
        return Fraction(11, 3)


REFERENCE = ReferenceBounds()


def h2_from_coeffs(c: CoefficientVector):
    return c.a2 * c.a4 - c.a3**2


def h3_from_coeffs(c: CoefficientVector):
    a2, a3, a4, a5 = c.as_tuple()
    return a3 * (a2 * a4 - a3**2) - a4 * (a4 - a2 * a3) + a5 * (a3 - a2**2)


def h2_from_grunsky(t: GrunskyTable):
    w11, w13, w15 = t[1, 1], t[1, 3], t[1, 5]
    return 4 * w11 * w15 - w11**4 - 4 * w13**2


def h3_from_grunsky(t: GrunskyTable):
    w11, w13, w15, w17 = t[1, 1], t[1, 3], t[1, 5], t[1, 7]
    return (
        2 * w17 * (2 * w13 - w11**2)
        + 4 * w11 * w13 * w15
        + 2 * w11**3 * w15
        - 3 * w11**2 * w13**2
        - 2 * w13**3
        - 4 * w15**2
    )


def reduced_a4_a5(t: GrunskyTable):
    """``a4, a5`` with ``omega33`` and ``omega35`` eliminated."""
    w11, w13, w15, w17 = t[1, 1], t[1, 3], t[1, 5], t[1, 7]
    a4 = 2 * (w15 + 3 * w11 * w13 + 2 * w11**3)
    a5 = 2 * w17 + 6 * w11 * w15 + 12 * w11**2 * w13 + 3 * w13**2 + 5 * w11**4
    return a4, a5


def hankel_values(t: GrunskyTable) -> HankelValues:
    return HankelValues(h2_from_coeffs(coefficients_from_table(t)), h3_from_coeffs(coefficients_from_table(t)))
