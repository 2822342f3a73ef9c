"""Built-in test functions and the textual series input format.

Accepted names: ``koebe``, ``koebe-rot:THETA`` (radians; ``pi``, ``pi/4``,
``3*pi/2`` and plain decimals are understood), ``identity``,
``z-over-1-minus-z`` and ``z-over-1-minus-z2``.  Coefficient lists are
comma separated ``a2, a3, ...`` given as fractions ``p/q`` or decimals.
"""

from __future__ import annotations

import cmath
import math
import re
from fractions import Fraction
from typing import Callable

from hankelcert.series import Series1

__all__ = [
    "SUITE",
    "koebe",
    "rotated_koebe",
    "identity",
    "z_over_1_minus_z",
    "z_over_1_minus_z2",
    "from_coefficients",
    "resolve",
    "parse_angle",
]

EXACT, FLOATING = "exact", "floating"

# names that have a closed-form Grunsky table and belong to the default suite
SUITE = ("koebe", "koebe-rot:pi", "identity", "z-over-1-minus-z", "z-over-1-minus-z2")


def _convert(value, mode: str):
    if mode == EXACT:
        return value
    return complex(value)


def _build(a: Callable[[int], object], order: int, mode: str) -> Series1:
    coeffs = [0, 1] + [a(n) for n in range(2, order + 1)]
    return Series1([_convert(c, mode) for c in coeffs], order)


def koebe(order: int = 9, mode: str = EXACT) -> Series1:
    """``z / (1 - z)^2`` with ``a_n = n``."""
    return _build(lambda n: n, order, mode)


def identity(order: int = 9, mode: str = EXACT) -> Series1:
    return _build(lambda n: 0, order, mode)


def z_over_1_minus_z(order: int = 9, mode: str = EXACT) -> Series1:
    return _build(lambda n: 1, order, mode)


def z_over_1_minus_z2(order: int = 9, mode: str = EXACT) -> Series1:
    return _build(lambda n: 1 if n % 2 == 1 else 0, order, mode)


_ANGLE = re.compile(r"^\s*(?:(?P<k>[-+]?\d+)\s*\*?\s*)?(?P<sign>-)?pi\s*(?:/\s*(?P<m>\d+))?\s*$")


def parse_angle(text: str) -> tuple[float, Fraction | None]:
    """Return ``(theta, theta/pi)``; the second item is None for plain decimals."""
    m = _ANGLE.match(text)
    if m:
        k = int(m.group("k") or 1)
        if m.group("sign"):
            k = -k
        d = int(m.group("m") or 1)
        ratio = Fraction(k, d)
        return float(ratio) * math.pi, ratio
    theta = float(text)
    return theta, None


def rotated_koebe(theta: str | float, order: int = 9, mode: str = EXACT) -> Series1:
    """``e^{-i theta} k(e^{i theta} z)`` with ``a_n = n e^{i (n-1) theta}``.

    Exact mode is only possible when the rotation is real (theta a multiple
    of pi); otherwise the coefficients are complex floats.
    """
    if isinstance(theta, str):
        value, ratio = parse_angle(theta)
    else:
        value, ratio = float(theta), None
    if mode == EXACT and ratio is not None and ratio.denominator == 1:
        sign = -1 if ratio.numerator % 2 else 1
        return _build(lambda n: n * sign ** (n - 1), order, EXACT)
    if mode == EXACT:
        raise ValueError(f"rotation {theta!r} is not real; use floating mode")
    rot = cmath.exp(1j * value)
    return _build(lambda n: n * rot ** (n - 1), order, FLOATING)


def _parse_number(text: str, mode: str):
    text = text.strip()
    if mode == EXACT:
        return Fraction(text)
    if "j" in text:
        return complex(text)
    return complex(float(Fraction(text)))


def from_coefficients(values, order: int = 9, mode: str = EXACT) -> Series1:
    """Polynomial ``z + a2 z^2 + ...`` padded with exact zeros to ``order``."""
    if isinstance(values, str):
        values = [v for v in values.split(",") if v.strip()]
    parsed = [_parse_number(v, mode) if isinstance(v, str) else _convert(v, mode) for v in values]
    if len(parsed) + 1 > order:
        order = len(parsed) + 1
    zero = 0 if mode == EXACT else 0j
    one = 1 if mode == EXACT else 1 + 0j
    coeffs = [zero, one] + parsed
    return Series1(coeffs + [zero] * (order + 1 - len(coeffs)), order)


_NAMED = {
    "koebe": koebe,
    "identity": identity,
    "z-over-1-minus-z": z_over_1_minus_z,
    "z/(1-z)": z_over_1_minus_z,
    "z-over-1-minus-z2": z_over_1_minus_z2,
    "z/(1-z^2)": z_over_1_minus_z2,
}


def resolve(name: str, order: int = 9, mode: str = EXACT) -> Series1:
    """Turn a built-in name or coefficient list into a series of ``f``."""
    key = name.strip().lower()
    if key in _NAMED:
        return _NAMED[key](order, mode)
    if key.startswith("koebe-rot:"):
        return rotated_koebe(key.split(":", 1)[1], order, mode)
    if "," in key or re.match(r"^[-+0-9./ej]+$", key):
        return from_coefficients(key, order, mode)
    raise ValueError(f"unknown function {name!r}")
