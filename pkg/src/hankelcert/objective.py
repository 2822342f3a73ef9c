"""The two majorants F1 and F2 over the domain D1.

Both share the shape ``F(x, y) = P(x, y) * sqrt(1 - x^2 - 3 y^2) + Q(x, y)``
with polynomial ``P`` and ``Q``.  :class:`RadicalObjective` provides point
values, analytic gradient and Hessian, and interval extensions (natural and
mean-value form) for any objective of that shape.

    F1(x, y) = 4/sqrt(5) x R + x^4 + 4 y^2
    F2(x, y) = (2/sqrt(7) + 4 x y + 2 x^3) R
               + 4/5 - 4/5 x^2 - 12/5 y^2 + 3 x^2 y^2 + 2 y^3

where ``R = sqrt(1 - x^2 - 3 y^2)`` and
``D1 = {0 <= x <= 1, 0 <= y <= sqrt((1 - x^2) / 3)}``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from hankelcert.errors import BoundarySingularity, EmptyDomain, OutsideDomain
from hankelcert.interval import Box, Interval, enclose, recip, sqrt_clamped

__all__ = [
    "DOMAIN_TOL",
    "DomainPoint",
    "Coef",
    "Poly2",
    "RadicalObjective",
    "Restriction",
    "F1",
    "F2",
    "get_objective",
    "constant_objective",
    "eval_f1",
    "eval_f2",
    "grad",
    "eval_interval",
    "boundary_restrictions",
    "ellipse_y",
    "y_max",
]

DOMAIN_TOL = 1e-14


def ellipse_y(x: float) -> float:
    """Upper edge of D1 above ``x`` (float)."""
    return math.sqrt(max(1.0 - x * x, 0.0) / 3.0)


def y_max() -> float:
    """A float upper bound for ``1/sqrt(3)``."""
    return sqrt_clamped(enclose(Fraction(1, 3))).hi


@dataclass(frozen=True)
class DomainPoint:
    x: float
    y: float

    def radicand(self) -> float:
        return 1.0 - self.x * self.x - 3.0 * self.y * self.y

    def in_domain(self, tol: float = DOMAIN_TOL) -> bool:
        return self.x >= -tol and self.y >= -tol and self.x <= 1.0 + tol and self.radicand() >= -tol

    def exactly_in_domain(self) -> bool:
        """Membership decided in exact rational arithmetic."""
        x, y = Fraction(self.x), Fraction(self.y)
        return x >= 0 and y >= 0 and x <= 1 and 1 - x * x - 3 * y * y >= 0

    def projected(self) -> "DomainPoint":
        """Clamp into D1, stepping ``y`` down until exact membership holds."""
        x = min(max(self.x, 0.0), 1.0)
        y = min(max(self.y, 0.0), ellipse_y(x))
        p = DomainPoint(x, y)
        while not p.exactly_in_domain():
            y = math.nextafter(y, -math.inf) if y > 0.0 else 0.0
            p = DomainPoint(x, y)
        return p

    def as_list(self):
        return [self.x, self.y]


@dataclass(frozen=True)
class Coef:
    """Constant ``q * sqrt(r)`` with rational ``q`` and ``r``."""

    q: Fraction
    r: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "q", Fraction(self.q))
        object.__setattr__(self, "r", Fraction(self.r))

    @property
    def value(self) -> float:
        if self.r == 1:
            return float(self.q)
        return float(self.q) * math.sqrt(float(self.r))

    @property
    def enclosure(self) -> Interval:
        e = enclose(self.q)
        if self.r == 1:
            return e
        return e * sqrt_clamped(enclose(self.r))

    def scale(self, k) -> "Coef":
        return Coef(self.q * k, self.r)


class Poly2:
    """Bivariate polynomial with :class:`Coef` coefficients."""

    def __init__(self, terms: dict):
        self.terms = {k: (v if isinstance(v, Coef) else Coef(v)) for k, v in terms.items() if v != 0}
        self._values = [(i, j, c.value) for (i, j), c in sorted(self.terms.items())]
        self._encl = [(i, j, c.enclosure) for (i, j), c in sorted(self.terms.items())]

    @property
    def degree(self) -> int:
        return max((i + j for i, j in self.terms), default=0)

    def dx(self) -> "Poly2":
        return Poly2({(i - 1, j): c.scale(i) for (i, j), c in self.terms.items() if i > 0})

    def dy(self) -> "Poly2":
        return Poly2({(i, j - 1): c.scale(j) for (i, j), c in self.terms.items() if j > 0})

    def __call__(self, x: float, y: float) -> float:
        return sum(c * x**i * y**j for i, j, c in self._values)

    def enclose(self, xp, yp) -> Interval:
        """Interval value from precomputed power lists ``xp[k] = x^k``."""
        acc = Interval._raw(0.0, 0.0)
        for i, j, c in self._encl:
            term = c
            if i:
                term = term * xp[i]
            if j:
                term = term * yp[j]
            acc = acc + term
        return acc


def _powers(iv: Interval, n: int):
    out = [Interval._raw(1.0, 1.0)]
    for k in range(1, n + 1):
        out.append(iv**k)
    return out


_ONE = Interval._raw(1.0, 1.0)
_THREE = Interval._raw(3.0, 3.0)


class RadicalObjective:
    """``F = P * sqrt(1 - x^2 - 3 y^2) + Q`` on D1."""

    def __init__(self, name: str, p: Poly2, q: Poly2):
        self.name = name
        self.p, self.q = p, q
        self.px, self.py = p.dx(), p.dy()
        self.qx, self.qy = q.dx(), q.dy()
        self.pxx, self.pxy, self.pyy = self.px.dx(), self.px.dy(), self.py.dy()
        self.qxx, self.qxy, self.qyy = self.qx.dx(), self.qx.dy(), self.qy.dy()
        self._deg = max(p.degree, q.degree, 2) + 1

    def __repr__(self) -> str:
        return f"<objective {self.name}>"

    # point evaluation -----------------------------------------------------

    def _radicand(self, x: float, y: float) -> float:
        if x < -DOMAIN_TOL or y < -DOMAIN_TOL:
            raise OutsideDomain(f"({x}, {y}) has a negative coordinate")
        u = 1.0 - x * x - 3.0 * y * y
        if u < -DOMAIN_TOL:
            raise OutsideDomain(f"({x}, {y}) is outside D1 (radicand {u:.3e})")
        return max(u, 0.0)

    def value(self, x: float, y: float) -> float:
        u = self._radicand(x, y)
        return self.p(x, y) * math.sqrt(u) + self.q(x, y)

    def __call__(self, point: DomainPoint) -> float:
        return self.value(point.x, point.y)

    def _interior(self, x: float, y: float) -> float:
        u = self._radicand(x, y)
        if u <= 0.0:
            raise BoundarySingularity(f"radical factor vanishes at ({x}, {y})")
        return u

    def gradient(self, x: float, y: float) -> tuple[float, float]:
        u = self._interior(x, y)
        r = math.sqrt(u)
        pv = self.p(x, y)
        gx = (self.px(x, y) * u - x * pv) / r + self.qx(x, y)
        gy = (self.py(x, y) * u - 3.0 * y * pv) / r + self.qy(x, y)
        return gx, gy

    def hessian(self, x: float, y: float):
        u = self._interior(x, y)
        r = math.sqrt(u)
        r3 = r * u
        pv, px, py = self.p(x, y), self.px(x, y), self.py(x, y)
        rx, ry = -x / r, -3.0 * y / r
        rxx = -1.0 / r - x * x / r3
        rxy = -3.0 * x * y / r3
        ryy = -3.0 / r - 9.0 * y * y / r3
        hxx = self.pxx(x, y) * r + 2 * px * rx + pv * rxx + self.qxx(x, y)
        hxy = self.pxy(x, y) * r + px * ry + py * rx + pv * rxy + self.qxy(x, y)
        hyy = self.pyy(x, y) * r + 2 * py * ry + pv * ryy + self.qyy(x, y)
        return ((hxx, hxy), (hxy, hyy))

    # interval evaluation --------------------------------------------------

    def _parts(self, box: Box):
        xp = _powers(box.x, self._deg)
        yp = _powers(box.y, self._deg)
        u = _ONE - xp[2] - _THREE * yp[2]
        return xp, yp, u

    def enclose(self, box: Box) -> Interval:
        """Natural interval extension over the feasible part of ``box``."""
        if box.x.hi < 0.0 or box.y.hi < 0.0:
            raise EmptyDomain(f"{box!r} misses D1")
        xp, yp, u = self._parts(box)
        if u.hi < 0.0:
            raise EmptyDomain(f"{box!r} lies outside D1")
        r = sqrt_clamped(u)
        return self.p.enclose(xp, yp) * r + self.q.enclose(xp, yp)

    def enclose_gradient(self, box: Box):
        """Interval gradient; only for boxes strictly inside the ellipse."""
        xp, yp, u = self._parts(box)
        if u.lo <= 0.0:
            raise BoundarySingularity(f"{box!r} touches the ellipse")
        rinv = recip(sqrt_clamped(u))
        pv = self.p.enclose(xp, yp)
        gx = (self.px.enclose(xp, yp) * u - box.x * pv) * rinv + self.qx.enclose(xp, yp)
        gy = (self.py.enclose(xp, yp) * u - _THREE * box.y * pv) * rinv + self.qy.enclose(xp, yp)
        return gx, gy

    def enclose_mean_value(self, box: Box) -> Interval:
        """Mean-value form ``F(c) + grad(box) . (box - c)`` about the midpoint."""
        gx, gy = self.enclose_gradient(box)
        cx, cy = box.mid
        fc = self.enclose(Box(Interval._raw(cx, cx), Interval._raw(cy, cy)))
        dx = box.x - Interval._raw(cx, cx)
        dy = box.y - Interval._raw(cy, cy)
        return fc + gx * dx + gy * dy

    def enclose_point(self, x: float, y: float) -> Interval:
        return self.enclose(Box(Interval._raw(x, x), Interval._raw(y, y)))


def _p(terms):
    return Poly2(terms)


F1 = RadicalObjective(
    "F1",
    _p({(1, 0): Coef(4, Fraction(1, 5))}),
    _p({(4, 0): 1, (0, 2): 4}),
)

F2 = RadicalObjective(
    "F2",
    _p({(0, 0): Coef(2, Fraction(1, 7)), (1, 1): 4, (3, 0): 2}),
    _p({(0, 0): Fraction(4, 5), (2, 0): Fraction(-4, 5), (0, 2): Fraction(-12, 5), (2, 2): 3, (0, 3): 2}),
)

_BY_NAME = {"F1": F1, "F2": F2}


def get_objective(tag) -> RadicalObjective:
    if isinstance(tag, RadicalObjective):
        return tag
    try:
        return _BY_NAME[str(tag).upper()]
    except KeyError:
        raise ValueError(f"unknown objective {tag!r}; expected F1 or F2") from None


def constant_objective(c=0) -> RadicalObjective:
    """Objective identically equal to ``c`` (test hook for the optimizer)."""
    return RadicalObjective(f"const({c})", Poly2({}), Poly2({(0, 0): Fraction(c)}))


def _point(p) -> DomainPoint:
    return p if isinstance(p, DomainPoint) else DomainPoint(*p)


def eval_f1(p) -> float:
    p = _point(p)
    return F1.value(p.x, p.y)


def eval_f2(p) -> float:
    p = _point(p)
    return F2.value(p.x, p.y)


def grad(obj, p) -> tuple[float, float]:
    p = _point(p)
    return get_objective(obj).gradient(p.x, p.y)


def eval_interval(obj, box: Box) -> Interval:
    """Enclosure of ``{F(p) : p in box ∩ D1}``.

    Uses the mean-value form when the box is strictly inside the ellipse and
    intersects it with the natural extension.
    """
    obj = get_objective(obj)
    natural = obj.enclose(box)
    try:
        mvf = obj.enclose_mean_value(box)
    except BoundarySingularity:
        return natural
    lo, hi = max(natural.lo, mvf.lo), min(natural.hi, mvf.hi)
    if lo > hi:  # cannot happen for sound enclosures; keep the natural one
        return natural
    return Interval._raw(lo, hi)


# boundary restrictions -----------------------------------------------------


@dataclass
class Restriction:
    """An objective restricted to one edge of D1, parametrised by ``t``.

    ``stationary`` (ascending rational coefficients) is a polynomial whose
    real roots include every stationary point of ``value``; roots must also
    pass ``admissible`` (an exact test on the rational root).  ``decreasing``
    marks edges where the derivative is claimed negative, to be certified
    with ``deriv_enclose`` / ``deriv2_enclose``.
    """

    edge: str
    variable: str
    lo: float
    hi: float
    value: Callable[[float], float]
    deriv: Callable[[float], float]
    point: Callable[[float], tuple]
    enclose: Callable[[Interval], Interval]
    stationary: Optional[list] = None
    admissible: Optional[Callable[[Fraction], bool]] = None
    decreasing: bool = False
    deriv_enclose: Optional[Callable[[Interval], Interval]] = None
    deriv2_enclose: Optional[Callable[[Interval], Interval]] = None
    closed_form: str = ""
    meta: dict = field(default_factory=dict)


def _generic_edges(obj: RadicalObjective):
    ymax = 1.0 / math.sqrt(3.0)
    third = enclose(Fraction(1, 3))

    def fd(g):
        h = 1e-7

        def d(t):
            return (g(t + h) - g(t - h)) / (2 * h)

        return d

    def bottom(t):
        return obj.value(t, 0.0)

    def left(t):
        return obj.value(0.0, t)

    def arc(t):
        return obj.value(t, ellipse_y(t))

    def enc_bottom(T):
        return obj.enclose(Box(T, Interval._raw(0.0, 0.0)))

    def enc_left(T):
        return obj.enclose(Box(Interval._raw(0.0, 0.0), T))

    def enc_arc(T):
        y = sqrt_clamped((_ONE - T**2) * third)
        return obj.enclose(Box(T, y))

    return [
        Restriction("y=0", "x", 0.0, 1.0, bottom, fd(bottom), lambda t: (t, 0.0), enc_bottom),
        Restriction("x=0", "y", 0.0, ymax, left, fd(left), lambda t: (0.0, t), enc_left),
        Restriction("ellipse", "x", 0.0, 1.0, arc, fd(arc), lambda t: (t, ellipse_y(t)), enc_arc),
    ]


def _f1_edges():
    edges = _generic_edges(F1)
    c = 4 / math.sqrt(5)
    bottom, left, arc = edges
    bottom.value = lambda x: c * x * math.sqrt(1 - x * x) + x**4
    bottom.deriv = lambda x: c * (1 - 2 * x * x) / math.sqrt(1 - x * x) + 4 * x**3
    # squaring c(1-2x^2) = -4x^3 sqrt(1-x^2) gives 5x^8 - 5x^6 + 4x^4 - 4x^2 + 1;
    # the unsquared equation needs 1 - 2x^2 < 0
    bottom.stationary = [Fraction(v) for v in (1, 0, -4, 0, 4, 0, -5, 0, 5)]
    bottom.admissible = lambda x: 2 * x * x > 1
    bottom.closed_form = "4/sqrt(5) x sqrt(1-x^2) + x^4"
    left.value = lambda y: 4 * y * y
    left.deriv = lambda y: 8 * y
    left.stationary = [Fraction(0), Fraction(8)]
    left.closed_form = "4 y^2"
    arc.value = lambda x: (3 * x**4 - 4 * x * x + 4) / 3
    arc.deriv = lambda x: 4 * x**3 - 8 * x / 3
    arc.stationary = [Fraction(0), Fraction(-8, 3), Fraction(0), Fraction(4)]
    arc.closed_form = "(3x^4 - 4x^2 + 4)/3"
    return edges


def _f2_edges():
    edges = _generic_edges(F2)
    a = 2 / math.sqrt(7)
    a_iv = Coef(2, Fraction(1, 7)).enclosure
    eight_fifths = enclose(Fraction(8, 5))
    bottom, left, arc = edges

    bottom.value = lambda x: (a + 2 * x**3) * math.sqrt(1 - x * x) + 0.8 - 0.8 * x * x
    bottom.deriv = lambda x: x * ((6 * x - 8 * x**3 - a) / math.sqrt(1 - x * x) - 1.6)

    def bottom_h(X):
        s_inv = recip(sqrt_clamped(_ONE - X**2))
        return (6 * X - 8 * X**3 - a_iv) * s_inv - eight_fifths, s_inv

    def bottom_d(X):
        return X * bottom_h(X)[0]

    def bottom_d2(X):
        h, s_inv = bottom_h(X)
        num = 6 * X - 8 * X**3 - a_iv
        dh = (6 - 24 * X**2) * s_inv + num * X * s_inv**3
        return h + X * dh

    bottom.deriv_enclose, bottom.deriv2_enclose = bottom_d, bottom_d2
    bottom.decreasing = True
    bottom.closed_form = "(2/sqrt(7) + 2x^3) sqrt(1-x^2) + 4/5 - 4/5 x^2"

    left.value = lambda y: a * math.sqrt(1 - 3 * y * y) + 0.8 - 2.4 * y * y + 2 * y**3
    left.deriv = lambda y: y * (-3 * a / math.sqrt(1 - 3 * y * y) - 4.8 + 6 * y)
    twenty_four_fifths = enclose(Fraction(24, 5))

    def left_h(Y):
        t_inv = recip(sqrt_clamped(_ONE - _THREE * Y**2))
        return -3 * a_iv * t_inv - twenty_four_fifths + 6 * Y, t_inv

    def left_d(Y):
        return Y * left_h(Y)[0]

    def left_d2(Y):
        h, t_inv = left_h(Y)
        dh = -9 * a_iv * Y * t_inv**3 + 6
        return h + Y * dh

    left.deriv_enclose, left.deriv2_enclose = left_d, left_d2
    left.decreasing = True
    left.closed_form = "2/sqrt(7) sqrt(1-3y^2) + 4/5 - 12/5 y^2 + 2 y^3"

    k = 2 / (3 * math.sqrt(3))
    arc.value = lambda x: k * (1 - x * x) ** 1.5 + x * x * (1 - x * x)
    arc.deriv = lambda x: -(2 / math.sqrt(3)) * x * math.sqrt(1 - x * x) + 2 * x - 4 * x**3
    # stationary points off x = 0 solve (2 - 4x^2) = 2/sqrt(3) sqrt(1-x^2);
    # squaring gives 12x^4 - 11x^2 + 2 = 0 and the original needs 2 - 4x^2 >= 0
    arc.stationary = [Fraction(v) for v in (2, 0, -11, 0, 12)]
    arc.admissible = lambda x: 4 * x * x <= 2
    arc.closed_form = "2/(3 sqrt(3)) (1-x^2)^(3/2) + x^2 (1-x^2)"
    return edges


def boundary_restrictions(obj) -> list:
    """The objective on ``{y=0}``, ``{x=0}`` and the ellipse arc, in that order."""
    if obj is F1 or (isinstance(obj, str) and obj.upper() == "F1"):
        return _f1_edges()
    if obj is F2 or (isinstance(obj, str) and obj.upper() == "F2"):
        return _f2_edges()
    return _generic_edges(get_objective(obj))
