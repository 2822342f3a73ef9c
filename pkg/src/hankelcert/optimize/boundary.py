"""Maxima of the objectives on the three edges of D1."""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from hankelcert.errors import EmptyDomain, Inconclusive
from hankelcert.interval import Interval
from hankelcert.objective import Restriction, boundary_restrictions, get_objective
from hankelcert.optimize.roots import Polynomial, isolate_roots

__all__ = ["EdgeMax", "certify_monotone_negative", "boundary_scan", "interval_scan_1d"]


@dataclass(frozen=True)
class EdgeMax:
    edge: str
    value: float
    location: tuple
    method: str
    details: dict = field(default_factory=dict, compare=False)


def _safe(f, iv: Interval) -> Optional[Interval]:
    try:
        return f(iv)
    except (ValueError, EmptyDomain, ZeroDivisionError, OverflowError):
        return None


def certify_monotone_negative(
    fprime: Callable[[Interval], Interval],
    a: float,
    b: float,
    *,
    fsecond: Optional[Callable[[Interval], Interval]] = None,
    budget: int = 100_000,
    min_width: float = 1e-12,
) -> bool:
    """Prove ``fprime < 0`` on ``(a, b)`` by adaptive interval subdivision.

    Subintervals touching an endpoint where ``fprime`` vanishes are settled by
    the one-sided expansion ``f'(x) = f'(a) + f''(xi) (x - a)`` using the
    interval ``fsecond``.  Returns False as soon as some subinterval has a
    provably positive derivative; raises Inconclusive when the budget or the
    width floor is hit first.
    """
    if not a < b:
        raise ValueError("need a < b")
    stack = [Interval._raw(a, b)]
    steps = 0
    at_a = at_b = None
    while stack:
        steps += 1
        if steps > budget:
            raise Inconclusive(f"covering of ({a}, {b}) not finished after {budget} subintervals")
        iv = stack.pop()
        d = _safe(fprime, iv)
        if d is not None:
            if d.hi < 0.0:
                continue
            if d.lo > 0.0:
                return False
        if fsecond is not None and iv.lo == a:
            if at_a is None:
                at_a = _safe(fprime, Interval._raw(a, a))
            dd = _safe(fsecond, iv)
            if at_a is not None and dd is not None and at_a.hi <= 0.0 and dd.hi < 0.0:
                continue
        if fsecond is not None and iv.hi == b:
            if at_b is None:
                at_b = _safe(fprime, Interval._raw(b, b))
            dd = _safe(fsecond, iv)
            if at_b is not None and dd is not None and at_b.hi <= 0.0 and dd.lo > 0.0:
                continue
        if iv.width < min_width:
            raise Inconclusive(f"sign of f' undecided on {iv!r}")
        m = iv.mid
        stack.append(Interval._raw(m, iv.hi))
        stack.append(Interval._raw(iv.lo, m))
    return True


def interval_scan_1d(enclose, value, a: float, b: float, tol: float = 1e-9, budget: int = 200_000):
    """Certified maximum of a univariate function on ``[a, b]``.

    Returns ``(lower, upper, argmax)`` with ``upper - lower <= tol``.
    """
    best, arg = -math.inf, a
    for t in (a, b, 0.5 * (a + b)):
        v = value(t)
        if v > best:
            best, arg = v, t
    root = Interval._raw(a, b)
    heap = [(-enclose(root).hi, a, root)]
    steps = 0
    while heap:
        top = -heap[0][0]
        if top - best <= tol:
            return best, top, arg
        steps += 1
        if steps > budget:
            raise Inconclusive(f"1-D scan on [{a}, {b}] stuck at width {top - best:.3e}")
        _, _, iv = heapq.heappop(heap)
        m = iv.mid
        for child in (Interval._raw(iv.lo, m), Interval._raw(m, iv.hi)):
            try:
                up = enclose(child).hi
            except EmptyDomain:
                continue
            v = value(child.mid)
            if v > best:
                best, arg = v, child.mid
            if up >= best:
                heapq.heappush(heap, (-up, child.lo, child))
    return best, best, arg


def _edge_by_roots(r: Restriction) -> EdgeMax:
    poly = Polynomial(r.stationary)
    roots = isolate_roots(poly, Fraction(r.lo), Fraction(r.hi))
    kept, dropped = [], []
    for ri in roots:
        root = float(ri.mid)
        if r.admissible is not None and not r.admissible(ri.mid):
            dropped.append(root)
        else:
            kept.append(root)
    candidates = [(r.value(t), t) for t in [r.lo, r.hi] + kept]
    value, t = max(candidates, key=lambda c: (c[0], -c[1]))
    details = {
        "closed_form": r.closed_form,
        "stationary_polynomial": [str(c) for c in poly.coeffs],
        "roots": [float(ri.mid) for ri in roots],
        "root_intervals": [[str(ri.lo), str(ri.hi)] for ri in roots],
        "kept_roots": kept,
        "discarded_roots": dropped,
        "argmax": t,
    }
    return EdgeMax(r.edge, value, r.point(t), "root isolation + stationarity filter", details)


def _edge_by_monotonicity(r: Restriction) -> Optional[EdgeMax]:
    try:
        ok = certify_monotone_negative(r.deriv_enclose, r.lo, r.hi, fsecond=r.deriv2_enclose)
    except Inconclusive:
        return None
    if not ok:
        return None
    details = {"closed_form": r.closed_form, "certified_decreasing_on": [r.lo, r.hi], "argmax": r.lo}
    return EdgeMax(r.edge, r.value(r.lo), r.point(r.lo), "certified monotone (interval)", details)


def _edge_by_scan(r: Restriction, tol: float) -> EdgeMax:
    lower, upper, t = interval_scan_1d(r.enclose, r.value, r.lo, r.hi, tol)
    details = {"lower": lower, "upper": upper, "argmax": t}
    if r.closed_form:
        details["closed_form"] = r.closed_form
    return EdgeMax(r.edge, lower, r.point(t), "certified 1-D interval scan", details)


def boundary_scan(obj, *, scan_tol: float = 1e-9) -> list:
    """Maximum of ``obj`` on ``{y=0}``, ``{x=0}`` and the ellipse arc.

    Each edge uses the strongest method available: exact root isolation of
    a stationarity polynomial with spurious roots filtered out, an interval
    proof of monotonicity, or a certified 1-D interval scan.
    """
    out = []
    for r in boundary_restrictions(obj if not isinstance(obj, str) else get_objective(obj)):
        if r.stationary is not None:
            out.append(_edge_by_roots(r))
            continue
        if r.decreasing and r.deriv_enclose is not None:
            em = _edge_by_monotonicity(r)
            if em is not None:
                out.append(em)
                continue
        out.append(_edge_by_scan(r, scan_tol))
    return out
