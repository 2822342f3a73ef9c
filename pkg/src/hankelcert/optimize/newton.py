"""Damped Newton refinement of interior critical points and a multi-start scan."""

from __future__ import annotations

import math
from dataclasses import dataclass

from hankelcert.errors import BoundarySingularity, LeftDomain, OutsideDomain
from hankelcert.objective import DomainPoint, ellipse_y, get_objective

__all__ = ["CriticalPoint", "refine_critical_point", "find_interior_critical_points"]

GRAD_TOL = 1e-10
MAX_ITER = 200
MAX_HALVINGS = 50


@dataclass(frozen=True)
class CriticalPoint:
    point: DomainPoint
    value: float
    gradient_norm: float
    converged: bool
    iterations: int = 0
    kind: str = ""  # "max", "min", "saddle" or "" when not classified


def _strictly_interior(x: float, y: float) -> bool:
    return x > 0.0 and y > 0.0 and 1.0 - x * x - 3.0 * y * y > 0.0


def _grad_norm(obj, x, y) -> float:
    gx, gy = obj.gradient(x, y)
    return math.hypot(gx, gy)


def _classify(obj, x, y) -> str:
    (a, b), (_, d) = obj.hessian(x, y)
    det = a * d - b * b
    if det > 0:
        return "max" if a < 0 else "min"
    if det < 0:
        return "saddle"
    return "degenerate"


def refine_critical_point(obj, seed, *, tol: float = GRAD_TOL, max_iter: int = MAX_ITER) -> CriticalPoint:
    """Newton's method on ``grad F = 0`` starting from an interior ``seed``.

    Steps are halved until the gradient norm decreases and the trial point
    stays strictly inside D1.  Returns the last iterate with
    ``converged=False`` when the iteration stalls; raises LeftDomain when no
    halving keeps the iterate inside D1.
    """
    obj = get_objective(obj)
    if not isinstance(seed, DomainPoint):
        seed = DomainPoint(*seed)
    x, y = float(seed.x), float(seed.y)
    if not _strictly_interior(x, y):
        raise OutsideDomain(f"seed ({x}, {y}) is not strictly interior")
    norm = _grad_norm(obj, x, y)
    it = 0
    while norm >= tol and it < max_iter:
        it += 1
        gx, gy = obj.gradient(x, y)
        (a, b), (_, d) = obj.hessian(x, y)
        det = a * d - b * b
        if det == 0.0 or not math.isfinite(det):
            break
        dx = -(d * gx - b * gy) / det
        dy = -(a * gy - b * gx) / det
        lam = 1.0
        accepted = False
        any_inside = False
        for _ in range(MAX_HALVINGS + 1):
            tx, ty = x + lam * dx, y + lam * dy
            if _strictly_interior(tx, ty):
                any_inside = True
                try:
                    tnorm = _grad_norm(obj, tx, ty)
                except (BoundarySingularity, OutsideDomain):
                    tnorm = math.inf
                if tnorm < norm:
                    x, y, norm = tx, ty, tnorm
                    accepted = True
                    break
            lam *= 0.5
        if not accepted:
            if not any_inside:
                raise LeftDomain(f"Newton iterates leave D1 near ({x}, {y})")
            break
    converged = norm < tol
    kind = _classify(obj, x, y) if converged else ""
    return CriticalPoint(DomainPoint(x, y), obj.value(x, y), norm, converged, it, kind)


def find_interior_critical_points(
    obj, grid: int = 50, *, merge_tol: float = 1e-7, boundary_margin: float = 1e-8
) -> list:
    """Multi-start Newton from a ``grid x grid`` seed lattice over D1.

    Seeds sit at ``x = (i + 1/2)/grid`` and at the same relative heights
    under the ellipse.  Distinct converged points are returned sorted by
    decreasing value.  Iterates that drift to within ``boundary_margin`` of
    the edges of D1 are limits of boundary critical points and are dropped.
    This is numerical evidence, not a uniqueness proof.
    """
    obj = get_objective(obj)
    found: list[CriticalPoint] = []
    for i in range(grid):
        x = (i + 0.5) / grid
        top = ellipse_y(x)
        for j in range(grid):
            y = (j + 0.5) / grid * top
            try:
                cp = refine_critical_point(obj, (x, y))
            except (LeftDomain, OutsideDomain, BoundarySingularity):
                continue
            if not cp.converged:
                continue
            px, py = cp.point.x, cp.point.y
            if min(px, py, cp.point.radicand()) < boundary_margin:
                continue
            if any(
                abs(cp.point.x - q.point.x) < merge_tol and abs(cp.point.y - q.point.y) < merge_tol for q in found
            ):
                continue
            found.append(cp)
    found.sort(key=lambda c: (-c.value, c.point.x, c.point.y))
    return found
