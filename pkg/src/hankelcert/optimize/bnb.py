"""Certified global maximisation over D1 by interval branch-and-bound."""

from __future__ import annotations

import heapq
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from hankelcert.errors import BoundarySingularity, BudgetExceeded, EmptyDomain, LeftDomain, OutsideDomain
from hankelcert.interval import Box, Interval
from hankelcert.objective import DomainPoint, ellipse_y, get_objective, y_max
from hankelcert.optimize.newton import refine_critical_point

__all__ = ["CertifiedBound", "branch_and_bound_max", "DEFAULT_TOL", "DEFAULT_BUDGET", "WORKERS_ENV"]

DEFAULT_TOL = 1e-6
DEFAULT_BUDGET = 10**7
WORKERS_ENV = "HANKELCERT_WORKERS"


@dataclass(frozen=True)
class CertifiedBound:
    """``lower <= max F <= upper`` over D1, with the witness attaining ``lower``."""

    objective: str
    lower: float
    upper: float
    tolerance: float
    boxes_processed: int
    witness: DomainPoint
    incumbents: tuple = field(default=(), compare=False)

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def certificate(self, old_bound: float | None = None) -> dict:
        cert = {
            "objective": self.objective,
            "upper": self.upper,
            "lower": self.lower,
            "witness": self.witness.as_list(),
            "tol": self.tolerance,
            "boxes": self.boxes_processed,
        }
        if old_bound is not None:
            cert["improves_over"] = {"old_bound": old_bound}
        return cert


def _box_upper(obj, box: Box):
    """Upper bound of F over ``box`` ∩ D1, or None if the box misses D1."""
    try:
        natural = obj.enclose(box)
    except EmptyDomain:
        return None
    hi = natural.hi
    try:
        mvf = obj.enclose_mean_value(box)
    except BoundarySingularity:
        return hi
    return min(hi, mvf.hi)


def _samples(box: Box):
    cx, cy = box.mid
    yield cx, cy
    if box.y.lo == 0.0:
        yield cx, 0.0


def _evaluate(obj, box: Box):
    """Bound a box and return its best feasible sample ``(lower, point)``."""
    upper = _box_upper(obj, box)
    if upper is None:
        return None, None, None
    best, best_pt = -math.inf, None
    for sx, sy in _samples(box):
        pt = DomainPoint(sx, sy).projected()
        lo = obj.enclose_point(pt.x, pt.y).lo
        if lo > best:
            best, best_pt = lo, pt
    return upper, best, best_pt


def _seed_incumbents(obj, grid: int):
    out = []
    for i in range(grid):
        x = (i + 0.5) / grid
        top = ellipse_y(x)
        for j in range(grid):
            y = (j + 0.5) / grid * top
            try:
                cp = refine_critical_point(obj, (x, y), max_iter=40)
            except (LeftDomain, OutsideDomain, BoundarySingularity):
                continue
            pt = cp.point.projected()
            out.append((obj.enclose_point(pt.x, pt.y).lo, pt))
    return out


def _worker_count(workers):
    if workers is not None:
        return max(int(workers), 1)
    env = os.environ.get(WORKERS_ENV)
    return max(int(env), 1) if env else 1


def branch_and_bound_max(
    obj,
    tol: float = DEFAULT_TOL,
    *,
    budget: int = DEFAULT_BUDGET,
    workers: int | None = None,
    seed_grid: int = 6,
) -> CertifiedBound:
    """Enclose ``max F`` over D1 to within ``tol``.

    Boxes are bounded by the natural interval extension intersected with the
    mean-value form (the latter only where the radical is bounded away from
    zero), explored best-first by upper bound with lexicographic tie-breaks,
    and split along their wider side.  Incumbents come from projected box
    midpoints (plus the ``y = 0`` edge point for boxes touching it) and from
    Newton-refined interior critical points.  With more than one worker the
    enclosure guarantee is unchanged but witnesses may differ.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    obj = get_objective(obj)
    nworkers = _worker_count(workers)

    root = Box(Interval(0.0, 1.0), Interval(0.0, y_max()))
    lower, witness = -math.inf, None

    def offer(value, point):
        nonlocal lower, witness
        if point is None:
            return
        if value > lower or (value == lower and witness is not None and (point.x, point.y) < (witness.x, witness.y)):
            lower, witness = value, point

    incumbents = []
    if seed_grid:
        for value, pt in _seed_incumbents(obj, seed_grid):
            offer(value, pt)
            incumbents.append((value, pt))

    upper0, low0, pt0 = _evaluate(obj, root)
    offer(low0, pt0)
    heap = [(-upper0, root.key, root)]
    processed = 1

    pool = ThreadPoolExecutor(max_workers=nworkers) if nworkers > 1 else None
    try:
        while heap:
            top = -heap[0][0]
            if top - lower <= tol:
                break
            if processed >= budget:
                partial = CertifiedBound(obj.name, lower, top, tol, processed, witness, tuple(incumbents))
                raise BudgetExceeded(f"box budget {budget} exhausted at width {top - lower:.3e}", partial)
            batch = [heapq.heappop(heap)[2]]
            while pool is not None and heap and len(batch) < nworkers and -heap[0][0] - lower > tol:
                batch.append(heapq.heappop(heap)[2])
            children = [child for box in batch for child in box.bisect()]
            if pool is None:
                results = [_evaluate(obj, c) for c in children]
            else:
                results = list(pool.map(lambda c: _evaluate(obj, c), children))
            processed += len(children)
            for child, (upper, low, pt) in zip(children, results):
                if upper is None:
                    continue
                offer(low, pt)
                if upper < lower:
                    continue
                heapq.heappush(heap, (-upper, child.key, child))
    finally:
        if pool is not None:
            pool.shutdown()

    if not heap:
        # every box fell below the incumbent: the incumbent itself is the bound
        upper = lower
    else:
        upper = max(-heap[0][0], lower)
    return CertifiedBound(obj.name, lower, upper, tol, processed, witness, tuple(incumbents))
