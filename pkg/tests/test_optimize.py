import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hankelcert.errors import BudgetExceeded, Inconclusive, NotSquareFree, OutsideDomain
from hankelcert.interval import Interval
from hankelcert.objective import F1, F2, boundary_restrictions, constant_objective
from hankelcert.optimize import (
    BOUNDARY_OCTIC,
    Polynomial,
    boundary_scan,
    branch_and_bound_max,
    certify_monotone_negative,
    find_interior_critical_points,
    isolate_roots,
    refine_critical_point,
)

YMAX = 1 / math.sqrt(3)


def bisect_roots(f, a, b, steps=4000):
    """Sign-change scan plus bisection; the oracle for the octic via u = x^2."""
    roots = []
    grid = [a + (b - a) * k / steps for k in range(steps + 1)]
    for lo, hi in zip(grid, grid[1:]):
        if f(lo) * f(hi) < 0:
            for _ in range(200):
                m = 0.5 * (lo + hi)
                if f(lo) * f(m) <= 0:
                    hi = m
                else:
                    lo = m
            roots.append(0.5 * (lo + hi))
    return roots


# roots ----------------------------------------------------------------------


def test_octic_roots_match_quartic_oracle():
    quartic = lambda u: 5 * u**4 - 5 * u**3 + 4 * u**2 - 4 * u + 1
    expected = [math.sqrt(u) for u in bisect_roots(quartic, 0.0, 1.0)]
    roots = isolate_roots(BOUNDARY_OCTIC, 0, 1)
    assert len(roots) == len(expected) == 2
    for r, x in zip(roots, expected):
        assert r.width < 1e-12
        assert r.lo - Fraction(1, 10**11) <= Fraction(x) <= r.hi + Fraction(1, 10**11)
        assert BOUNDARY_OCTIC(r.lo) * BOUNDARY_OCTIC(r.hi) < 0
    assert float(roots[0].mid) == pytest.approx(0.5726, abs=1e-4)
    assert float(roots[1].mid) == pytest.approx(0.9181, abs=1e-4)


def test_sqrt2_and_no_real_roots():
    (r,) = isolate_roots(Polynomial([-2, 0, 1]), 0, 2)
    assert float(r.mid) == pytest.approx(1.41421356, abs=1e-8)
    assert r.lo**2 < 2 < r.hi**2
    assert isolate_roots(Polynomial([1, 0, 1]), -2, 2) == []


def test_roots_errors_and_edge_cases():
    with pytest.raises(NotSquareFree):
        isolate_roots(Polynomial([1, -2, 1]), 0, 2)
    with pytest.raises(ValueError):
        isolate_roots(Polynomial([-2, 0, 1]), 2, 0)
    assert isolate_roots(Polynomial([3]), 0, 1) == []
    # endpoints that are roots are excluded from the open interval
    (r,) = isolate_roots(Polynomial([-1, 0, 1]), -1, 2)
    assert r.lo < 1 < r.hi


@settings(max_examples=60, deadline=None)
@given(st.sets(st.fractions(min_value=-3, max_value=3, max_denominator=12), min_size=1, max_size=6))
def test_isolation_is_exact_on_known_roots(rts):
    p = Polynomial([1])
    for r in rts:
        p = Polynomial(_mul(p.coeffs, [-r, 1]))
    a, b = Fraction(-7, 2), Fraction(7, 2)
    found = isolate_roots(p, a, b, width=1e-6)
    assert len(found) == len(rts)
    for interval, root in zip(found, sorted(rts)):
        assert interval.lo < root < interval.hi
        assert interval.sign_change and p(interval.lo) * p(interval.hi) < 0


def _mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


# Newton ---------------------------------------------------------------------


def test_refine_f1_interior_point():
    cp = refine_critical_point(F1, (0.6, 0.4))
    assert cp.converged
    assert cp.point.x == pytest.approx(math.sqrt(11 / 30), abs=1e-9)
    assert cp.point.y == pytest.approx(math.sqrt(281 / 1800), abs=1e-9)
    assert cp.value == pytest.approx(1079 / 900, abs=1e-9)
    assert cp.kind == "saddle"


def test_refine_f2_interior_points():
    hi = refine_critical_point(F2, (0.58, 0.21))
    assert hi.converged and hi.kind == "max"
    assert (hi.point.x, hi.point.y) == pytest.approx((0.583, 0.206), abs=5e-4)
    assert hi.value == pytest.approx(1.6787, abs=1e-4)
    lo = refine_critical_point(F2, (0.013, 0.0075))
    assert lo.converged
    assert (lo.point.x, lo.point.y) == pytest.approx((0.0131, 0.00748), abs=5e-4)
    assert lo.value == pytest.approx(1.5559, abs=1e-4)


def test_refine_rejects_exterior_seed():
    with pytest.raises(OutsideDomain):
        refine_critical_point(F1, (0.9, 0.5))


def test_multistart_finds_the_reported_points():
    f1 = find_interior_critical_points(F1, grid=20)
    assert any(abs(c.value - 1079 / 900) < 1e-9 for c in f1)
    f2 = find_interior_critical_points(F2, grid=20)
    values = sorted(round(c.value, 4) for c in f2)
    assert 1.6787 in values and 1.5559 in values


# branch and bound -----------------------------------------------------------


def test_bnb_tol_1e4_examples():
    b1 = branch_and_bound_max(F1, 1e-4)
    assert b1.lower <= 1.3614 + 1e-4 and b1.upper >= 1.3614 and b1.width <= 1e-4
    assert (b1.witness.x, b1.witness.y) == pytest.approx((0.9181, 0.0), abs=1e-2)
    b2 = branch_and_bound_max(F2, 1e-4)
    assert b2.lower <= 1.6788 and b2.upper >= 1.6787 and b2.width <= 1e-4
    assert (b2.witness.x, b2.witness.y) == pytest.approx((0.583, 0.206), abs=1e-2)


@pytest.mark.parametrize("name", ["F1", "F2"])
def test_bnb_sound_against_grid(name, certified, grid_maxima):
    cb = certified[name]
    grid_max, _ = grid_maxima[name]
    assert grid_max <= cb.upper + 1e-15
    assert cb.width <= 1e-6
    assert cb.witness.exactly_in_domain()
    obj = F1 if name == "F1" else F2
    assert obj.value(cb.witness.x, cb.witness.y) >= cb.lower - 1e-15


def test_bnb_deterministic(certified):
    again = branch_and_bound_max(F1, 1e-6)
    assert again == certified["F1"]
    assert again.certificate() == certified["F1"].certificate()


def test_bnb_parallel_keeps_enclosure(certified, grid_maxima, monkeypatch):
    par = branch_and_bound_max(F2, 1e-6, workers=2)
    assert par.width <= 1e-6
    assert grid_maxima["F2"][0] <= par.upper + 1e-15
    assert par.lower <= certified["F2"].upper and certified["F2"].lower <= par.upper
    monkeypatch.setenv("HANKELCERT_WORKERS", "3")
    env = branch_and_bound_max(F1, 1e-4)
    assert env.width <= 1e-4


def test_bnb_constant_objective():
    cb = branch_and_bound_max(constant_objective(0), 1e-6)
    assert cb.lower == cb.upper == 0
    assert cb.boxes_processed == 1


def test_bnb_budget_and_bad_tol():
    with pytest.raises(BudgetExceeded) as info:
        branch_and_bound_max(F1, 1e-9, budget=20, seed_grid=0)
    partial = info.value.partial
    assert partial.upper >= 1.3614 and partial.upper - partial.lower > 1e-9
    with pytest.raises(ValueError):
        branch_and_bound_max(F1, 0)


def test_bnb_huge_tolerance_returns_at_once():
    cb = branch_and_bound_max(F1, 1e300)
    assert cb.boxes_processed == 1 and cb.upper >= 1.3614


def test_certificate_schema(certified):
    cert = certified["F2"].certificate(old_bound=3.25)
    assert set(cert) == {"objective", "upper", "lower", "witness", "tol", "boxes", "improves_over"}
    assert cert["improves_over"] == {"old_bound": 3.25}
    assert len(cert["witness"]) == 2


# boundary -------------------------------------------------------------------


def test_boundary_scan_f1():
    bottom, left, arc = boundary_scan(F1)
    assert bottom.value == pytest.approx(1.3614, abs=1e-4)
    assert bottom.location[0] == pytest.approx(0.9181, abs=1e-4)
    assert bottom.details["discarded_roots"] == [pytest.approx(0.5726, abs=1e-4)]
    assert left.value == pytest.approx(4 / 3, abs=1e-12) and left.location[1] == pytest.approx(YMAX)
    assert arc.value == pytest.approx(4 / 3, abs=1e-12) and arc.location[0] == 0


def test_boundary_scan_f2():
    bottom, left, arc = boundary_scan(F2)
    a = 2 / math.sqrt(7) + 0.8
    assert bottom.value == pytest.approx(a, abs=1e-12) and bottom.location == (0.0, 0.0)
    assert left.value == pytest.approx(a, abs=1e-12) and left.location == (0.0, 0.0)
    assert bottom.method == left.method == "certified monotone (interval)"
    assert arc.value == pytest.approx(7 / 16, abs=1e-12) and arc.location[0] == pytest.approx(0.5)


def test_boundary_scan_constant():
    edges = boundary_scan(constant_objective(Fraction(1, 4)))
    assert [e.value for e in edges] == [pytest.approx(0.25, abs=1e-9)] * 3


def test_certify_monotone_examples():
    bottom, left, _ = boundary_restrictions(F2)
    assert certify_monotone_negative(bottom.deriv_enclose, 0.01, 0.99) is True
    assert certify_monotone_negative(left.deriv_enclose, 0.01, YMAX - 0.01) is True
    assert certify_monotone_negative(lambda X: 2 * X, 0.1, 1) is False


def test_certify_monotone_inconclusive():
    # derivative -(x - 1/2)^2 touches zero inside the interval
    with pytest.raises(Inconclusive):
        certify_monotone_negative(lambda X: -((X - 0.5) ** 2), 0.0, 1.0, budget=2000)
