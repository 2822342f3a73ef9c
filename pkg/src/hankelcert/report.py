"""Verification runs and the reproduction report (JSON, CSV and text)."""

from __future__ import annotations

import csv
import io
import json
import math
import random
from fractions import Fraction

from hankelcert import functions
from hankelcert.grunsky import (
    CoefficientVector,
    TestVector,
    coefficients_from_table,
    derived_omega33,
    derived_omega35,
    fekete_szego,
    omega_cascade_bounds,
    quadratic_form_slack,
    verify_coefficient_identities,
)
from hankelcert.hankel import (
    REFERENCE,
    h2_from_coeffs,
    h2_from_grunsky,
    h3_from_coeffs,
    h3_from_grunsky,
    reduced_a4_a5,
)
from hankelcert.objective import F1, F2, get_objective
from hankelcert.optimize import (
    BOUNDARY_OCTIC,
    boundary_scan,
    branch_and_bound_max,
    find_interior_critical_points,
    isolate_roots,
)
from hankelcert.series import Series1, grunsky_from_series, odd_transform

__all__ = [
    "FLOAT_TOL",
    "SECTIONS",
    "verify_function",
    "verification_json",
    "build_report",
    "render",
    "to_jsonable",
]

FLOAT_TOL = 1e-10
SLACK_TOL = 1e-12
MAJORANT_TOL = 1e-12
SECTIONS = ("identities", "bounds", "critical", "boundary", "roots", "comparison")
OLD_BOUND = {"F1": REFERENCE.h2_old, "F2": REFERENCE.h3_old}


def to_jsonable(value):
    """Exact rationals become strings, complex numbers their modulus."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, complex):
        if value.imag == 0:
            return value.real
        return abs(value)
    return value


def _is_zero(value, exact: bool) -> bool:
    if exact and isinstance(value, (int, Fraction)):
        return value == 0
    return abs(value) <= FLOAT_TOL


def _same(a, b, exact: bool) -> bool:
    if exact and isinstance(a, (int, Fraction)) and isinstance(b, (int, Fraction)):
        return a == b
    return abs(a - b) <= FLOAT_TOL * max(1.0, abs(a), abs(b))


def test_vectors(n: int, seed: int = 0):
    """``(1, 0)``, ``(0, 1)`` and ``n`` seeded random complex Gaussian vectors."""
    rng = random.Random(seed)
    vecs = [TestVector(1, 0), TestVector(0, 1)]
    for _ in range(n):
        vecs.append(TestVector(complex(rng.gauss(0, 1), rng.gauss(0, 1)), complex(rng.gauss(0, 1), rng.gauss(0, 1))))
    return vecs


test_vectors.__test__ = False


def verify_function(f: Series1, name: str = "f", *, overrides=None, n_vectors: int = 100, seed: int = 0) -> dict:
    """Run the series -> Grunsky -> identity pipeline for one function.

    ``overrides`` maps ``(p, q)`` to replacement table entries (used to
    corrupt a table on purpose).  The returned dict carries every computed
    quantity plus a ``checks`` map of booleans and an overall ``passed``.
    """
    f2 = odd_transform(f)
    table = grunsky_from_series(f2)
    if overrides:
        table = table.replace(overrides)
    exact = table.is_exact and all(isinstance(f[k], (int, Fraction)) for k in range(2, 6))
    coeffs = CoefficientVector(f[2], f[3], f[4], f[5])
    residuals = verify_coefficient_identities(table, coeffs)
    slacks = [quadratic_form_slack(table, x) for x in test_vectors(n_vectors, seed)]
    slack_min = min(slacks, key=lambda s: float(s))
    cascade = omega_cascade_bounds(table, tol=0.0 if exact else SLACK_TOL)
    from_table = coefficients_from_table(table)
    h2_c, h3_c = h2_from_coeffs(coeffs), h3_from_coeffs(coeffs)
    h2_t, h3_t = h2_from_grunsky(table), h3_from_grunsky(table)
    a4r, a5r = reduced_a4_a5(table)
    x, y = abs(complex(table[1, 1])), abs(complex(table[1, 3]))
    in_d1 = x <= 1 + 1e-15 and 1 - x * x - 3 * y * y >= -1e-14
    f1 = F1.value(x, y) if in_d1 else math.nan
    f2v = F2.value(x, y) if in_d1 else math.nan
    checks = {
        "residuals_zero": all(_is_zero(r, exact) for r in residuals),
        "slack_nonnegative": (slack_min >= 0) if exact else (float(slack_min) >= -SLACK_TOL),
        "cascade": cascade.ok,
        "odd_support": table.has_odd_support(),
        "omega33_derived": _same(derived_omega33(table), table[3, 3], exact),
        "omega35_derived": _same(derived_omega35(table), table[3, 5], exact),
        "h2_cross": _same(h2_c, h2_t, exact) and _same(h2_from_coeffs(from_table), h2_t, exact),
        "h3_cross": _same(h3_c, h3_t, exact) and _same(h3_from_coeffs(from_table), h3_t, exact),
        "reduced_a4_a5": _same(a4r, from_table.a4, exact) and _same(a5r, from_table.a5, exact),
        "fekete_szego": _same(abs(fekete_szego(table)), abs(coeffs.a3 - coeffs.a2**2), exact),
        "majorant_f1": in_d1 and abs(h2_t) <= f1 + MAJORANT_TOL,
        "majorant_f2": in_d1 and abs(h3_t) <= f2v + MAJORANT_TOL,
    }
    return {
        "function": name,
        "order": f.order,
        "mode": "exact" if exact else "floating",
        "residuals": residuals,
        "slack_min": slack_min,
        "cascade_margins": list(cascade.margins),
        "omega": {"11": table[1, 1], "13": table[1, 3], "15": table[1, 5], "17": table[1, 7], "33": table[3, 3], "35": table[3, 5]},
        "h2": h2_t,
        "h3": h3_t,
        "F1": f1,
        "F2": f2v,
        "checks": checks,
        "passed": all(checks.values()),
    }


def verification_json(result: dict) -> dict:
    """The public verification schema (plus the pass flag)."""
    return {
        "function": result["function"],
        "order": result["order"],
        "residuals": [to_jsonable(r) for r in result["residuals"]],
        "slack_min": to_jsonable(result["slack_min"]),
        "cascade_margins": [float(m) for m in result["cascade_margins"]],
        "passed": result["passed"],
    }


# full report ------------------------------------------------------------------


def _row(rows, quantity, value, lower=None, upper=None, source=""):
    rows.append({"quantity": quantity, "value": value, "lower": lower, "upper": upper, "source": source})


def _identity_rows(rows, data, order):
    suite = []
    for name in functions.SUITE:
        res = verify_function(functions.resolve(name, order), name)
        suite.append({k: res[k] for k in ("function", "order", "mode", "passed", "checks")} | {
            "residuals": [to_jsonable(r) for r in res["residuals"]],
            "slack_min": to_jsonable(res["slack_min"]),
            "cascade_margins": res["cascade_margins"],
            "h2": to_jsonable(res["h2"]),
            "h3": to_jsonable(res["h3"]),
        })
        worst = max(abs(r) for r in res["residuals"])
        _row(rows, f"identities.{name}.max_residual", float(worst), source="grunsky")
        _row(rows, f"identities.{name}.slack_min", float(res["slack_min"]), source="grunsky")
        _row(rows, f"identities.{name}.abs_h2", float(abs(res["h2"])), source="hankel")
        _row(rows, f"identities.{name}.abs_h3", float(abs(res["h3"])), source="hankel")
        _row(rows, f"identities.{name}.passed", res["passed"], source="verify")
    data["identities"] = suite
    return all(s["passed"] for s in suite)


def _bounds_rows(rows, data, objectives, tol, workers):
    out = {}
    for name in objectives:
        cb = branch_and_bound_max(name, tol, workers=workers)
        out[name] = cb.certificate(OLD_BOUND[name])
        _row(rows, f"bound.{name}", cb.upper, cb.lower, cb.upper, "branch_and_bound")
        _row(rows, f"bound.{name}.witness_x", cb.witness.x, source="branch_and_bound")
        _row(rows, f"bound.{name}.witness_y", cb.witness.y, source="branch_and_bound")
        _row(rows, f"bound.{name}.boxes", cb.boxes_processed, source="branch_and_bound")
    data["bounds"] = out
    return out


def _critical_rows(rows, data, objectives, grid):
    out = {}
    for name in objectives:
        pts = find_interior_critical_points(name, grid)
        out[name] = [
            {"x": c.point.x, "y": c.point.y, "value": c.value, "gradient_norm": c.gradient_norm, "kind": c.kind}
            for c in pts
        ]
        for k, c in enumerate(pts, 1):
            _row(rows, f"critical.{name}.{k}.x", c.point.x, source="newton")
            _row(rows, f"critical.{name}.{k}.y", c.point.y, source="newton")
            _row(rows, f"critical.{name}.{k}.value", c.value, source=f"newton ({c.kind})")
    data["critical_points"] = out


def _boundary_rows(rows, data, objectives):
    out = {}
    for name in objectives:
        edges = boundary_scan(name)
        out[name] = [
            {"edge": e.edge, "max": e.value, "at": list(e.location), "method": e.method} for e in edges
        ]
        for e in edges:
            _row(rows, f"boundary.{name}.{e.edge}", e.value, source=e.method)
    data["boundary"] = out


def _roots_rows(rows, data):
    roots = isolate_roots(BOUNDARY_OCTIC, 0, 1)
    entries = []
    for ri in roots:
        x = float(ri.mid)
        admissible = 2 * ri.mid * ri.mid > 1
        entries.append({
            "interval": [str(ri.lo), str(ri.hi)],
            "root": x,
            "stationary": admissible,
            "F1": F1.value(x, 0.0),
        })
        _row(rows, "roots.octic.root", x, float(ri.lo), float(ri.hi), "sturm" if admissible else "sturm (spurious)")
    data["roots"] = {"polynomial": "5x^8 - 5x^6 + 4x^4 - 4x^2 + 1", "interval": [0, 1], "roots": entries}


def _comparison_rows(rows, data, bounds):
    out = {}
    for name, cert in bounds.items():
        old = OLD_BOUND[name]
        out[name] = {"new": cert["upper"], "old": old, "ratio": cert["upper"] / old, "improved": cert["upper"] < old}
        _row(rows, f"comparison.{name}.ratio", cert["upper"] / old, source="improvement vs earlier bound")
        _row(rows, f"comparison.{name}.old_bound", old, source="earlier bound")
    data["comparison"] = out
    return all(v["improved"] for v in out.values())


def build_report(
    *,
    sections=SECTIONS,
    objectives=("F1", "F2"),
    tol: float = 1e-6,
    order: int = 9,
    grid: int = 50,
    workers: int | None = None,
) -> dict:
    """Compute the requested report sections.

    Returns ``{"data": ..., "rows": [...], "passed": bool}``; rows are the flat
    ``quantity,value,lower,upper,source`` records used for CSV and text.
    """
    objectives = tuple(get_objective(o).name for o in objectives)
    rows, data = [], {}
    passed = True
    bounds = None
    if "identities" in sections:
        passed &= _identity_rows(rows, data, order)
    if "bounds" in sections or "comparison" in sections:
        bounds = _bounds_rows(rows, data, objectives, tol, workers)
        if "bounds" not in sections:
            rows[:] = [r for r in rows if not r["quantity"].startswith("bound.")]
            data.pop("bounds")
    if "critical" in sections:
        _critical_rows(rows, data, objectives, grid)
    if "boundary" in sections:
        _boundary_rows(rows, data, objectives)
    if "roots" in sections:
        _roots_rows(rows, data)
    if "comparison" in sections:
        passed &= _comparison_rows(rows, data, bounds)
    return {"data": data, "rows": rows, "passed": bool(passed)}


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def render(report: dict, fmt: str = "text") -> str:
    """Serialise a report as ``json``, ``csv`` or aligned ``text``."""
    if fmt == "json":
        return json.dumps({"passed": report["passed"], **report["data"]}, indent=2, default=to_jsonable) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["quantity", "value", "lower", "upper", "source"])
        for r in report["rows"]:
            writer.writerow([r["quantity"]] + [_csv_cell(r[k]) for k in ("value", "lower", "upper")] + [r["source"]])
        return buf.getvalue()
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    width = max((len(r["quantity"]) for r in report["rows"]), default=10)
    lines = []
    for r in report["rows"]:
        enc = ""
        if r["lower"] is not None:
            enc = f"  [{_fmt(r['lower'])}, {_fmt(r['upper'])}]"
        lines.append(f"{r['quantity']:<{width}}  {_fmt(r['value']):>18}{enc}  ({r['source']})")
    lines.append(f"{'all checks passed':<{width}}  {_fmt(report['passed']):>18}")
    return "\n".join(lines) + "\n"


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)
