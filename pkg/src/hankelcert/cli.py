"""Command line interface: ``hankelcert {verify,maximize,roots,report}``.

Exit status is 0 only when every executed check passes; 1 signals a failed
check, 2 a usage error and 3 an exhausted branch-and-bound budget.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from hankelcert import functions
from hankelcert.errors import BudgetExceeded, HankelCertError
from hankelcert.objective import get_objective
from hankelcert.optimize import DEFAULT_BUDGET, DEFAULT_TOL, BOUNDARY_OCTIC, Polynomial, branch_and_bound_max, isolate_roots
from hankelcert.report import OLD_BOUND, SECTIONS, build_report, render, to_jsonable, verification_json, verify_function

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
MIN_VERIFY_ORDER = 7


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _omega_override(text: str):
    try:
        key, value = text.split("=", 1)
        p, q = (int(s) for s in key.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("expected P,Q=VALUE, e.g. 1,1=3/2") from None
    return (p, q), value.strip()


def _emit(text: str, output: str | None) -> None:
    if output and output != "-":
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["quantity", "value", "lower", "upper", "source"])
    for row in rows:
        writer.writerow(["" if v is None else (repr(v) if isinstance(v, float) else v) for v in row])
    return buf.getvalue()


def _g12(value) -> str:
    return f"{value:.12g}" if isinstance(value, float) else str(value)


# verify ---------------------------------------------------------------------


def cmd_verify(args) -> int:
    if args.order < MIN_VERIFY_ORDER:
        print(f"error: --order must be at least {MIN_VERIFY_ORDER} (omega17 is needed)", file=sys.stderr)
        return EXIT_USAGE
    source = args.coeffs if args.coeffs is not None else args.function
    name = f"coeffs:{args.coeffs}" if args.coeffs is not None else args.function
    f = functions.resolve(source, args.order, args.mode)
    overrides = {}
    for attr, key in (("omega11", (1, 1)), ("omega13", (1, 3)), ("omega15", (1, 5)), ("omega17", (1, 7))):
        if getattr(args, attr) is not None:
            overrides[key] = getattr(args, attr)
    for key, value in args.omega or []:
        overrides[key] = value
    parsed = {k: functions._parse_number(v, args.mode) for k, v in overrides.items()}
    result = verify_function(f, name, overrides=parsed, n_vectors=args.vectors, seed=args.seed)
    payload = verification_json(result)
    if args.format == "json":
        text = json.dumps(payload, indent=2) + "\n"
    elif args.format == "csv":
        rows = [(f"residual.{k}", to_jsonable(r), None, None, "identity") for k, r in enumerate(result["residuals"], 1)]
        rows.append(("slack_min", to_jsonable(result["slack_min"]), None, None, "quadratic form"))
        rows += [(f"cascade_margin.{k}", m, None, None, "cascade") for k, m in enumerate(result["cascade_margins"], 1)]
        rows += [(f"check.{k}", v, None, None, "verify") for k, v in result["checks"].items()]
        text = _csv(rows)
    else:
        lines = [f"function: {name}   order: {f.order}   mode: {result['mode']}"]
        for k, r in enumerate(result["residuals"], 1):
            lines.append(f"  residual {k}: {_g12(to_jsonable(r))}")
        lines.append(f"  slack_min: {float(result['slack_min']):.12g}")
        lines.append("  cascade margins: " + ", ".join(_g12(float(m)) for m in result["cascade_margins"]))
        for k, v in result["checks"].items():
            lines.append(f"  {k:<18} {'ok' if v else 'FAIL'}")
        lines.append("PASS" if result["passed"] else "FAIL")
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    if not result["passed"]:
        failed = [k for k, v in result["checks"].items() if not v]
        print(f"verification failed: {', '.join(failed)}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


# maximize -------------------------------------------------------------------


def cmd_maximize(args) -> int:
    obj = get_objective(args.objective)
    try:
        cb = branch_and_bound_max(obj, args.tol, budget=args.budget, workers=args.workers)
        status = EXIT_OK
    except BudgetExceeded as exc:
        cb = exc.partial
        status = EXIT_BUDGET
        print(f"error: {exc}", file=sys.stderr)
    cert = cb.certificate(OLD_BOUND[obj.name])
    if args.format == "json":
        text = json.dumps(cert, indent=2) + "\n"
    elif args.format == "csv":
        text = _csv([
            (f"max.{obj.name}", cb.upper, cb.lower, cb.upper, "branch_and_bound"),
            ("witness_x", cb.witness.x, None, None, "branch_and_bound"),
            ("witness_y", cb.witness.y, None, None, "branch_and_bound"),
            ("boxes", cb.boxes_processed, None, None, "branch_and_bound"),
            ("old_bound", OLD_BOUND[obj.name], None, None, "earlier bound"),
        ])
    else:
        text = (
            f"{obj.name}: max in [{cb.lower:.12g}, {cb.upper:.12g}]  (tol {cb.tolerance:g}, {cb.boxes_processed} boxes)\n"
            f"witness: ({cb.witness.x:.12g}, {cb.witness.y:.12g})\n"
            f"earlier bound: {OLD_BOUND[obj.name]:.12g}\n"
        )
    _emit(text, args.output)
    if status == EXIT_OK and not cb.upper - cb.lower <= args.tol:
        return EXIT_FAIL
    return status


# roots ----------------------------------------------------------------------


def cmd_roots(args) -> int:
    poly = Polynomial([Fraction(c) for c in args.coeffs.split(",")]) if args.coeffs else BOUNDARY_OCTIC
    a, b = (Fraction(s.strip()) for s in args.interval.split(","))
    roots = isolate_roots(poly, a, b, args.width)
    if args.format == "json":
        text = json.dumps(
            {
                "polynomial": [str(c) for c in poly.coeffs],
                "interval": [str(a), str(b)],
                "roots": [
                    {"lo": str(r.lo), "hi": str(r.hi), "approx": float(r.mid), "sign_change": r.sign_change}
                    for r in roots
                ],
            },
            indent=2,
        ) + "\n"
    elif args.format == "csv":
        text = _csv([("root", float(r.mid), float(r.lo), float(r.hi), "sturm") for r in roots])
    else:
        lines = [f"{len(roots)} root(s) in ({a}, {b})"]
        lines += [f"  {float(r.mid):.12g}  in ({r.lo}, {r.hi})" for r in roots]
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    return EXIT_OK


# report ---------------------------------------------------------------------


def cmd_report(args) -> int:
    objectives = ("F1", "F2") if args.objective == "both" else (args.objective.upper(),)
    sections = tuple(args.section) if args.section else SECTIONS
    if "all" in sections:
        sections = SECTIONS
    report = build_report(
        sections=sections, objectives=objectives, tol=args.tol, order=args.order, grid=args.grid, workers=args.workers
    )
    _emit(render(report, args.format), args.output)
    return EXIT_OK if report["passed"] else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hankelcert",
        description="Certified Hankel determinant bounds for univalent functions via Grunsky coefficients.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats=("json", "text", "csv"), default="json"):
        p.add_argument("--format", choices=formats, default=default)
        p.add_argument("--output", "-o", help="write to this file instead of stdout")

    v = sub.add_parser("verify", help="check the Grunsky identity chain for one function")
    src = v.add_mutually_exclusive_group()
    src.add_argument("--function", default="koebe", help="built-in name, e.g. koebe, koebe-rot:pi/4, identity")
    src.add_argument("--coeffs", help="comma separated a2,a3,... (fractions or decimals)")
    v.add_argument("--order", type=int, default=9, help="truncation order of f (default 9)")
    v.add_argument("--mode", choices=("exact", "floating"), default="exact")
    for q in (11, 13, 15, 17):
        v.add_argument(f"--omega{q}", help=f"override omega{q} in the computed table")
    v.add_argument("--omega", type=_omega_override, action="append", metavar="P,Q=VALUE", help="override any entry")
    v.add_argument("--vectors", type=int, default=100, help="random test vectors for the quadratic form")
    v.add_argument("--seed", type=int, default=0)
    common(v)
    v.set_defaults(func=cmd_verify)

    m = sub.add_parser("maximize", help="certified maximum of F1 or F2 over D1")
    m.add_argument("--objective", type=str.lower, choices=("f1", "f2"), required=True)
    m.add_argument("--tol", type=_positive_float, default=DEFAULT_TOL)
    m.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    m.add_argument("--workers", type=int, default=None, help="worker threads (default: $HANKELCERT_WORKERS or 1)")
    common(m)
    m.set_defaults(func=cmd_maximize)

    r = sub.add_parser("roots", help="isolate real roots with Sturm sequences")
    r.add_argument("--coeffs", help="ascending rational coefficients (default: the F1 boundary octic)")
    r.add_argument("--interval", default="0,1", help="open interval A,B (default 0,1)")
    r.add_argument("--width", type=_positive_float, default=1e-12)
    common(r)
    r.set_defaults(func=cmd_roots)

    p = sub.add_parser("report", help="full reproduction report")
    p.add_argument("--objective", type=str.lower, choices=("f1", "f2", "both"), default="both")
    p.add_argument("--section", action="append", choices=SECTIONS + ("all",))
    p.add_argument("--tol", type=_positive_float, default=DEFAULT_TOL)
    p.add_argument("--order", type=int, default=9)
    p.add_argument("--grid", type=int, default=50, help="multi-start seed grid per axis")
    p.add_argument("--workers", type=int, default=None)
    common(p, default="text")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (HankelCertError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
