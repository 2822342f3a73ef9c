"""Certified maximisation of the objectives over D1."""

from hankelcert.optimize.bnb import DEFAULT_BUDGET, DEFAULT_TOL, CertifiedBound, branch_and_bound_max
from hankelcert.optimize.boundary import EdgeMax, boundary_scan, certify_monotone_negative, interval_scan_1d
from hankelcert.optimize.newton import CriticalPoint, find_interior_critical_points, refine_critical_point
from hankelcert.optimize.roots import BOUNDARY_OCTIC, Polynomial, RootInterval, isolate_roots

__all__ = [
    "BOUNDARY_OCTIC",
    "CertifiedBound",
    "CriticalPoint",
    "DEFAULT_BUDGET",
    "DEFAULT_TOL",
    "EdgeMax",
    "Polynomial",
    "RootInterval",
    "boundary_scan",
    "branch_and_bound_max",
    "certify_monotone_negative",
    "find_interior_critical_points",
    "interval_scan_1d",
    "isolate_roots",
    "refine_critical_point",
]
