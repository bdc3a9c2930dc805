"""Composite verification suites: one callable per claim family.

Each suite returns a :class:`~versine.reports.GridReport` so the CLI and
the test harness share one vocabulary (and one exit-code convention).
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional

from .ball import PiMultiple, PrecReal, as_ball, pi_ball, working_prec
from .bounds import pole_growth_probe, sweep_simplex
from .derivatives import deriv
from .identities import (
    fejer_cosine_closed,
    fejer_cosine_series,
    halfpi_gap_pair,
    pi_series,
    terms_for_accuracy,
)
from .monotonic import check_monotonic, claims_for, classify_zeros
from .numbers import euler, polygamma_quarter_gap
from .reports import GridReport

__all__ = [
    "subadditivity_report",
    "monotonicity_reports",
    "blend_identity_report",
    "halfpi_gap_report",
    "quarter_gap_report",
    "pi_series_report",
    "zeros_report",
    "growth_report",
    "run_all",
    "DEFAULT_MONO_DENSITY",
]

DEFAULT_MONO_DENSITY = {
    "recip_versine": 100,
    "recip_coversine": 60,
    "exp_cot": 60,
    "exp_inv_one_plus_tan": 60,
    "fejer_cosine_sum": 60,
    "cosecant": 60,
    "cot_half": 60,
}


def subadditivity_report(n: int, grid_density: int, prec: int) -> GridReport:
    return sweep_simplex(n, grid_density, prec)


def monotonicity_reports(fn_id: str, prec: int,
                         grid_density: Optional[int] = None) -> list[GridReport]:
    density = grid_density or DEFAULT_MONO_DENSITY.get(fn_id, 60)
    return [check_monotonic(claim, density, prec) for claim in claims_for(fn_id)]


def _interval_grid(lo: float, hi: float, count: int, prec: int) -> list[PrecReal]:
    w = working_prec(prec)
    lo_b, hi_b = as_ball(repr(lo), w), as_ball(repr(hi), w)
    step = (hi_b - lo_b).mul_fraction(Fraction(1, count - 1))
    return [lo_b + step.mul_fraction(Fraction(i)) for i in range(count)]


def blend_identity_report(points: int = 30, eps: float = 1e-12,
                          prec: int = 128) -> GridReport:
    """Partial sums of the Fejer/cosine-power series against the closed form.

    Grid over [0.4, pi - 0.4]; the term count at each point comes from
    the certified tail bound at the requested accuracy, and the two
    enclosures must overlap.
    """
    grid = _interval_grid(0.4, math.pi - 0.4, points, prec)
    failed, inconclusive = [], []
    worst = None
    worst_at = None
    for xb in grid:
        terms = terms_for_accuracy(xb, eps, prec)
        series = fejer_cosine_series(xb, terms, prec)
        closed = fejer_cosine_closed(xb, prec)
        gap = series.value - closed
        if worst is None or abs(gap).midpoint_cmp(abs(worst)) > 0:
            worst, worst_at = gap, (float(xb.mid),)
        if not series.value.overlaps(closed):
            failed.append((float(xb.mid),))
        if series.tail_bound > eps:
            failed.append((float(xb.mid),))
    return GridReport(
        suite="identity_blend_closed_form",
        n=0,
        points=len(grid),
        all_passed=not failed and not inconclusive,
        worst_margin=worst,
        worst_point=worst_at,
        extremum_location=worst_at,
        failed=failed,
        inconclusive=inconclusive,
        meta={"eps": eps, "precision_bits": prec},
    )


def halfpi_gap_report(points: int = 30, prec: int = 128) -> GridReport:
    """``pi/2 - |x|`` against its sine/cosine-power series on +-grid."""
    base = _interval_grid(0.4, math.pi - 0.4, points, prec)
    grid = base + [-xb for xb in base]
    failed = []
    worst, worst_at = None, None
    for xb in grid:
        terms = terms_for_accuracy(abs(xb), 1e-12, prec)
        lhs, rhs = halfpi_gap_pair(xb, terms, prec)
        gap = lhs - rhs.value
        if worst is None or abs(gap).midpoint_cmp(abs(worst)) > 0:
            worst, worst_at = gap, (float(xb.mid),)
        if not lhs.overlaps(rhs.value):
            failed.append((float(xb.mid),))
    return GridReport(
        suite="identity_halfpi_gap",
        n=0,
        points=len(grid),
        all_passed=not failed,
        worst_margin=worst,
        worst_point=worst_at,
        extremum_location=worst_at,
        failed=failed,
        meta={"precision_bits": prec},
    )


def quarter_gap_report(max_m: int = 5, prec: int = 128,
                       rel_tol: float = 1e-20) -> GridReport:
    """Polygamma gap at the quarter points against ``-pi (2 pi)^(2m) |E_2m|``."""
    failed = []
    worst, worst_at = None, None
    w = working_prec(prec)
    for m in range(1, max_m + 1):
        gap = polygamma_quarter_gap(m, prec)
        expected = -(pi_ball(w) ** (2 * m + 1)).scale2(2 * m).mul_fraction(
            Fraction(abs(euler(2 * m)))
        )
        diff = gap - expected
        rel = abs(diff.mid_fraction()) / abs(expected.mid_fraction())
        if worst is None or rel > worst:
            worst_ball, worst, worst_at = diff, rel, (m,)
        if not gap.overlaps(expected) or rel > Fraction(rel_tol):
            failed.append((m,))
    return GridReport(
        suite="identity_polygamma_quarter_gap",
        n=max_m,
        points=max_m,
        all_passed=not failed,
        worst_margin=worst_ball,
        worst_point=worst_at,
        extremum_location=worst_at,
        failed=failed,
        meta={"rel_tol": rel_tol, "precision_bits": prec},
    )


def pi_series_report(terms: int = 60, prec: int = 128,
                     radius_bound: float = 1e-15) -> GridReport:
    """The rational-coefficient series must enclose pi tightly and increase."""
    se = pi_series(terms, prec)
    pi_true = pi_ball(working_prec(prec) + 64)
    failed = []
    if not se.value.contains(pi_true.mid_fraction()):
        failed.append(("enclosure",))
    if se.value.rad_fraction() > Fraction(radius_bound):
        failed.append(("radius",))
    prev = None
    for k in range(1, terms + 1):
        mid = pi_series(k, 64).value.mid_fraction()
        if prev is not None and not mid > prev:
            failed.append((f"partial_{k}",))
            break
        prev = mid
    return GridReport(
        suite="pi_series",
        n=0,
        points=terms,
        all_passed=not failed,
        worst_margin=se.value - pi_true,
        worst_point=None,
        extremum_location=None,
        failed=failed,
        meta={"terms": terms, "radius_bound": radius_bound,
              "tail_bound": se.tail_bound, "precision_bits": prec},
    )


def zeros_report(max_order: int = 20) -> GridReport:
    cz = classify_zeros(max_order)
    failed = [] if cz.ok else [("classification",)]
    return GridReport(
        suite="zero_classification",
        n=max_order,
        points=(max_order + 1) * cz.cos_samples,
        all_passed=cz.ok,
        worst_margin=None,
        worst_point=None,
        extremum_location=None,
        failed=failed,
        meta={
            "zero_orders_at_pi": cz.zero_orders_at_pi,
            "parity_structure_ok": cz.parity_structure_ok,
            "nonzero_certified": cz.nonzero_certified,
        },
    )


def growth_report(n: int = 0, prec: int = 128, threshold: float = 1e6) -> GridReport:
    seq = pole_growth_probe(n, prec, threshold=threshold)
    reached = bool(seq) and seq[-1].lower_fraction() > Fraction(threshold)
    increasing = all(b.mid_fraction() > a.mid_fraction() for a, b in zip(seq[1:], seq[2:]))
    ok = reached and increasing
    return GridReport(
        suite="unbounded_growth_probe",
        n=n,
        points=len(seq),
        all_passed=ok,
        worst_margin=seq[-1] if seq else None,
        worst_point=(PiMultiple(Fraction(1, 2 ** len(seq))),) if seq else None,
        extremum_location=None,
        failed=[] if ok else [("threshold" if not reached else "growth",)],
        meta={"threshold": threshold, "first": str(seq[0]) if seq else "",
              "precision_bits": prec},
    )


def run_all(prec: int = 128, grid_density: int = 100,
            max_order: int = 20) -> list[GridReport]:
    """The full verification battery (the CI entry point)."""
    reports: list[GridReport] = []
    for n in range(6):
        reports.append(subadditivity_report(n, grid_density, prec))
    for fn_id in DEFAULT_MONO_DENSITY:
        reports.extend(monotonicity_reports(fn_id, prec))
    reports.append(zeros_report(max_order))
    reports.append(blend_identity_report(prec=prec))
    reports.append(halfpi_gap_report(prec=prec))
    reports.append(quarter_gap_report(prec=prec))
    reports.append(pi_series_report(prec=prec))
    reports.append(growth_report(prec=prec))
    return reports
