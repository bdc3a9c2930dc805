"""Sharp additivity bounds for derivatives of 1/(1 - cos x).

On the simplex ``x, y > 0, x + y <= pi`` the n-th derivative satisfies

    even n:  d^n(x) + d^n(y) - d^n(x+y) >= (2/(n+2)) (2^(n+2)-1)^2 |B_(n+2)|
    odd n:   d^n(x+y) - d^n(x) - d^n(y) >= 2 |E_(n+1)|

with equality exactly at x = y = pi/2.  This module computes the bounds
exactly from Bernoulli/Euler numbers, evaluates the additivity defect
and its edge reductions as enclosures, and sweeps uniform simplex grids
to certify the inequalities pointwise.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Union

from .ball import DomainError, PiMultiple, PoleProximityError, PrecReal, pi_ball, working_prec
from .derivatives import Point, deriv
from .numbers import bernoulli, euler
from .reports import GridReport

__all__ = [
    "subadditivity_bound",
    "superadditivity_bound",
    "additivity_defect",
    "edge_defect",
    "edge_pair_sum",
    "sweep_simplex",
    "pole_growth_probe",
]


def subadditivity_bound(n: int) -> Fraction:
    """Best lower bound for the even-order defect: (2/(n+2))(2^(n+2)-1)^2 |B_(n+2)|."""
    if n < 0 or n % 2 != 0:
        raise DomainError("subadditivity_bound is defined for even n >= 0")
    m = n + 2
    return Fraction(2, m) * (2**m - 1) ** 2 * abs(bernoulli(m))


def superadditivity_bound(n: int) -> int:
    """Best lower bound for the odd-order reversed defect: 2 |E_(n+1)|."""
    if n < 1 or n % 2 != 1:
        raise DomainError("superadditivity_bound is defined for odd n >= 1")
    return 2 * abs(euler(n + 1))


def _coerce_pair(x: Point, y: Point, prec: int):
    w = working_prec(prec)
    if isinstance(x, PiMultiple) and isinstance(y, PiMultiple):
        rx, ry = x.ratio, y.ratio
        if rx <= 0 or ry <= 0 or rx + ry > 1:
            raise DomainError("point outside the simplex x, y > 0, x + y <= pi")
        return x, y, PiMultiple(rx + ry)
    from .ball import as_ball

    xb, yb = as_ball(x, w), as_ball(y, w)
    s = xb + yb
    if not (xb.is_positive() and yb.is_positive()) or (s - pi_ball(w)).is_positive():
        raise DomainError("point outside the simplex x, y > 0, x + y <= pi")
    return xb, yb, s


def additivity_defect(
    n: int, x: Point, y: Point, prec: int, tol_bits: Optional[int] = None
) -> PrecReal:
    """``d^n(x) + d^n(y) - d^n(x+y)`` on the simplex (series route)."""
    xx, yy, ss = _coerce_pair(x, y, prec)
    return (
        deriv(n, xx, prec, tol_bits=tol_bits)
        + deriv(n, yy, prec, tol_bits=tol_bits)
        - deriv(n, ss, prec, tol_bits=tol_bits)
    )


def _edge_points(y: Point, prec: int):
    w = working_prec(prec)
    if isinstance(y, PiMultiple):
        if not 0 < y.ratio < 1:
            raise DomainError("edge parameter must lie in (0, pi)")
        return y, PiMultiple(1 - y.ratio)
    from .ball import as_ball

    yb = as_ball(y, w)
    if not yb.is_positive() or (yb - pi_ball(w)).is_positive():
        raise DomainError("edge parameter must lie in (0, pi)")
    return yb, pi_ball(w) - yb


def edge_defect(n: int, y: Point, prec: int) -> PrecReal:
    """Even-order defect restricted to x + y = pi: d^n(pi-y) + d^n(y) - d^n(pi).

    Nonincreasing on (0, pi/2], nondecreasing on [pi/2, pi).
    """
    if n % 2 != 0:
        raise DomainError("edge_defect takes even n (use edge_pair_sum for odd)")
    yy, comp = _edge_points(y, prec)
    return deriv(n, comp, prec) + deriv(n, yy, prec) - deriv(n, PiMultiple(Fraction(1)), prec)


def edge_pair_sum(n: int, y: Point, prec: int) -> PrecReal:
    """Odd-order edge quantity d^n(pi-y) + d^n(y) (the d^n(pi) term vanishes).

    Nondecreasing on (0, pi/2], nonincreasing on [pi/2, pi).
    """
    if n % 2 != 1:
        raise DomainError("edge_pair_sum takes odd n (use edge_defect for even)")
    yy, comp = _edge_points(y, prec)
    return deriv(n, comp, prec) + deriv(n, yy, prec)


def sweep_simplex(n: int, grid_density: int, prec: int) -> GridReport:
    """Certify the sharp additivity inequality on a uniform simplex grid.

    Grid points are ``(i, j) * pi / G`` with ``i, j >= 1`` and
    ``i + j <= G``; for even G this includes the equality point
    (pi/2, pi/2) exactly, where the enclosure is required to contain the
    exact bound instead of exceeding it.  Points whose coordinates fall
    inside the pole guard are skipped and counted separately.  The
    reduction over grid points is a fixed lexicographic fold, so the
    report does not depend on evaluation order.
    """
    if grid_density < 2:
        raise DomainError("grid_density must be >= 2")
    g = grid_density
    even = n % 2 == 0
    bound = Fraction(subadditivity_bound(n) if even else superadditivity_bound(n))

    values: dict[int, Optional[PrecReal]] = {}
    for k in range(1, g + 1):
        try:
            # sign margins only need tails below the rounding floor at
            # prec, not the full working-precision floor
            values[k] = deriv(n, PiMultiple(Fraction(k, g)), prec, tol_bits=prec + 16)
        except PoleProximityError:
            values[k] = None

    eq_idx = (g // 2, g // 2) if g % 2 == 0 else None
    points = 0
    skipped = 0
    failed: list = []
    inconclusive: list = []
    equality_points: list = []
    worst_mid: Optional[PrecReal] = None
    worst_at: Optional[tuple] = None

    for i in range(1, g):
        vi = values[i]
        for j in range(1, g - i + 1):
            vj, vij = values[j], values[i + j]
            if vi is None or vj is None or vij is None:
                skipped += 1
                continue
            points += 1
            pt = (PiMultiple(Fraction(i, g)), PiMultiple(Fraction(j, g)))
            defect = vi + vj - vij
            margin = (defect - bound) if even else (-defect - bound)
            if worst_mid is None or margin.midpoint_cmp(worst_mid) < 0:
                worst_mid, worst_at = margin, pt
            if eq_idx == (i, j):
                target = bound if even else -bound
                if defect.contains(target) and margin.contains_zero():
                    equality_points.append(pt)
                else:
                    failed.append(pt)
                continue
            if margin.is_positive():
                continue
            if margin.is_negative():
                failed.append(pt)
            else:
                inconclusive.append(pt)

    all_passed = not failed and not inconclusive
    return GridReport(
        suite="subadditivity" if even else "superadditivity",
        n=n,
        points=points,
        all_passed=all_passed,
        worst_margin=worst_mid,
        worst_point=worst_at,
        extremum_location=worst_at,
        skipped_near_pole=skipped,
        failed=failed,
        inconclusive=inconclusive,
        equality_points=equality_points,
        meta={"grid_density": g, "bound": bound, "precision_bits": prec},
    )


def pole_growth_probe(
    n: int,
    prec: int,
    threshold: Optional[float] = None,
    max_steps: int = 80,
) -> list[PrecReal]:
    """|defect(x, x)| along x = pi/2, pi/4, pi/8, ...

    Demonstrates that no n-dependent upper bound exists: the sequence
    grows without limit as x walks toward the pole at 0.  Stops at the
    pole guard, after `max_steps` halvings, or once `threshold` is
    exceeded (when given).
    """
    out: list[PrecReal] = []
    ratio = Fraction(1, 2)
    for _ in range(max_steps):
        try:
            d = additivity_defect(n, PiMultiple(ratio), PiMultiple(ratio), prec,
                                  tol_bits=prec + 16)
        except PoleProximityError:
            break
        out.append(abs(d))
        if threshold is not None and out[-1].lower_fraction() > Fraction(threshold):
            break
        ratio /= 2
    return out
