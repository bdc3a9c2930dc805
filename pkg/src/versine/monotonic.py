"""Complete/absolute monotonicity sweeps and exact zero classification.

A function is completely monotonic on an interval when
``(-1)^n f^(n) >= 0`` for every order, absolutely monotonic when
``f^(n) >= 0``.  The sweeps here check the claimed sign pattern over a
grid of rational multiples of pi through jet arithmetic (plus the pole
series as a second route for the reciprocal versine itself).

An enclosure that straddles zero with nonzero width is *inconclusive*,
never a failure: ball arithmetic cannot certify strict positivity at a
genuine zero.  Straddles get one automatic retry at doubled precision;
what remains is checked against the exact symbolic classification (the
only true zeros are odd orders at x = pi) before being reported.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .ball import DomainError, PiMultiple, PoleProximityError, PrecReal
from .derivatives import deriv, deriv_upto
from .jets import JET_FUNCTIONS, jet_of
from .reports import GridReport
from .trigpoly import recip_versine_deriv_exact

__all__ = [
    "MonotonicityClaim",
    "NAMED_CLAIMS",
    "claims_for",
    "check_monotonic",
    "pi_grid",
    "ZeroClassification",
    "classify_zeros",
]

COMPLETELY = "completely"
ABSOLUTELY = "absolutely"


@dataclass(frozen=True)
class MonotonicityClaim:
    """A sign-pattern claim for one function on one interval.

    `lo`/`hi` are in units of pi; closed endpoints are grid points,
    open ones are approached from inside.
    """

    fn_id: str
    lo: Fraction
    hi: Fraction
    closed_lo: bool
    closed_hi: bool
    kind: str
    max_order: int

    def interval_str(self) -> str:
        lo = "[" if self.closed_lo else "("
        hi = "]" if self.closed_hi else ")"
        return f"{lo}{PiMultiple(self.lo)}, {PiMultiple(self.hi)}{hi}"


NAMED_CLAIMS: dict[str, tuple[MonotonicityClaim, ...]] = {
    "recip_versine": (
        MonotonicityClaim("recip_versine", Fraction(0), Fraction(1), False, True,
                          COMPLETELY, 20),
        MonotonicityClaim("recip_versine", Fraction(1), Fraction(2), True, False,
                          ABSOLUTELY, 20),
    ),
    "recip_coversine": (
        MonotonicityClaim("recip_coversine", Fraction(-1, 2), Fraction(1, 2), True, False,
                          ABSOLUTELY, 12),
    ),
    "exp_cot": (
        MonotonicityClaim("exp_cot", Fraction(0), Fraction(1, 2), False, True,
                          COMPLETELY, 12),
    ),
    "exp_inv_one_plus_tan": (
        MonotonicityClaim("exp_inv_one_plus_tan", Fraction(-1, 4), Fraction(1, 4),
                          False, True, COMPLETELY, 12),
    ),
    "fejer_cosine_sum": (
        MonotonicityClaim("fejer_cosine_sum", Fraction(0), Fraction(1, 2), False, True,
                          COMPLETELY, 12),
    ),
    "cosecant": (
        MonotonicityClaim("cosecant", Fraction(0), Fraction(1, 2), False, False,
                          COMPLETELY, 12),
    ),
    "cot_half": (
        MonotonicityClaim("cot_half", Fraction(0), Fraction(1, 2), False, False,
                          COMPLETELY, 12),
    ),
}


def claims_for(fn_id: str) -> tuple[MonotonicityClaim, ...]:
    try:
        return NAMED_CLAIMS[fn_id]
    except KeyError:
        known = ", ".join(sorted(NAMED_CLAIMS))
        raise DomainError(f"no monotonicity claims for {fn_id!r}; known: {known}") from None


def pi_grid(lo: Fraction, hi: Fraction, count: int,
            closed_lo: bool, closed_hi: bool) -> list[PiMultiple]:
    """`count` evenly spaced rational multiples of pi honouring endpoint flags."""
    if count < 2:
        raise DomainError("grid needs at least 2 points")
    span = hi - lo
    if closed_lo and closed_hi:
        pts = [lo + span * Fraction(i, count - 1) for i in range(count)]
    elif closed_hi:
        pts = [lo + span * Fraction(i, count) for i in range(1, count + 1)]
    elif closed_lo:
        pts = [lo + span * Fraction(i, count) for i in range(count)]
    else:
        pts = [lo + span * Fraction(i, count + 1) for i in range(1, count + 1)]
    return [PiMultiple(r) for r in pts]


def _claimed_sign(value: PrecReal, n: int, kind: str) -> PrecReal:
    if kind == COMPLETELY and n % 2 == 1:
        return -value
    return value


def _exact_zero_order_at(fn_id: str, x: PiMultiple, n: int) -> bool:
    """True when fn's n-th derivative vanishes at x exactly (symbolically).

    The reciprocal versine vanishes at odd orders at pi; the reciprocal
    coversine at -pi/2 is the same function shifted (1/(1+cos h) is even
    in h), so it shares that classification.
    """
    if n % 2 == 0:
        return False
    if fn_id == "recip_versine" and x.ratio == 1:
        return recip_versine_deriv_exact(n).value_at_pi() == 0
    if fn_id == "recip_coversine" and x.ratio == Fraction(-1, 2):
        return recip_versine_deriv_exact(n).value_at_pi() == 0
    return False


def check_monotonic(claim: MonotonicityClaim, grid_density: int, prec: int) -> GridReport:
    """Sweep a monotonicity claim over a grid.

    Each (order, point) pair must carry the claimed sign.  For the
    reciprocal versine both the jet route and the pole-series route are
    required to agree; for everything else jets are the only engine.
    """
    if claim.kind not in (COMPLETELY, ABSOLUTELY):
        raise DomainError(f"unknown claim kind {claim.kind!r}")
    if claim.fn_id != "fejer_cosine_sum" and claim.fn_id not in JET_FUNCTIONS:
        raise DomainError(f"unknown function id {claim.fn_id!r}")
    grid = pi_grid(claim.lo, claim.hi, grid_density, claim.closed_lo, claim.closed_hi)
    dual_route = claim.fn_id == "recip_versine"

    points = 0
    skipped = 0
    failed: list = []
    inconclusive: list = []
    equality_points: list = []
    worst: Optional[PrecReal] = None
    worst_at: Optional[tuple] = None
    worst_order = None

    for x in grid:
        try:
            checks = _point_signs(claim, x, prec)
        except (PoleProximityError, DomainError):
            skipped += 1
            continue
        retry: list[int] = [n for n, s in enumerate(checks) if s.contains_zero()
                            and not s.is_exact_zero()]
        if retry:
            better = _point_signs(claim, x, 2 * prec)
            for n in retry:
                checks[n] = better[n]
        for n, s in enumerate(checks):
            points += 1
            if worst is None or s.midpoint_cmp(worst) < 0:
                worst, worst_at, worst_order = s, (x,), n
            if s.is_positive():
                continue
            if s.is_exact_zero() or (_exact_zero_order_at(claim.fn_id, x, n)
                                     and s.contains_zero()):
                equality_points.append((x, n))
                continue
            if s.is_negative():
                failed.append((x, n))
            else:
                inconclusive.append((x, n))
        if dual_route:
            # second, series-route opinion on the same points
            for n, v in enumerate(deriv_upto(claim.max_order, x, prec, tol_bits=prec + 16)):
                s = _claimed_sign(v, n, claim.kind)
                if s.is_positive():
                    continue
                if _exact_zero_order_at(claim.fn_id, x, n) and s.contains_zero():
                    continue
                if s.is_negative():
                    failed.append((x, n))
                else:
                    s2 = _claimed_sign(deriv(n, x, 2 * prec, tol_bits=2 * prec + 16),
                                       n, claim.kind)
                    if not s2.is_positive():
                        inconclusive.append((x, n))

    all_passed = not failed and not inconclusive
    return GridReport(
        suite=f"{claim.kind}_monotonic[{claim.fn_id}]",
        n=claim.max_order,
        points=points,
        all_passed=all_passed,
        worst_margin=worst,
        worst_point=worst_at,
        extremum_location=worst_at,
        skipped_near_pole=skipped,
        failed=failed,
        inconclusive=inconclusive,
        equality_points=equality_points,
        meta={
            "fn": claim.fn_id,
            "interval": claim.interval_str(),
            "grid_density": grid_density,
            "precision_bits": prec,
            "worst_order": worst_order,
            "checks_per_point": claim.max_order + 1,
        },
    )


def _point_signs(claim: MonotonicityClaim, x: PiMultiple, prec: int) -> list[PrecReal]:
    jet = jet_of(claim.fn_id, x, claim.max_order, prec)
    return [_claimed_sign(jet.derivative(n), n, claim.kind)
            for n in range(claim.max_order + 1)]


@dataclass
class ZeroClassification:
    """Where derivatives of the reciprocal versine vanish on (0, 2 pi)."""

    max_order: int
    zero_orders_at_pi: list[int]
    parity_structure_ok: bool
    nonzero_certified: bool
    cos_samples: int

    @property
    def ok(self) -> bool:
        expected = [n for n in range(1, self.max_order + 1, 2)]
        return (self.zero_orders_at_pi == expected
                and self.parity_structure_ok and self.nonzero_certified)

    def to_json_dict(self) -> dict:
        return {
            "suite": "zero_classification",
            "max_order": self.max_order,
            "zero_orders_at_pi": self.zero_orders_at_pi,
            "parity_structure_ok": self.parity_structure_ok,
            "nonzero_certified": self.nonzero_certified,
            "cos_samples": self.cos_samples,
            "all_passed": self.ok,
        }


def classify_zeros(max_order: int = 20, cos_samples: int = 24) -> ZeroClassification:
    """Exact classification: derivatives vanish iff the order is odd and x = pi.

    Purely symbolic: the value at pi is an exact rational, and at sample
    values of cos x the certificate ``A(c)^2 != (1-c^2) B(c)^2`` rules
    out zeros for either sign of sin x.
    """
    zero_orders = []
    parity_ok = True
    nonzero_ok = True
    cs = [Fraction(k, cos_samples + 1) for k in range(-cos_samples, cos_samples + 1)]
    for n in range(max_order + 1):
        expr = recip_versine_deriv_exact(n)
        if n % 2 == 0 and expr.sin_part:
            parity_ok = False
        if n % 2 == 1 and expr.cos_part:
            parity_ok = False
        if expr.value_at_pi() == 0:
            zero_orders.append(n)
        for c in cs:
            if not expr.nonzero_certificate(c):
                nonzero_ok = False
    return ZeroClassification(
        max_order=max_order,
        zero_orders_at_pi=zero_orders,
        parity_structure_ok=parity_ok,
        nonzero_certified=nonzero_ok,
        cos_samples=len(cs),
    )
