"""Derivatives of 1/(1 - cos x) by the bilateral pole series.

The reciprocal coversine ``1/(1 - sin z)`` has double poles at
``z_p = pi/2 + 2 pi p`` and expands, for any order n and a = t*pi with
t in [-1/2, 1/2), as

    d^n/da^n [1/(1 - sin a)]
        = (2 (n+1)! / pi^(n+2)) * sum_{p in Z} (1/2 + 2p - t)^(-(n+2)).

``1/(1 - cos x)`` equals the reciprocal coversine at ``pi/2 - x``, which
turns the series into a second, fully independent evaluation route for
all its derivatives on (0, pi]; the reflection ``x -> 2 pi - x`` covers
(pi, 2 pi).

Truncation: symmetric partial sums ``|p| <= P0`` plus the certified
Euler-Maclaurin tail of :func:`versine.numbers.power_sum_tail` applied
to both one-sided tails.  P0 is chosen so the rigorous remainder bound
meets the tolerance; for the tail with J = 0 corrections this reduces to
the classical integral comparison ``sum_{p>P0} f(p) <= int_P0 f``, and
with corrections the same accuracy needs exponentially fewer terms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Optional, Union

from .ball import (
    DomainError,
    PiMultiple,
    PoleProximityError,
    PrecReal,
    as_ball,
    pi_ball,
    working_prec,
)
from .numbers import bernoulli, euler, power_sum_tail
from .trigpoly import eval_trig_rational, recip_versine_deriv_exact

__all__ = [
    "SeriesEval",
    "coversine_deriv_series",
    "deriv",
    "deriv_at_half_pi",
    "deriv_at_half_pi_fraction",
    "deriv_at_pi",
    "deriv_at_pi_fraction",
]


@dataclass(frozen=True)
class SeriesEval:
    """A series value with its certified truncation bookkeeping.

    `tail_bound` is the rigorous bound on everything not summed; it is
    already included in ``value.rad``.
    """

    value: PrecReal
    terms_used: int
    tail_bound: float


def _tail_log_bound(m: int, a: int, j: int) -> float:
    """log of the Euler-Maclaurin remainder bound for one side, stride 2."""
    m2 = 2 * (j + 1)
    b = abs(bernoulli(m2))
    base = 2.0 * a - 1.0  # lower bound of 2*start + offset over t in [-1/2, 1/2)
    return (
        math.log(2.0)
        + math.log(float(b.numerator)) - math.log(float(b.denominator))
        - math.lgamma(m2 + 1)
        + (m2 - 1) * math.log(2.0)
        + (math.lgamma(m + m2) - math.lgamma(m))
        - (m + m2 - 1) * math.log(base)
        - math.log(m + m2 - 1)
    )


@lru_cache(maxsize=4096)
def _choose_cutoff(m: int, log_tol: float) -> int:
    """Smallest symmetric cutoff P0 whose best tail bound beats log_tol."""
    a = 8
    while a < 1 << 22:
        best = min(_tail_log_bound(m, a, j) for j in range(0, 21, 4))
        if best <= log_tol:
            return a
        a *= 2
    raise DomainError("series tolerance unreachable; relax tol or raise precision")


def coversine_deriv_series(
    n: int,
    t: Union[int, float, Fraction, PrecReal],
    prec: int,
    tol: Optional[float] = None,
    tol_bits: Optional[int] = None,
) -> SeriesEval:
    """n-th derivative of ``1/(1 - sin z)`` at ``z = t * pi``, t in [-1/2, 1/2).

    `tol` is the target absolute bound on the truncated tail (the
    reported ``tail_bound`` always honours it); by default it is scaled
    to the dominant term so the tail disappears below rounding level.
    `tol_bits` instead requests a tail of ``2^-tol_bits`` relative to the
    dominant term; sign sweeps use this to trade useless tail digits for
    speed without losing rigour.
    """
    if n < 0:
        raise DomainError("derivative order must be >= 0")
    w = working_prec(prec)
    m = n + 2
    exact_t = not isinstance(t, (float, PrecReal))
    if exact_t:
        tf = Fraction(t)
        if not -Fraction(1, 2) <= tf < Fraction(1, 2):
            raise DomainError("t must lie in [-1/2, 1/2)")
        t_ball = PrecReal.exact(tf, w)
        t_float = float(tf)
    else:
        t_ball = as_ball(t, w)
        t_float = float(t_ball.mid)
        if not -0.5 <= t_float < 0.5:
            raise DomainError("t must lie in [-1/2, 1/2)")
        tf = None

    # log-scale estimate of the dominant magnitude, for the default tol
    log_pref = math.log(2.0) + math.lgamma(n + 2) - m * math.log(math.pi)
    d0 = min(abs(0.5 - t_float), abs(1.5 + t_float))
    d0 = max(d0, 1e-300)
    log_scale = log_pref - m * math.log(d0)
    if tol is not None:
        if tol <= 0:
            raise DomainError("tol must be positive")
        log_tol = math.log(tol)
    else:
        bits = (2 * prec - 24) if tol_bits is None else tol_bits
        log_tol = log_scale - bits * math.log(2.0)
    # leave room for the prefactor multiplying the raw tail
    cutoff = _choose_cutoff(m, round(log_tol - log_pref - math.log(2.0), 3))

    acc = PrecReal.zero(w)
    if exact_t:
        for p in range(-cutoff, cutoff + 1):
            acc = acc + PrecReal.exact(Fraction(1, 2) + 2 * p - tf, w) ** (-m)
    else:
        for p in range(-cutoff, cutoff + 1):
            acc = acc + (PrecReal.exact(Fraction(4 * p + 1, 2), w) - t_ball) ** (-m)

    # one-sided tails: p >= cutoff+1 directly, p <= -(cutoff+1) after
    # p -> -q, which flips the sign of the base for odd m
    if exact_t:
        plus = power_sum_tail(2, Fraction(1, 2) - tf, m, cutoff + 1, w)
        minus = power_sum_tail(2, tf - Fraction(1, 2), m, cutoff + 1, w)
    else:
        plus = power_sum_tail(2, PrecReal.exact(Fraction(1, 2), w) - t_ball, m, cutoff + 1, w)
        minus = power_sum_tail(2, t_ball - PrecReal.exact(Fraction(1, 2), w), m, cutoff + 1, w)
    if m % 2 == 1:
        minus = -minus
    tail = plus + minus
    # uncertainty attributable to truncation: the enclosed tail value is
    # part of the result, only its radius is unresolved series mass
    tail_unc = tail.rad_fraction()
    acc = acc + tail

    pref = (pi_ball(w) ** (-m)).mul_fraction(Fraction(2 * math.factorial(n + 1)))
    value = pref * acc
    tail_bound = float(tail_unc * pref.upper_fraction()) * (1.0 + 1e-12)
    if tol is not None and tail_bound > tol:
        raise DomainError(
            f"achieved tail bound {tail_bound:g} misses tol {tol:g}; raise the precision"
        )
    return SeriesEval(value=value, terms_used=2 * cutoff + 1, tail_bound=tail_bound)


Point = Union[PiMultiple, PrecReal, int, float, str, Fraction]


def _point_info(x: Point, w: int):
    """Returns (ratio, ball) with ratio the exact pi-multiple if known."""
    if isinstance(x, PiMultiple):
        return x.ratio, None
    return None, as_ball(x, w)


def coversine_deriv_series_upto(
    max_n: int,
    t: Union[int, float, Fraction, PrecReal],
    prec: int,
    tol_bits: Optional[int] = None,
) -> list[PrecReal]:
    """All derivatives of ``1/(1 - sin z)`` at ``z = t*pi`` up to order max_n.

    One pass over the pole ladder serves every order: the reciprocal
    distances are raised to successive powers incrementally, which beats
    per-order evaluation by an order of magnitude in sweeps.  Tails are
    certified per order exactly as in :func:`coversine_deriv_series`.
    """
    if max_n < 0:
        raise DomainError("max_n must be >= 0")
    w = working_prec(prec)
    exact_t = not isinstance(t, (float, PrecReal))
    if exact_t:
        tf = Fraction(t)
        if not -Fraction(1, 2) <= tf < Fraction(1, 2):
            raise DomainError("t must lie in [-1/2, 1/2)")
        t_float = float(tf)
    else:
        t_ball = as_ball(t, w)
        t_float = float(t_ball.mid)
        if not -0.5 <= t_float < 0.5:
            raise DomainError("t must lie in [-1/2, 1/2)")

    # the order-0 tail converges slowest; its cutoff serves every order
    bits = (2 * prec - 24) if tol_bits is None else tol_bits
    d0 = max(min(abs(0.5 - t_float), abs(1.5 + t_float)), 1e-300)
    log_pref0 = math.log(2.0) - 2.0 * math.log(math.pi)
    log_tol0 = log_pref0 - 2.0 * math.log(d0) - bits * math.log(2.0)
    cutoff = _choose_cutoff(2, round(log_tol0 - log_pref0 - math.log(2.0), 3))

    sums = [PrecReal.zero(w) for _ in range(max_n + 1)]
    for p in range(-cutoff, cutoff + 1):
        if exact_t:
            inv = 1 / PrecReal.exact(Fraction(1, 2) + 2 * p - tf, w)
        else:
            inv = 1 / (PrecReal.exact(Fraction(4 * p + 1, 2), w) - t_ball)
        cur = inv * inv
        sums[0] = sums[0] + cur
        for k in range(1, max_n + 1):
            cur = cur * inv
            sums[k] = sums[k] + cur

    if exact_t:
        beta_plus: Union[Fraction, PrecReal] = Fraction(1, 2) - tf
        beta_minus: Union[Fraction, PrecReal] = tf - Fraction(1, 2)
    else:
        beta_plus = PrecReal.exact(Fraction(1, 2), w) - t_ball
        beta_minus = t_ball - PrecReal.exact(Fraction(1, 2), w)
    out = []
    pi_pow = 1 / pi_ball(w)
    pi_m = pi_pow * pi_pow
    for n in range(max_n + 1):
        m = n + 2
        plus = power_sum_tail(2, beta_plus, m, cutoff + 1, w)
        minus = power_sum_tail(2, beta_minus, m, cutoff + 1, w)
        if m % 2 == 1:
            minus = -minus
        total = sums[n] + plus + minus
        out.append((total * pi_m).mul_fraction(Fraction(2 * math.factorial(n + 1))))
        pi_m = pi_m * pi_pow
    return out


def deriv_upto(
    max_n: int,
    x: Point,
    prec: int,
    tol_bits: Optional[int] = None,
) -> list[PrecReal]:
    """Derivatives of ``1/(1 - cos x)`` for every order up to max_n (series)."""
    w = working_prec(prec)
    ratio, xb = _point_info(x, w)
    reflect = False
    if ratio is not None:
        if not 0 < ratio < 2:
            raise DomainError(f"point {PiMultiple(ratio)} outside (0, 2 pi)")
        if ratio > 1:
            ratio = 2 - ratio
            reflect = True
        _guard_pi_ratio(ratio, prec, None)
        t: Union[Fraction, PrecReal] = Fraction(1, 2) - ratio
    else:
        two_pi = pi_ball(w).scale2(1)
        if not (xb.is_positive() and (two_pi - xb).is_positive()):
            raise DomainError("point outside (0, 2 pi)")
        if (xb - pi_ball(w)).is_positive():
            xb = two_pi - xb
            reflect = True
        _guard_ball(xb, prec, None)
        t = PrecReal.exact(Fraction(1, 2), w) - xb / pi_ball(w)
    vals = coversine_deriv_series_upto(max_n, t, prec, tol_bits=tol_bits)
    # d^n(x) = (-1)^n u^(n)(pi/2 - x) on (0, pi]; the reflection onto
    # (pi, 2 pi) contributes another (-1)^n, cancelling the first
    if reflect:
        return vals
    return [v if n % 2 == 0 else -v for n, v in enumerate(vals)]


def deriv(
    n: int,
    x: Point,
    prec: int,
    method: str = "series",
    tol: Optional[float] = None,
    tol_bits: Optional[int] = None,
    guard_bits: Optional[int] = None,
) -> PrecReal:
    """n-th derivative of ``1/(1 - cos x)`` for x in (0, 2 pi).

    `method` selects the evaluation route: "series" (bilateral pole
    series, reflected onto (pi, 2 pi)), "symbolic" (exact trig-rational
    closed form), or "jet" (truncated Taylor arithmetic).  The routes
    are independent; their agreement is part of the test suite.
    """
    if n < 0:
        raise DomainError("derivative order must be >= 0")
    if method == "symbolic":
        return eval_trig_rational(recip_versine_deriv_exact(n), x, prec, guard_bits=guard_bits)
    if method == "jet":
        from .jets import jet_of  # local import: jets builds on this module

        return jet_of("recip_versine", x, n, prec).derivative(n)
    if method != "series":
        raise DomainError(f"unknown method {method!r}")

    w = working_prec(prec)
    ratio, xb = _point_info(x, w)
    sign = 1
    if ratio is not None:
        if not 0 < ratio < 2:
            raise DomainError(f"point {PiMultiple(ratio)} outside (0, 2 pi)")
        if ratio > 1:
            ratio = 2 - ratio
            sign = (-1) ** n
        _guard_pi_ratio(ratio, prec, guard_bits)
        t: Union[Fraction, PrecReal] = Fraction(1, 2) - ratio
    else:
        two_pi = pi_ball(w).scale2(1)
        if not (xb.is_positive() and (two_pi - xb).is_positive()):
            raise DomainError("point outside (0, 2 pi)")
        if (xb - pi_ball(w)).is_positive():
            xb = two_pi - xb
            sign = (-1) ** n
        _guard_ball(xb, prec, guard_bits)
        t = PrecReal.exact(Fraction(1, 2), w) - xb / pi_ball(w)

    se = coversine_deriv_series(n, t, prec, tol=tol, tol_bits=tol_bits)
    value = se.value if n % 2 == 0 else -se.value
    return value if sign == 1 else -value


def _guard_pi_ratio(ratio: Fraction, prec: int, guard_bits: Optional[int]) -> None:
    guard = prec // 2 if guard_bits is None else guard_bits
    # 1 - cos(r*pi) >= 2 sin^2(r*pi/2) >= 2 r^2 for r in (0, 1]
    if 2 * ratio * ratio < Fraction(1, 2**guard):
        raise PoleProximityError(
            f"1 - cos x below the 2^-{guard} pole guard at x = {PiMultiple(ratio)}"
        )


def _guard_ball(xb: PrecReal, prec: int, guard_bits: Optional[int]) -> None:
    guard = prec // 2 if guard_bits is None else guard_bits
    versin = 1 - xb.cos()
    if not versin.is_positive() or versin.upper_fraction() < Fraction(1, 2**guard):
        raise PoleProximityError(
            f"1 - cos x below the 2^-{guard} pole guard near x = {float(xb.mid):.6g}"
        )


def deriv_at_half_pi_fraction(n: int) -> Fraction:
    """Exact rational value of the n-th derivative of 1/(1-cos x) at pi/2.

    Even n: the pole series collapses to an odd-denominator zeta value
    whose pi powers cancel against the prefactor, leaving
    ``(n+1)! (2^m - 1) 2^m |B_m| / m!`` with ``m = n + 2``.
    Odd n: exactly ``-|E_(n+1)|``.
    """
    if n < 0:
        raise DomainError("derivative order must be >= 0")
    if n % 2 == 1:
        return Fraction(-abs(euler(n + 1)))
    m = n + 2
    return Fraction(
        math.factorial(n + 1) * (2**m - 1) * 2**m
    ) * abs(bernoulli(m)) / math.factorial(m)


def deriv_at_pi_fraction(n: int) -> Fraction:
    """Exact rational value of the n-th derivative of 1/(1-cos x) at pi.

    Even n: same zeta collapse as at pi/2 but with the boundary weight,
    ``2 (n+1)! (2^m - 1) |B_m| / m!``.  Odd n: exactly 0.
    """
    if n < 0:
        raise DomainError("derivative order must be >= 0")
    if n % 2 == 1:
        return Fraction(0)
    m = n + 2
    return Fraction(2 * math.factorial(n + 1) * (2**m - 1)) * abs(bernoulli(m)) / math.factorial(m)


def deriv_at_half_pi(n: int, prec: int) -> PrecReal:
    """Enclosure of the n-th derivative at pi/2 (exact for odd n)."""
    return PrecReal.exact(deriv_at_half_pi_fraction(n), working_prec(prec))


def deriv_at_pi(n: int, prec: int) -> PrecReal:
    """Enclosure of the n-th derivative at pi (exact zero for odd n)."""
    return PrecReal.exact(deriv_at_pi_fraction(n), working_prec(prec))
