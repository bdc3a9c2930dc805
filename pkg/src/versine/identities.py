"""Fejer sine polynomials, the cosine-power series identity, and pi.

The blended series ``sum_{k>=1} F_k(x) cos(x)^k`` with the Fejer sine
polynomial ``F_k(x) = sum_{v=1..k} sin(vx)/v`` has the closed form
``(pi/2 - x)/(1 - cos x)`` on (0, pi).  Specializing to x = pi/3 turns
it into a geometric-weight series for pi with exact rational
coefficients.  This module evaluates partial sums with certified tail
bounds next to the closed forms, so the identities can be checked as
enclosure overlaps.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

from .ball import DomainError, PiMultiple, PrecReal, as_ball, pi_ball, working_prec
from .derivatives import Point, SeriesEval

__all__ = [
    "fejer_sine",
    "fejer_cosine_series",
    "fejer_cosine_closed",
    "halfpi_gap_pair",
    "pi_series_coeffs",
    "pi_series",
    "terms_for_accuracy",
]

# cos-magnitude cap: beyond this the geometric tail collapses too slowly
# to be worth certifying, and the closed form is available anyway
_Q_CAP = 0.995


def _sin_cos_ladder(x: PrecReal, count: int):
    """Enclosures of sin(kx), cos(kx) for k = 1..count via angle addition."""
    s1, c1 = x.sin(), x.cos()
    sins, coss = [s1], [c1]
    for _ in range(count - 1):
        s, c = sins[-1], coss[-1]
        sins.append(s * c1 + c * s1)
        coss.append(c * c1 - s * s1)
    return sins, coss


def fejer_sine(k: int, x: Point, prec: int) -> PrecReal:
    """Fejer sine polynomial ``sum_{v=1..k} sin(vx)/v``."""
    if k < 1:
        raise DomainError("fejer_sine requires k >= 1")
    w = working_prec(prec)
    xb = as_ball(x, w)
    sins, _ = _sin_cos_ladder(xb, k)
    acc = PrecReal.zero(w)
    for v in range(1, k + 1):
        acc = acc + sins[v - 1].mul_fraction(Fraction(1, v))
    return acc


def _tail_bound_fraction(K: int, q_upper: Fraction) -> Fraction:
    # |sum_{k>K} F_k q^k| <= (1 + ln(K+1) + 1/((K+1)(1-q))) q^(K+1)/(1-q):
    # from |F_k| <= H_k <= 1 + ln k and the concavity bound
    # ln k <= ln(K+1) + (k-K-1)/(K+1), summed against the geometric series.
    if q_upper >= 1:
        raise DomainError("tail bound needs |cos x| < 1")
    one_minus_q = 1 - q_upper
    log_term = Fraction(math.log(K + 1)) + Fraction(1, 10**12)  # round-up cushion
    coeff = 1 + log_term + Fraction(1, (K + 1)) / one_minus_q
    return coeff * q_upper ** (K + 1) / one_minus_q


def terms_for_accuracy(x: Point, eps: float, prec: int = 64) -> int:
    """Smallest partial-sum length whose certified tail is below eps."""
    w = working_prec(prec)
    q = float(abs(as_ball(x, w).cos().mid))
    if q >= _Q_CAP:
        raise DomainError(f"|cos x| = {q:.4f} beyond the {_Q_CAP} cap")
    K = 4
    while K < 1 << 20:
        if _tail_bound_fraction(K, Fraction(min(q * 1.0000001, 0.9999))) < Fraction(eps):
            return K
        K = K + max(4, K // 2)
    raise DomainError("tail bound does not reach eps")


def fejer_cosine_series(x: Point, terms: int, prec: int) -> SeriesEval:
    """Partial sum of ``sum_k F_k(x) cos(x)^k`` with a certified tail.

    Valid for x in (0, pi) with ``|cos x| <= 0.995``; at x = pi/2 every
    term vanishes and the result is an exact zero.
    """
    if terms < 1:
        raise DomainError("need at least one term")
    w = working_prec(prec)
    if isinstance(x, PiMultiple):
        if not 0 < x.ratio < 1:
            raise DomainError("x must lie in (0, pi)")
        if x.ratio == Fraction(1, 2):
            return SeriesEval(PrecReal.zero(w), terms_used=terms, tail_bound=0.0)
    xb = as_ball(x, w)
    q_ball = xb.cos()
    q_abs = abs(q_ball)
    q_upper = q_abs.upper_fraction()
    if q_upper > Fraction(_Q_CAP * 1.000001):
        raise DomainError(f"|cos x| = {float(q_upper):.4f} beyond the {_Q_CAP} cap")
    pi_b = pi_ball(w)
    if not (xb.is_positive() and (pi_b - xb).is_positive()):
        raise DomainError("x must lie in (0, pi)")

    sins, _ = _sin_cos_ladder(xb, terms)
    fejer = PrecReal.zero(w)
    power = PrecReal.exact(1, w)
    acc = PrecReal.zero(w)
    for k in range(1, terms + 1):
        fejer = fejer + sins[k - 1].mul_fraction(Fraction(1, k))
        power = power * q_ball
        acc = acc + fejer * power
    tail = _tail_bound_fraction(terms, min(q_upper, Fraction(9999, 10000)))
    return SeriesEval(acc.widen(tail), terms_used=terms, tail_bound=float(tail) * (1 + 1e-12))


def fejer_cosine_closed(x: Point, prec: int) -> PrecReal:
    """Closed form ``(pi/2 - x) / (1 - cos x)`` on (0, pi)."""
    w = working_prec(prec)
    pi_b = pi_ball(w)
    if isinstance(x, PiMultiple):
        if not 0 < x.ratio < 1:
            raise DomainError("x must lie in (0, pi)")
        numer = pi_b.mul_fraction(Fraction(1, 2) - x.ratio)
        if x.ratio == Fraction(1, 2):
            numer = PrecReal.zero(w)
        xb = x.to_ball(w)
    else:
        xb = as_ball(x, w)
        if not (xb.is_positive() and (pi_b - xb).is_positive()):
            raise DomainError("x must lie in (0, pi)")
        numer = pi_b.mul_fraction(Fraction(1, 2)) - xb
    return numer / (1 - xb.cos())


def halfpi_gap_pair(x: Point, terms: int, prec: int) -> tuple[PrecReal, SeriesEval]:
    """The two sides of ``pi/2 - |x| = sgn(x) sum_k sin(kx)/k cos(x)^k``.

    Returns (left side, partial right side with certified tail) for
    0 < |x| < pi; callers assert that the enclosures overlap.
    """
    w = working_prec(prec)
    if isinstance(x, PiMultiple):
        if x.ratio == 0 or not -1 < x.ratio < 1:
            raise DomainError("need 0 < |x| < pi")
        lhs = pi_ball(w).mul_fraction(Fraction(1, 2) - abs(x.ratio))
    else:
        xb0 = as_ball(x, w)
        if xb0.contains_zero() or not (pi_ball(w) - abs(xb0)).is_positive():
            raise DomainError("need 0 < |x| < pi")
        lhs = pi_ball(w).mul_fraction(Fraction(1, 2)) - abs(xb0)
    xb = as_ball(x, w)
    sign = 1 if xb.is_positive() else -1
    q_ball = xb.cos()
    q_upper = abs(q_ball).upper_fraction()
    if q_upper > Fraction(_Q_CAP * 1.000001):
        raise DomainError(f"|cos x| = {float(q_upper):.4f} beyond the {_Q_CAP} cap")
    sins, _ = _sin_cos_ladder(xb, terms)
    power = PrecReal.exact(1, w)
    acc = PrecReal.zero(w)
    for k in range(1, terms + 1):
        power = power * q_ball
        acc = acc + sins[k - 1].mul_fraction(Fraction(1, k)) * power
    if sign < 0:
        acc = -acc
    # |sin(kx)/k q^k| <= q^k, so the tail is below q^(K+1)/((K+1)(1-q))
    qq = min(q_upper, Fraction(9999, 10000))
    tail = qq ** (terms + 1) / ((terms + 1) * (1 - qq))
    rhs = SeriesEval(acc.widen(tail), terms_used=terms, tail_bound=float(tail) * (1 + 1e-12))
    return lhs, rhs


def pi_series_coeffs(k: int) -> tuple[Fraction, Fraction]:
    """Exact coefficients of the pi series: partial alternating sums over
    denominators congruent to 1 resp. 2 mod 3, cut at k.

        a_k = sum_{v=0..floor((k-1)/3)} (-1)^v/(3v+1)
        b_k = sum_{v=0..floor((k-2)/3)} (-1)^v/(3v+2)

    Empty sums (negative floor) are zero.
    """
    if k < 1:
        raise DomainError("pi_series_coeffs requires k >= 1")
    a = sum((Fraction((-1) ** v, 3 * v + 1) for v in range((k - 1) // 3 + 1)), Fraction(0))
    b = sum((Fraction((-1) ** v, 3 * v + 2) for v in range((k - 2) // 3 + 1)), Fraction(0))
    return a, b


# a_k is an alternating partial sum starting at 1, so 3/4 <= a_k <= 1;
# b_k likewise sits in [3/10, 1/2]; hence a_k + b_k <= 3/2 and the tail
# past K is below (3 sqrt(3)/2) * (3/2) * 2^-K = (9 sqrt(3)/4) 2^-K.
_PI_TAIL_COEFF = Fraction(39, 10)  # > 9*sqrt(3)/4 = 3.897...


def pi_series(terms: int, prec: int) -> SeriesEval:
    """Enclosure of pi from ``(3 sqrt(3)/2) sum_k (a_k + b_k)/2^k``."""
    if terms < 1:
        raise DomainError("pi_series requires at least one term")
    w = working_prec(prec)
    acc = Fraction(0)
    for k in range(1, terms + 1):
        a, b = pi_series_coeffs(k)
        acc += (a + b) / 2**k
    front = PrecReal.exact(3, w).sqrt().mul_fraction(Fraction(3, 2))
    value = front * PrecReal.exact(acc, w)
    tail = _PI_TAIL_COEFF / 2**terms
    return SeriesEval(value.widen(tail), terms_used=terms, tail_bound=float(tail) * (1 + 1e-12))
