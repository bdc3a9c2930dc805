"""Exact Bernoulli/Euler numbers and certified classical sums.

The exact side (`bernoulli`, `euler`) runs entirely in integer/rational
arithmetic.  The certified side (`zeta_even`, `odd_sum`, `polygamma`,
`polygamma_quarter_gap`) returns :class:`~versine.ball.PrecReal`
enclosures whose radii account for truncation as well as rounding.

Truncation of the power sums is certified by Euler-Maclaurin summation
with an explicit remainder bound (see :func:`power_sum_tail`); the plain
integral-comparison bound is the zero-correction case of the same
formula but converges far too slowly for low exponents, so correction
terms are essential here.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Union

from .ball import DomainError, PrecReal, pi_ball, working_prec

__all__ = [
    "bernoulli",
    "euler",
    "zeta_even",
    "odd_sum",
    "polygamma",
    "polygamma_quarter_gap",
    "power_sum_tail",
]

_BERNOULLI_CACHE: list[Fraction] = [Fraction(1)]
_EULER_CACHE: list[int] = [1]


def bernoulli(n: int) -> Fraction:
    """Bernoulli number B_n (convention B_1 = -1/2), exact.

    Computed from the defining recurrence
    ``sum_{k=0..n} C(n+1, k) B_k = 0`` for ``n >= 1``.
    """
    if n < 0:
        raise DomainError("bernoulli requires n >= 0")
    while len(_BERNOULLI_CACHE) <= n:
        m = len(_BERNOULLI_CACHE)
        acc = Fraction(0)
        for k in range(m):
            acc += math.comb(m + 1, k) * _BERNOULLI_CACHE[k]
        _BERNOULLI_CACHE.append(-acc / (m + 1))
    return _BERNOULLI_CACHE[n]


def euler(n: int) -> int:
    """Euler (secant) number E_n from ``1/cosh t = sum E_n t^n / n!``, exact.

    Even-index recurrence ``sum_{k even, 0..n} C(n, k) E_k = 0`` for even
    ``n >= 2``; odd-index values vanish.
    """
    if n < 0:
        raise DomainError("euler requires n >= 0")
    if n % 2 == 1:
        return 0
    half = n // 2
    while len(_EULER_CACHE) <= half:
        m = 2 * len(_EULER_CACHE)
        acc = 0
        for j in range(m // 2):
            acc += math.comb(m, 2 * j) * _EULER_CACHE[j]
        _EULER_CACHE.append(-acc)
    return _EULER_CACHE[half]


def zeta_even(m: int, prec: int) -> PrecReal:
    """zeta(2m) as an exact rational multiple of pi^(2m).

    Uses ``zeta(2m) = (2 pi)^(2m) |B_2m| / (2 (2m)!)``; the returned
    radius covers only the rounding of pi and the final powering.
    """
    if m < 1:
        raise DomainError("zeta_even requires m >= 1")
    w = working_prec(prec)
    coeff = Fraction(4**m * abs(bernoulli(2 * m)), 2 * math.factorial(2 * m))
    return (pi_ball(w) ** (2 * m)).mul_fraction(coeff)


def _rising(x: Union[int, Fraction], k: int) -> Fraction:
    acc = Fraction(1)
    for i in range(k):
        acc *= x + i
    return acc


@lru_cache(maxsize=4096)
def _log_remainder(stride: int, r_key: Fraction, log_base: float, j: int) -> float:
    m2 = 2 * (j + 1)
    b = abs(bernoulli(m2))
    rf = float(r_key)
    return (
        math.log(2.0)
        + math.log(float(b))
        - math.lgamma(m2 + 1)
        + (m2 - 1) * math.log(stride)
        + (math.lgamma(rf + m2) - math.lgamma(rf))
        - (rf + m2 - 1) * log_base
        - math.log(rf + m2 - 1)
    )


@lru_cache(maxsize=4096)
def _choose_corrections(stride: int, r_key: Fraction, log_base: float) -> tuple[int, float]:
    best_j, best_v = 0, _log_remainder(stride, r_key, log_base, 0)
    for j in range(1, 25):
        v = _log_remainder(stride, r_key, log_base, j)
        if v < best_v:
            best_j, best_v = j, v
        elif v > best_v + 2.0:
            break
    return best_j, best_v


@lru_cache(maxsize=4096)
def _correction_coeff(stride: int, r_key: Fraction, j: int) -> Fraction:
    return (
        bernoulli(2 * j)
        * Fraction(stride) ** (2 * j - 1)
        * _rising(r_key, 2 * j - 1)
        / math.factorial(2 * j)
    )


@lru_cache(maxsize=4096)
def _remainder_coeff(stride: int, r_key: Fraction, M: int) -> Fraction:
    return (
        2
        * abs(bernoulli(2 * M))
        * Fraction(stride) ** (2 * M - 1)
        * _rising(r_key, 2 * M)
        / math.factorial(2 * M)
    )


def power_sum_tail(
    stride: int,
    offset: Union[int, Fraction, PrecReal],
    expo: Union[int, Fraction],
    start: int,
    prec: int,
    target: Optional[float] = None,
) -> PrecReal:
    """Certified enclosure of ``sum_{p >= start} (stride*p + offset)^(-expo)``.

    Euler-Maclaurin with J correction terms, for f(t) = (s*t+b)^(-r):

        T = I + f(a)/2 + sum_{j=1..J} B_2j/(2j)! * s^(2j-1) (r)_{2j-1}
                          * (s*a+b)^(-(r+2j-1))            + R,
        I = (s*a+b)^(1-r) / (s (r-1)),
        |R| <= 2 |B_2M| / (2M)! * s^(2M-1) (r)_{2M}
               * (s*a+b)^(-(r+2M-1)) / (r+2M-1),   M = J+1,

    where (r)_k is the rising factorial.  The remainder bound follows
    from the periodic-Bernoulli form of the Euler-Maclaurin remainder,
    ``|B_2M - ~B_2M(t)| <= 2 |B_2M|``, together with the closed-form
    integral of |f^(2M)|.  J is chosen to (nearly) minimise the bound;
    if `target` is given the bound is additionally required to reach it
    (raising DomainError when the best achievable J cannot).

    Requires ``stride*start + offset > 0`` and ``expo > 1``.
    """
    w = prec
    base = stride * start + offset if not isinstance(offset, PrecReal) else None
    if isinstance(offset, PrecReal):
        base_ball = PrecReal.exact(stride * start, offset.prec) + offset
        w = max(w, offset.prec)
    else:
        base_ball = PrecReal.exact(Fraction(base), w)
    if not base_ball.is_positive():
        raise DomainError("power_sum_tail requires a positive first denominator")
    r = Fraction(expo)
    if r <= 1:
        raise DomainError("power_sum_tail requires exponent > 1")

    # choose J by minimising the log of the remainder bound (float estimate)
    base_f = float(base_ball.mid)
    J, best_v = _choose_corrections(stride, r, round(math.log(base_f), 3))
    if target is not None and best_v > math.log(target):
        raise DomainError(
            "tail start index too small for the requested tail bound; "
            f"best achievable ~exp({best_v:.1f}) vs target {target:g}"
        )
    M = J + 1

    inv = 1 / base_ball
    # negative real powers of the base: integer exponents use pow_int,
    # fractional ones go through exp/log once.
    if r.denominator == 1:
        ri = int(r)

        def npow(extra: int) -> PrecReal:
            return inv ** (ri + extra)

        def inv_coeff(extra: int) -> Fraction:
            return Fraction(1, ri + extra)

    else:
        log_b = base_ball.log()

        def npow(extra: int) -> PrecReal:
            return (log_b.mul_fraction(-(r + extra))).exp()

        def inv_coeff(extra: int):
            return 1 / (r + extra)

    # I + f(a)/2
    total = npow(-1).mul_fraction(Fraction(1, stride) * inv_coeff(-1))
    total = total + npow(0).mul_fraction(Fraction(1, 2))
    # correction terms
    for j in range(1, J + 1):
        total = total + npow(2 * j - 1).mul_fraction(_correction_coeff(stride, r, j))
    # rigorous remainder bound
    rem = npow(2 * M - 1).mul_fraction(_remainder_coeff(stride, r, M) * inv_coeff(2 * M - 1))
    rem_upper = rem.upper_fraction()
    return total.widen(abs(rem_upper))


def _head_count(prec: int) -> int:
    # enough head terms that the Euler-Maclaurin bound undershoots
    # rounding noise at working precision; grows gently with precision
    return max(24, prec // 6)


def odd_sum(x: Union[int, float, Fraction], prec: int) -> PrecReal:
    """``sum_{p>=0} 1/(2p+1)^x`` for x > 1, i.e. ``(1 - 2^-x) zeta(x)``.

    Even integer x routes through :func:`zeta_even`; any other x > 1 is
    summed directly with a certified tail.
    """
    xf = Fraction(x) if not isinstance(x, float) else Fraction(x)
    if xf <= 1:
        raise DomainError("odd_sum requires x > 1 (the series diverges otherwise)")
    w = working_prec(prec)
    if xf.denominator == 1 and xf % 2 == 0:
        m = int(xf) // 2
        z = zeta_even(m, prec)
        return z.mul_fraction(Fraction(2 ** int(xf) - 1, 2 ** int(xf)))
    a = _head_count(w)
    if xf.denominator == 1:
        head = sum(
            (PrecReal.exact(2 * p + 1, w) ** (-int(xf)) for p in range(a)),
            PrecReal.zero(w),
        )
    else:
        head = PrecReal.zero(w)
        for p in range(a):
            head = head + (PrecReal.exact(2 * p + 1, w).log().mul_fraction(-xf)).exp()
    return head + power_sum_tail(2, 1, xf, a, w)


def polygamma(m: int, x: Union[int, float, Fraction], prec: int) -> PrecReal:
    """psi^(m)(x) for m >= 1, x > 0, via the reflection-free series

        psi^(m)(x) = (-1)^(m+1) m! sum_{k>=0} (x+k)^(-(m+1))

    with a certified Euler-Maclaurin tail.
    """
    if m < 1:
        raise DomainError("polygamma requires m >= 1 (digamma itself is out of scope)")
    xf = Fraction(x)
    if xf <= 0:
        raise DomainError("polygamma requires x > 0")
    w = working_prec(prec)
    a = _head_count(w)
    head = sum(
        (PrecReal.exact(xf + k, w) ** (-(m + 1)) for k in range(a)),
        PrecReal.zero(w),
    )
    s = head + power_sum_tail(1, xf, m + 1, a, w)
    sign = 1 if m % 2 == 1 else -1
    return s.mul_fraction(Fraction(sign * math.factorial(m)))


def polygamma_quarter_gap(m: int, prec: int) -> PrecReal:
    """``psi^(2m)(1/4) - psi^(2m)(3/4)`` for m >= 1.

    Downstream checks assert this equals ``-pi (2 pi)^(2m) |E_2m|``; the
    function itself only combines the two polygamma enclosures, so the
    identity stays a genuine cross-check.
    """
    if m < 1:
        raise DomainError("polygamma_quarter_gap requires m >= 1")
    return polygamma(2 * m, Fraction(1, 4), prec) - polygamma(2 * m, Fraction(3, 4), prec)
