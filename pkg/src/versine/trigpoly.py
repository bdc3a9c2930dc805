"""Exact symbolic derivatives of the reciprocal versine 1/(1 - cos x).

Every derivative has the closed form ``N(c, s) / (1-c)^(n+1)`` with
``c = cos x``, ``s = sin x`` and an integer-coefficient polynomial N
whose s-degree is at most one after rewriting ``s^2 -> 1 - c^2``.
Differentiating once maps ``N/(1-c)^k`` to

    [ (-s N_c + c N_s)(1-c) - k s N ] / (1-c)^(k+1),

which this module iterates in exact integer arithmetic.  The result is
an oracle that is completely independent of the pole-series evaluation
route: the two only meet in cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .ball import DomainError, PiMultiple, PoleProximityError, PrecReal, as_ball, working_prec

__all__ = ["TrigRational", "recip_versine_deriv_exact", "eval_trig_rational"]


# dense integer polynomials in c, lowest degree first ------------------------

def _padd(a, b):
    n = max(len(a), len(b))
    return tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))


def _pneg(a):
    return tuple(-x for x in a)


def _pmul(a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return tuple(out)


def _pscale(a, k):
    return tuple(k * x for x in a)


def _pder(a):
    return tuple(i * a[i] for i in range(1, len(a)))


def _ptrim(a):
    n = len(a)
    while n and a[n - 1] == 0:
        n -= 1
    return tuple(a[:n])


def _peval(a, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for coef in reversed(a):
        acc = acc * x + coef
    return acc


_ONE_MINUS_C = (1, -1)  # 1 - c


@dataclass(frozen=True)
class TrigRational:
    """``(cos_part(c) + s * sin_part(c)) / (1 - c)^denom_power`` exactly.

    The parity structure is rigid: even derivative orders have
    ``sin_part == 0`` and odd orders have ``cos_part == 0``.
    """

    cos_part: tuple  # integer coefficients of A(c)
    sin_part: tuple  # integer coefficients of B(c)
    denom_power: int

    def derivative(self) -> "TrigRational":
        a, b, k = self.cos_part, self.sin_part, self.denom_power
        da, db = _pder(a), _pder(b)
        # A' part: (1-c)(c B - (1-c^2) B') - k (1-c^2) B
        one_minus_c2 = (1, 0, -1)
        new_a = _pmul(_ONE_MINUS_C, _padd(_pmul((0, 1), b), _pneg(_pmul(one_minus_c2, db))))
        new_a = _padd(new_a, _pscale(_pmul(one_minus_c2, b), -k))
        # B' part: -(1-c) A' - k A
        new_b = _padd(_pneg(_pmul(_ONE_MINUS_C, da)), _pscale(a, -k))
        return TrigRational(_ptrim(new_a), _ptrim(new_b), k + 1)

    # ------------------------------------------------------------------

    def numerator_at(self, c: Fraction, s_sign: int) -> tuple:
        """(A(c), B(c)) exactly; the numerator is A + s*B with s = s_sign*sqrt(1-c^2)."""
        return _peval(self.cos_part, c), _peval(self.sin_part, c)

    def value_at_pi(self) -> Fraction:
        """Exact value at x = pi, where (c, s) = (-1, 0)."""
        return _peval(self.cos_part, Fraction(-1)) / Fraction(2) ** self.denom_power

    def value_at_half_pi(self, s_sign: int = 1) -> Fraction:
        """Exact value at x = pi/2 (s_sign=+1) or 3pi/2 (s_sign=-1)."""
        a = _peval(self.cos_part, Fraction(0))
        b = _peval(self.sin_part, Fraction(0))
        return a + s_sign * b

    def nonzero_certificate(self, c: Fraction) -> bool:
        """True when the numerator provably does not vanish at cos x = c.

        ``A(c)^2 != (1-c^2) B(c)^2`` rules out ``A + s B = 0`` for either
        sign of ``s = +-sqrt(1-c^2)``; purely rational, hence exact.
        """
        a = _peval(self.cos_part, c)
        b = _peval(self.sin_part, c)
        return a * a != (1 - c * c) * b * b


@lru_cache(maxsize=None)
def recip_versine_deriv_exact(n: int) -> TrigRational:
    """Closed form of the n-th derivative of 1/(1 - cos x)."""
    if n < 0:
        raise DomainError("derivative order must be >= 0")
    if n == 0:
        return TrigRational((1,), (), 1)
    return recip_versine_deriv_exact(n - 1).derivative()


_EXACT_POINTS = {
    Fraction(1, 2): (Fraction(0), Fraction(1)),
    Fraction(1): (Fraction(-1), Fraction(0)),
    Fraction(3, 2): (Fraction(0), Fraction(-1)),
}


def eval_trig_rational(
    expr: TrigRational,
    x: Union[PiMultiple, PrecReal, int, float, str, Fraction],
    prec: int,
    guard_bits: Union[int, None] = None,
) -> PrecReal:
    """Evaluate ``expr`` at a point of (0, 2 pi).

    Half-pi multiples of pi evaluate exactly (radius zero); anything else
    substitutes cos/sin enclosures.  Points whose versine ``1 - cos x``
    drops below ``2^(-guard_bits)`` (default ``prec // 2``) are refused:
    the enclosure there would be uninformative.
    """
    w = working_prec(prec)
    guard = prec // 2 if guard_bits is None else guard_bits
    if isinstance(x, PiMultiple):
        if not 0 < x.ratio < 2:
            raise DomainError(f"point {x} outside (0, 2 pi)")
        pt = _EXACT_POINTS.get(x.ratio)
        if pt is not None:
            c, s = pt
            a, b = expr.numerator_at(c, 0)
            num = a + s * b
            val = num / (1 - c) ** expr.denom_power
            return PrecReal.exact(val, w)
    xb = as_ball(x, w)
    c = xb.cos()
    s = xb.sin()
    versin = 1 - c
    if not versin.is_positive() or versin.upper_fraction() < Fraction(1, 2**guard):
        raise PoleProximityError(
            f"1 - cos x below the 2^-{guard} pole guard near x = {float(xb.mid):.6g}"
        )
    acc = PrecReal.zero(w)
    for coef in reversed(expr.cos_part):
        acc = acc * c + coef
    if expr.sin_part:
        accs = PrecReal.zero(w)
        for coef in reversed(expr.sin_part):
            accs = accs * c + coef
        acc = acc + s * accs
    return acc / versin**expr.denom_power
