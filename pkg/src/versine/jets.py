"""Truncated Taylor (jet) arithmetic over certified enclosures.

A jet at x0 stores Taylor coefficients ``a_k = f^(k)(x0)/k!`` up to a
truncation order; arithmetic and elementary functions propagate whole
jets through the standard power-series recurrences, giving a third,
independent route to high-order derivatives.  Coefficients are kept as
Taylor coefficients rather than raw derivatives so the recurrences stay
well scaled; conversion happens only in :meth:`Jet.derivative`.
"""

from __future__ import annotations

import math
import warnings
from fractions import Fraction
from typing import Callable, Union

from .ball import DomainError, PiMultiple, PrecReal, as_ball, pi_ball, working_prec

__all__ = ["Jet", "jet_of", "jet_variable", "JET_FUNCTIONS", "PrecisionLossWarning"]

MAX_ORDER = 64


class PrecisionLossWarning(UserWarning):
    """A jet coefficient's relative radius exceeded the comfort threshold."""


class Jet:
    """Taylor coefficients of a function at a fixed expansion point."""

    __slots__ = ("x0", "coeffs")

    def __init__(self, x0, coeffs):
        self.x0 = x0  # PrecReal or None for point-free (constant) jets
        self.coeffs = tuple(coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def derivative(self, k: int) -> PrecReal:
        """f^(k)(x0) = k! * a_k."""
        return self.coeffs[k].mul_fraction(Fraction(math.factorial(k)))

    def _compat(self, other: "Jet") -> None:
        if len(self.coeffs) != len(other.coeffs):
            raise DomainError("jet orders do not match")
        if self.x0 is not None and other.x0 is not None and self.x0._mid != other.x0._mid:
            raise DomainError("jet expansion points do not match")

    def _point(self, other: "Jet"):
        return self.x0 if self.x0 is not None else other.x0

    # ------------------------------------------------------------------

    def __add__(self, other: "Jet") -> "Jet":
        self._compat(other)
        return Jet(self._point(other), (a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Jet") -> "Jet":
        self._compat(other)
        return Jet(self._point(other), (a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "Jet":
        return Jet(self.x0, (-a for a in self.coeffs))

    def __mul__(self, other: "Jet") -> "Jet":
        self._compat(other)
        a, b = self.coeffs, other.coeffs
        out = []
        for k in range(len(a)):
            acc = a[0] * b[k]
            for j in range(1, k + 1):
                acc = acc + a[j] * b[k - j]
            out.append(acc)
        return Jet(self._point(other), out)

    def add_scalar(self, c) -> "Jet":
        return Jet(self.x0, (self.coeffs[0] + c,) + self.coeffs[1:])

    def mul_scalar(self, c) -> "Jet":
        return Jet(self.x0, (a * c for a in self.coeffs))

    def __truediv__(self, other: "Jet") -> "Jet":
        """Linear long-division recurrence (tighter than reciprocal-then-mul)."""
        self._compat(other)
        a, b = self.coeffs, other.coeffs
        if b[0].contains_zero():
            raise DomainError("jet division by a series whose constant term encloses zero")
        out = [a[0] / b[0]]
        for k in range(1, len(a)):
            acc = a[k]
            for j in range(1, k + 1):
                acc = acc - b[j] * out[k - j]
            out.append(acc / b[0])
        return Jet(self._point(other), out)

    def reciprocal(self) -> "Jet":
        one = PrecReal.exact(1, self.coeffs[0].prec)
        zero = PrecReal.zero(self.coeffs[0].prec)
        numer = Jet(self.x0, (one,) + (zero,) * self.order)
        return numer / self

    def exp(self) -> "Jet":
        a = self.coeffs
        out = [a[0].exp()]
        for k in range(1, len(a)):
            acc = a[1] * out[k - 1]
            for j in range(2, k + 1):
                acc = acc + a[j].mul_fraction(Fraction(j)) * out[k - j]
            out.append(acc.mul_fraction(Fraction(1, k)))
        return Jet(self.x0, out)

    def sin_cos(self) -> tuple["Jet", "Jet"]:
        a = self.coeffs
        s = [a[0].sin()]
        c = [a[0].cos()]
        for k in range(1, len(a)):
            ss = a[1] * c[k - 1]
            cc = a[1] * s[k - 1]
            for j in range(2, k + 1):
                aj = a[j].mul_fraction(Fraction(j))
                ss = ss + aj * c[k - j]
                cc = cc + aj * s[k - j]
            s.append(ss.mul_fraction(Fraction(1, k)))
            c.append(cc.mul_fraction(Fraction(-1, k)))
        return Jet(self.x0, s), Jet(self.x0, c)

    def sin(self) -> "Jet":
        return self.sin_cos()[0]

    def cos(self) -> "Jet":
        return self.sin_cos()[1]


def jet_variable(x0: Union[PiMultiple, PrecReal, int, float, str, Fraction],
                 order: int, prec: int) -> Jet:
    """The identity function as a jet: coefficients (x0, 1, 0, ...)."""
    w = working_prec(prec)
    x0b = as_ball(x0, w)
    zero = PrecReal.zero(w)
    one = PrecReal.exact(1, w)
    return Jet(x0b, (x0b, one) + (zero,) * max(0, order - 1))


def _linear_halfpi_minus_x(x0, order: int, prec: int) -> Jet:
    """The jet of pi/2 - x; exact zero constant term at x0 = pi/2."""
    w = working_prec(prec)
    if isinstance(x0, PiMultiple):
        a0 = pi_ball(w).mul_fraction(Fraction(1, 2) - x0.ratio)
        if x0.ratio == Fraction(1, 2):
            a0 = PrecReal.zero(w)
        x0b = x0.to_ball(w)
    else:
        x0b = as_ball(x0, w)
        a0 = pi_ball(w).mul_fraction(Fraction(1, 2)) - x0b
    none = PrecReal.zero(w)
    coeffs = [a0, PrecReal.exact(-1, w)] + [none] * max(0, order - 1)
    return Jet(x0b, coeffs[: order + 1])


def _build_recip_versine(var: Jet) -> Jet:
    return var.cos().mul_scalar(-1).add_scalar(1).reciprocal()


def _build_recip_coversine(var: Jet) -> Jet:
    return var.sin().mul_scalar(-1).add_scalar(1).reciprocal()


def _build_exp_cot(var: Jet) -> Jet:
    s, c = var.sin_cos()
    return (c / s).exp()


def _build_exp_inv_one_plus_tan(var: Jet) -> Jet:
    # 1/(1 + tan x) = cos/(cos + sin); stays finite across x = 0
    s, c = var.sin_cos()
    return (c / (c + s)).exp()


def _build_cosecant(var: Jet) -> Jet:
    return var.sin().reciprocal()


def _build_cot_half(var: Jet) -> Jet:
    # sin x / (1 - cos x), the half-angle cotangent
    s, c = var.sin_cos()
    return s / c.mul_scalar(-1).add_scalar(1)


JET_FUNCTIONS: dict[str, Callable[[Jet], Jet]] = {
    "recip_versine": _build_recip_versine,
    "recip_coversine": _build_recip_coversine,
    "exp_cot": _build_exp_cot,
    "exp_inv_one_plus_tan": _build_exp_inv_one_plus_tan,
    "cosecant": _build_cosecant,
    "cot_half": _build_cot_half,
}


def jet_of(fn_id: str, x0, order: int, prec: int) -> Jet:
    """Jet of a named function at x0.

    Known ids: recip_versine (1/(1-cos x)), recip_coversine
    (1/(1-sin x)), exp_cot (exp(cot x)), exp_inv_one_plus_tan
    (exp(1/(1+tan x))), fejer_cosine_sum ((pi/2 - x)/(1-cos x)),
    cosecant (1/sin x), cot_half (sin x/(1-cos x)).
    """
    if order < 0:
        raise DomainError("jet order must be >= 0")
    if order > MAX_ORDER:
        raise DomainError(f"jet order capped at {MAX_ORDER}")
    if fn_id == "fejer_cosine_sum":
        lin = _linear_halfpi_minus_x(x0, order, prec)
        var = Jet(lin.x0, (lin.x0, PrecReal.exact(1, lin.x0.prec))
                  + (PrecReal.zero(lin.x0.prec),) * max(0, order - 1))
        jet = lin * _build_recip_versine(var)
    else:
        try:
            builder = JET_FUNCTIONS[fn_id]
        except KeyError:
            known = ", ".join(sorted(JET_FUNCTIONS) + ["fejer_cosine_sum"])
            raise DomainError(f"unknown function id {fn_id!r}; known: {known}") from None
        jet = builder(jet_variable(x0, order, prec))
    _warn_on_blowup(fn_id, jet)
    return jet


def _warn_on_blowup(fn_id: str, jet: Jet) -> None:
    for k, a in enumerate(jet.coeffs):
        # relative accuracy is only meaningful away from zero: coefficients
        # whose enclosure straddles zero are handled by the sign machinery
        if not (a.is_positive() or a.is_negative()):
            continue
        if a.rad_fraction() > abs(a.mid_fraction()) * Fraction(1, 10**6):
            warnings.warn(
                f"jet of {fn_id}: coefficient {k} carries relative radius > 1e-6; "
                "raise the precision for trustworthy high orders",
                PrecisionLossWarning,
                stacklevel=3,
            )
            return
