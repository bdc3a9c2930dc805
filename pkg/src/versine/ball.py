"""Midpoint-radius (ball) arithmetic on top of mpmath's raw mpf layer.

A :class:`PrecReal` represents a real number as an enclosure
``[mid - rad, mid + rad]``: every operation returns a ball that is
guaranteed to contain the exact result whenever the operands contain
their exact inputs.

Rounding policy
---------------
Midpoints are computed with round-to-nearest at the ball's working
precision.  Instead of directed rounding on midpoints, every operation
folds a slack of ``2^(1-prec) * |mid|`` into the radius (``2^(2-prec)``
for transcendental calls, whose last-ulp behaviour is not guaranteed by
the substrate).  Radius bookkeeping runs at a fixed low precision with
rounding away from zero, so radii can only ever be overestimated.

Library entry points that accept a ``prec`` argument compute internally
at ``2 * prec`` bits (the "two digits of working precision per digit
requested" rule) and return balls carrying that working precision, so
reported radii stay honest without a final destructive re-rounding.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Integral
from typing import Union

from mpmath import mp
from mpmath.libmp import (
    fone,
    fzero,
    from_int,
    from_man_exp,
    from_rational,
    from_str,
    mpf_abs,
    mpf_add,
    mpf_cmp,
    mpf_cos,
    mpf_div,
    mpf_exp,
    mpf_le,
    mpf_log,
    mpf_lt,
    mpf_mul,
    mpf_neg,
    mpf_pi,
    mpf_pow_int,
    mpf_shift,
    mpf_sin,
    mpf_sqrt,
    mpf_sub,
    to_rational,
    to_str,
)

__all__ = [
    "DomainError",
    "PoleProximityError",
    "PrecReal",
    "PiMultiple",
    "as_ball",
    "pi_ball",
    "working_prec",
]

# Radius arithmetic: low precision, rounded away from zero, never optimistic.
_RPREC = 30
_UP = "u"
_NEAREST = "n"


class DomainError(ValueError):
    """An argument lies outside an operation's mathematical domain."""


class PoleProximityError(DomainError):
    """An evaluation point is too close to a pole for the working precision."""


def working_prec(prec: int) -> int:
    """Internal working precision for a requested precision of `prec` bits."""
    return 2 * prec


def _rad_add(*terms):
    acc = fzero
    for t in terms:
        if t is not fzero:
            acc = mpf_add(acc, t, _RPREC, _UP)
    return acc


def _slack(mid, prec: int, bits: int = 1):
    # 2^(bits-prec) * |mid|; exact scaling, no rounding involved.
    if mid == fzero:
        return fzero
    return mpf_shift(mpf_abs(mid), bits - prec)


ExactLike = Union[int, Fraction]
RealLike = Union[int, float, str, Fraction, "PrecReal", "PiMultiple"]


class PrecReal:
    """Certified enclosure ``[mid - rad, mid + rad]`` at a working precision."""

    __slots__ = ("_mid", "_rad", "prec")

    def __init__(self, mid, rad, prec: int):
        self._mid = mid
        self._rad = rad
        self.prec = prec

    # ------------------------------------------------------------------
    # constructors
    # ------------------------------------------------------------------

    @classmethod
    def exact(cls, value: ExactLike, prec: int) -> "PrecReal":
        """Ball of radius zero when `value` is a dyadic rational, else one ulp."""
        if isinstance(value, Integral):
            return cls(from_int(int(value)), fzero, prec)
        if isinstance(value, Fraction):
            p, q = value.numerator, value.denominator
            if q & (q - 1) == 0:  # power of two: exactly representable
                mid = mpf_div(from_int(p), from_int(q), max(prec, p.bit_length() + 4), _NEAREST)
                return cls(mid, fzero, prec)
            mid = from_rational(p, q, prec, _NEAREST)
            return cls(mid, _slack(mid, prec), prec)
        raise TypeError(f"cannot build an exact ball from {type(value).__name__}")

    @classmethod
    def from_mpf_tuple(cls, t, prec: int) -> "PrecReal":
        return cls(t, fzero, prec)

    @classmethod
    def from_float(cls, x: float, prec: int) -> "PrecReal":
        # binary floats are dyadic, hence exact
        m, e = x.as_integer_ratio()
        return cls(mpf_div(from_int(m), from_int(e), max(prec, 64), _NEAREST), fzero, prec)

    @classmethod
    def from_str(cls, s: str, prec: int) -> "PrecReal":
        mid = from_str(s, prec, _NEAREST)
        return cls(mid, _slack(mid, prec), prec)

    @classmethod
    def zero(cls, prec: int) -> "PrecReal":
        return cls(fzero, fzero, prec)

    # ------------------------------------------------------------------
    # views
    # ------------------------------------------------------------------

    @property
    def mid(self):
        return mp.make_mpf(self._mid)

    @property
    def rad(self):
        return mp.make_mpf(self._rad)

    def mid_fraction(self) -> Fraction:
        return Fraction(*map(int, to_rational(self._mid)))

    def rad_fraction(self) -> Fraction:
        return Fraction(*map(int, to_rational(self._rad)))

    def lower_fraction(self) -> Fraction:
        return self.mid_fraction() - self.rad_fraction()

    def upper_fraction(self) -> Fraction:
        return self.mid_fraction() + self.rad_fraction()

    def mid_str(self, digits: int = 36) -> str:
        return to_str(self._mid, digits)

    def rad_str(self, digits: int = 10) -> str:
        return to_str(self._rad, digits)

    def __float__(self) -> float:
        return float(self.mid)

    def __repr__(self) -> str:
        return f"PrecReal({to_str(self._mid, 24)} +/- {to_str(self._rad, 6)})"

    # ------------------------------------------------------------------
    # predicates
    # ------------------------------------------------------------------

    def is_exact(self) -> bool:
        return self._rad == fzero

    def is_exact_zero(self) -> bool:
        return self._mid == fzero and self._rad == fzero

    def contains(self, value: Union[ExactLike, "PrecReal"]) -> bool:
        if isinstance(value, PrecReal):
            other = value
            return (self.lower_fraction() <= other.lower_fraction()
                    and other.upper_fraction() <= self.upper_fraction())
        v = Fraction(value) if not isinstance(value, Fraction) else value
        return self.lower_fraction() <= v <= self.upper_fraction()

    def overlaps(self, other: "PrecReal") -> bool:
        return (self.lower_fraction() <= other.upper_fraction()
                and other.lower_fraction() <= self.upper_fraction())

    def contains_zero(self) -> bool:
        return self.lower_fraction() <= 0 <= self.upper_fraction()

    def is_positive(self) -> bool:
        """True when the whole enclosure lies strictly above zero."""
        return mpf_lt(self._rad, self._mid)

    def is_negative(self) -> bool:
        return mpf_lt(self._rad, mpf_neg(self._mid))

    def is_nonnegative(self) -> bool:
        return mpf_le(self._rad, self._mid) or self.is_exact_zero()

    def midpoint_cmp(self, other: "PrecReal") -> int:
        return mpf_cmp(self._mid, other._mid)

    def midpoint_diff(self, other: "PrecReal") -> Fraction:
        return abs(self.mid_fraction() - other.mid_fraction())

    # ------------------------------------------------------------------
    # arithmetic
    # ------------------------------------------------------------------

    def _coerce(self, other) -> "PrecReal":
        if isinstance(other, PrecReal):
            return other
        if isinstance(other, (int, Fraction)):
            return PrecReal.exact(other, self.prec)
        return NotImplemented  # type: ignore[return-value]

    def __neg__(self) -> "PrecReal":
        return PrecReal(mpf_neg(self._mid), self._rad, self.prec)

    def __abs__(self) -> "PrecReal":
        return PrecReal(mpf_abs(self._mid), self._rad, self.prec)

    def __add__(self, other) -> "PrecReal":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        prec = max(self.prec, o.prec)
        mid = mpf_add(self._mid, o._mid, prec, _NEAREST)
        rad = _rad_add(self._rad, o._rad, _slack(mid, prec))
        return PrecReal(mid, rad, prec)

    __radd__ = __add__

    def __sub__(self, other) -> "PrecReal":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        prec = max(self.prec, o.prec)
        mid = mpf_sub(self._mid, o._mid, prec, _NEAREST)
        rad = _rad_add(self._rad, o._rad, _slack(mid, prec))
        return PrecReal(mid, rad, prec)

    def __rsub__(self, other) -> "PrecReal":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o.__sub__(self)

    def __mul__(self, other) -> "PrecReal":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        prec = max(self.prec, o.prec)
        mid = mpf_mul(self._mid, o._mid, prec, _NEAREST)
        rad = fzero
        if self._rad is not fzero or o._rad is not fzero:
            ra, rb = self._rad, o._rad
            rad = _rad_add(
                mpf_mul(mpf_abs(self._mid), rb, _RPREC, _UP),
                mpf_mul(mpf_abs(o._mid), ra, _RPREC, _UP),
                mpf_mul(ra, rb, _RPREC, _UP),
            )
        rad = _rad_add(rad, _slack(mid, prec))
        return PrecReal(mid, rad, prec)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "PrecReal":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        prec = max(self.prec, o.prec)
        bm = mpf_abs(o._mid)
        if not mpf_lt(o._rad, bm):
            raise DomainError("division by a ball whose enclosure contains zero")
        mid = mpf_div(self._mid, o._mid, prec, _NEAREST)
        # |x/y - mx/my| <= (ra + |mx/my| rb) / (|my| - rb)
        denom = mpf_sub(bm, o._rad, _RPREC, "d")
        num = _rad_add(self._rad, mpf_mul(mpf_abs(mid), o._rad, _RPREC, _UP))
        rad = fzero if num is fzero else mpf_div(num, denom, _RPREC, _UP)
        rad = _rad_add(rad, _slack(mid, prec))
        return PrecReal(mid, rad, prec)

    def __rtruediv__(self, other) -> "PrecReal":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o.__truediv__(self)

    def __pow__(self, n: int) -> "PrecReal":
        if not isinstance(n, Integral):
            return NotImplemented
        n = int(n)
        prec = self.prec
        if n == 0:
            return PrecReal(fone, fzero, prec)
        am = mpf_abs(self._mid)
        if n < 0 and not mpf_lt(self._rad, am):
            raise DomainError("negative power of a ball whose enclosure contains zero")
        mid = mpf_pow_int(self._mid, n, prec, _NEAREST)
        rad = fzero
        if self._rad is not fzero:
            # mean-value bound: |x^n - m^n| <= |n| * sup|x|^(n-1) * rad,
            # where the sup runs over the enclosure (|m|+rad for n>0,
            # |m|-rad for n<0 since t^(n-1) is then decreasing).
            if n > 0:
                edge = mpf_add(am, self._rad, _RPREC, _UP)
            else:
                edge = mpf_sub(am, self._rad, _RPREC, "d")
            d = mpf_pow_int(edge, n - 1, _RPREC, _UP)
            rad = mpf_mul(mpf_mul(from_int(abs(n)), d, _RPREC, _UP), self._rad, _RPREC, _UP)
        rad = _rad_add(rad, _slack(mid, prec))
        return PrecReal(mid, rad, prec)

    def mul_fraction(self, fr: Fraction) -> "PrecReal":
        prec = self.prec
        mid = mpf_mul(self._mid, from_int(fr.numerator), prec + 8, _NEAREST)
        mid = mpf_div(mid, from_int(fr.denominator), prec, _NEAREST)
        rad = fzero
        if self._rad is not fzero:
            scale = mpf_div(from_int(abs(fr.numerator)), from_int(fr.denominator), _RPREC, _UP)
            rad = mpf_mul(self._rad, scale, _RPREC, _UP)
        rad = _rad_add(rad, _slack(mid, prec))
        return PrecReal(mid, rad, prec)

    def scale2(self, k: int) -> "PrecReal":
        """Multiply by 2^k (exact)."""
        rad = fzero if self._rad is fzero else mpf_shift(self._rad, k)
        return PrecReal(mpf_shift(self._mid, k), rad, self.prec)

    def widen(self, bound) -> "PrecReal":
        """Return a ball with `bound` added to the radius (tail remainders)."""
        if isinstance(bound, PrecReal):
            extra = mpf_add(mpf_abs(bound._mid), bound._rad, _RPREC, _UP)
        elif isinstance(bound, float):
            extra = mpf_abs(from_str(repr(bound), _RPREC, _UP))
        elif isinstance(bound, Fraction):
            extra = mpf_abs(from_rational(bound.numerator, bound.denominator, _RPREC, _UP))
        elif isinstance(bound, Integral):
            extra = mpf_abs(from_int(int(bound)))
        else:
            extra = mpf_abs(bound)  # raw mpf tuple
        return PrecReal(self._mid, _rad_add(self._rad, extra), self.prec)

    # ------------------------------------------------------------------
    # elementary functions
    # ------------------------------------------------------------------

    def sqrt(self) -> "PrecReal":
        prec = self.prec
        low = mpf_sub(self._mid, self._rad, _RPREC, "d")
        if not mpf_lt(fzero, low):
            raise DomainError("sqrt of a ball not strictly positive")
        mid = mpf_sqrt(self._mid, prec, _NEAREST)
        rad = fzero
        if self._rad is not fzero:
            rad = mpf_div(self._rad, mpf_shift(mpf_sqrt(low, _RPREC, "d"), 1), _RPREC, _UP)
        rad = _rad_add(rad, _slack(mid, prec, 2))
        return PrecReal(mid, rad, prec)

    def exp(self) -> "PrecReal":
        prec = self.prec
        mid = mpf_exp(self._mid, prec, _NEAREST)
        rad = fzero
        if self._rad is not fzero:
            # |e^x - e^m| <= e^m (e^rad - 1), and e^rad - 1 <= rad * e^rad
            grow = mpf_exp(self._rad, _RPREC, _UP)
            rad = mpf_mul(mpf_mul(mid, self._rad, _RPREC, _UP), grow, _RPREC, _UP)
        rad = _rad_add(rad, _slack(mid, prec, 2))
        return PrecReal(mid, rad, prec)

    def log(self) -> "PrecReal":
        prec = self.prec
        low = mpf_sub(self._mid, self._rad, _RPREC, "d")
        if not mpf_lt(fzero, low):
            raise DomainError("log of a ball not strictly positive")
        mid = mpf_log(self._mid, prec, _NEAREST)
        rad = fzero
        if self._rad is not fzero:
            rad = mpf_div(self._rad, low, _RPREC, _UP)
        rad = _rad_add(rad, _slack(mid, prec, 2))
        return PrecReal(mid, rad, prec)

    def sin(self) -> "PrecReal":
        prec = self.prec
        mid = mpf_sin(self._mid, prec, _NEAREST)
        # sin is 1-Lipschitz; |mid| <= 1 so an absolute 2-ulp slack suffices
        rad = _rad_add(self._rad, _slack(fone, prec, 2))
        return PrecReal(mid, rad, prec)

    def cos(self) -> "PrecReal":
        prec = self.prec
        mid = mpf_cos(self._mid, prec, _NEAREST)
        rad = _rad_add(self._rad, _slack(fone, prec, 2))
        return PrecReal(mid, rad, prec)

def pi_ball(prec: int) -> PrecReal:
    mid = mpf_pi(prec, _NEAREST)
    return PrecReal(mid, _slack(mid, prec), prec)


@dataclass(frozen=True)
class PiMultiple:
    """An evaluation point ``ratio * pi`` with an exact rational ratio.

    Grids built from rational multiples of pi keep pole distances and
    reflection arguments exact, which is what lets equality cases (pi/2,
    pi) be certified instead of merely approximated.
    """

    ratio: Fraction

    def __post_init__(self):
        object.__setattr__(self, "ratio", Fraction(self.ratio))

    def to_ball(self, prec: int) -> PrecReal:
        return pi_ball(prec).mul_fraction(self.ratio)

    def reflect(self) -> "PiMultiple":
        """The point 2*pi - x."""
        return PiMultiple(2 - self.ratio)

    def __float__(self) -> float:
        import math

        return float(self.ratio) * math.pi

    def __str__(self) -> str:
        r = self.ratio
        if r == 1:
            return "pi"
        if r.denominator == 1:
            return f"{r.numerator}pi"
        if r.numerator == 1:
            return f"pi/{r.denominator}"
        return f"{r.numerator}pi/{r.denominator}"


def as_ball(x: RealLike, prec: int) -> PrecReal:
    """Coerce a point-like value to a ball at the given working precision."""
    if isinstance(x, PrecReal):
        return x
    if isinstance(x, PiMultiple):
        return x.to_ball(prec)
    if isinstance(x, (int, Fraction)):
        return PrecReal.exact(x, prec)
    if isinstance(x, float):
        return PrecReal.from_float(x, prec)
    if isinstance(x, str):
        return PrecReal.from_str(x, prec)
    try:
        return PrecReal.from_mpf_tuple(x._mpf_, prec)  # mpmath mpf
    except AttributeError:
        raise TypeError(f"cannot interpret {type(x).__name__} as a real point")
