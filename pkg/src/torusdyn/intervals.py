"""Closed real intervals with exact rational endpoints.

Arithmetic is exact; only ``sqrt``/``log``/``exp`` round, and they round
outward (integer square roots, or mpmath's ``iv`` context for the
transcendental functions).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import libmp

DEFAULT_BITS = 128


def _to_frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def sqrt_floor(x: Fraction, bits: int) -> Fraction:
    if x < 0:
        raise ValueError("square root of a negative number")
    scale = 1 << (2 * bits)
    return Fraction(math.isqrt((x.numerator * scale) // x.denominator), 1 << bits)


def sqrt_ceil(x: Fraction, bits: int) -> Fraction:
    if x < 0:
        raise ValueError("square root of a negative number")
    scale = 1 << (2 * bits)
    num = -((-x.numerator * scale) // x.denominator)
    r = math.isqrt(num)
    if r * r < num:
        r += 1
    return Fraction(r, 1 << bits)


def round_down(x: Fraction, bits: int) -> Fraction:
    """A dyadic rational <= x carrying about ``bits`` significant bits."""
    if x == 0:
        return x
    e = bits - _ilog2(abs(x))
    if e <= 0:
        return x if x.denominator == 1 else Fraction(math.floor(x))
    s = 1 << e
    return Fraction((x.numerator * s) // x.denominator, s)


def round_up(x: Fraction, bits: int) -> Fraction:
    return -round_down(-x, bits)


def _ilog2(x: Fraction) -> int:
    return x.numerator.bit_length() - x.denominator.bit_length()


def _mpf_bounds(lo: Fraction, hi: Fraction, prec: int):
    a = libmp.from_rational(lo.numerator, lo.denominator, prec, libmp.round_floor)
    b = libmp.from_rational(hi.numerator, hi.denominator, prec, libmp.round_ceiling)
    # mpf() rounds to the working precision, so widen it to keep a, b exact
    with mpmath.workprec(prec + 16):
        return mpmath.mpf(a), mpmath.mpf(b)


def _from_mpi(v) -> "Interval":
    a, b = v._mpi_
    return Interval(_mpf_tuple_to_frac(a), _mpf_tuple_to_frac(b))


def _mpf_tuple_to_frac(t) -> Fraction:
    p, q = libmp.to_rational(t)
    return Fraction(int(p), int(q))


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", _to_frac(self.lo))
        object.__setattr__(self, "hi", _to_frac(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x) -> "Interval":
        x = _to_frac(x)
        return cls(x, x)

    @classmethod
    def hull(cls, *xs: "Interval") -> "Interval":
        return cls(min(x.lo for x in xs), max(x.hi for x in xs))

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def rad(self) -> Fraction:
        return (self.hi - self.lo) / 2

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def overlaps(self, other: "Interval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def excludes_zero(self) -> bool:
        return self.lo > 0 or self.hi < 0

    def __add__(self, other):
        o = _coerce(other)
        return Interval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(other)
        return Interval(self.lo - o.hi, self.hi - o.lo)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __mul__(self, other):
        o = _coerce(other)
        ps = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Interval(min(ps), max(ps))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce(other)
        if not o.excludes_zero():
            raise ZeroDivisionError("interval divisor contains zero")
        return self * Interval(1 / o.hi, 1 / o.lo)

    def __pow__(self, n: int):
        if n == 0:
            return Interval.point(1)
        if n % 2 == 0 and self.lo < 0 < self.hi:
            m = max(-self.lo, self.hi)
            return Interval(Fraction(0), m**n)
        a, b = self.lo**n, self.hi**n
        return Interval(min(a, b), max(a, b))

    def abs(self) -> "Interval":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return Interval(Fraction(0), max(-self.lo, self.hi))

    def max(self, other: "Interval") -> "Interval":
        return Interval(max(self.lo, other.lo), max(self.hi, other.hi))

    def rounded(self, bits: int = DEFAULT_BITS) -> "Interval":
        """Outward rounding to dyadic endpoints (keeps numbers small)."""
        return Interval(round_down(self.lo, bits), round_up(self.hi, bits))

    def sqrt(self, bits: int = DEFAULT_BITS) -> "Interval":
        if self.lo < 0:
            raise ValueError("square root of an interval with negative part")
        return Interval(sqrt_floor(self.lo, bits), sqrt_ceil(self.hi, bits))

    def log(self, bits: int = DEFAULT_BITS) -> "Interval":
        if self.lo <= 0:
            raise ValueError("log of an interval touching zero")
        if self.lo == 1 and self.hi == 1:
            return Interval.point(0)
        ctx = mpmath.iv
        old = ctx.prec
        ctx.prec = bits
        try:
            v = ctx.log(ctx.mpf(_mpf_bounds(self.lo, self.hi, bits)))
        finally:
            ctx.prec = old
        return _from_mpi(v)

    def exp(self, bits: int = DEFAULT_BITS) -> "Interval":
        ctx = mpmath.iv
        old = ctx.prec
        ctx.prec = bits
        try:
            v = ctx.exp(ctx.mpf(_mpf_bounds(self.lo, self.hi, bits)))
        finally:
            ctx.prec = old
        return _from_mpi(v)

    def __float__(self):
        return float(self.mid)

    def to_mpf(self):
        return mpmath.mpf(self.mid.numerator) / self.mid.denominator

    def decimal_pair(self, digits: int = 20) -> list[str]:
        return [decimal_floor(self.lo, digits), decimal_ceil(self.hi, digits)]

    def __repr__(self):
        lo, hi = self.decimal_pair(12)
        return f"Interval[{lo}, {hi}]"


def _coerce(x) -> Interval:
    if isinstance(x, Interval):
        return x
    return Interval.point(x)


def _decimal_scale(x: Fraction, digits: int) -> int:
    if x == 0:
        return digits
    mag = len(str(abs(x.numerator) // x.denominator)) if abs(x) >= 1 else 0
    if abs(x) < 1:
        # number of leading zeros after the point
        lead = 0
        y = abs(x)
        while y < Fraction(1, 10) and lead < 4 * digits:
            y *= 10
            lead += 1
        return digits + lead
    return max(digits - mag, 0)


def _format_scaled(n: int, scale: int) -> str:
    sign = "-" if n < 0 else ""
    n = abs(n)
    if scale == 0:
        return f"{sign}{n}"
    s = str(n).rjust(scale + 1, "0")
    return f"{sign}{s[:-scale]}.{s[-scale:]}"


def decimal_floor(x: Fraction, digits: int = 20) -> str:
    x = _to_frac(x)
    scale = _decimal_scale(x, digits)
    return _format_scaled(math.floor(x * 10**scale), scale)


def decimal_ceil(x: Fraction, digits: int = 20) -> str:
    x = _to_frac(x)
    scale = _decimal_scale(x, digits)
    return _format_scaled(math.ceil(x * 10**scale), scale)
