"""Exact Gaussian rationals.

Real values are kept as plain :class:`fractions.Fraction`; a :class:`GaussRat`
only ever holds a nonzero imaginary part.  Constructing ``GaussRat(a, 0)``
returns ``Fraction(a)``, so equality and hashing stay consistent across the
two representations.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational, str)):
        return Fraction(x)
    raise TypeError(f"cannot convert {x!r} to an exact rational")


def _parts(x):
    if isinstance(x, GaussRat):
        return x.real, x.imag
    if isinstance(x, (int, Fraction)):
        return Fraction(x), Fraction(0)
    return NotImplemented


class GaussRat:
    """An element ``a + b i`` of Q(i) with ``b != 0``."""

    __slots__ = ("real", "imag")

    def __new__(cls, real, imag=0):
        re, im = _frac(real), _frac(imag)
        if im == 0:
            return re
        obj = super().__new__(cls)
        obj.real = re
        obj.imag = im
        return obj

    def conjugate(self):
        return GaussRat(self.real, -self.imag)

    def abs2(self) -> Fraction:
        return self.real * self.real + self.imag * self.imag

    def __add__(self, other):
        o = _parts(other)
        if o is NotImplemented:
            return o
        return GaussRat(self.real + o[0], self.imag + o[1])

    __radd__ = __add__

    def __sub__(self, other):
        o = _parts(other)
        if o is NotImplemented:
            return o
        return GaussRat(self.real - o[0], self.imag - o[1])

    def __rsub__(self, other):
        o = _parts(other)
        if o is NotImplemented:
            return o
        return GaussRat(o[0] - self.real, o[1] - self.imag)

    def __mul__(self, other):
        o = _parts(other)
        if o is NotImplemented:
            return o
        a, b = self.real, self.imag
        c, d = o
        return GaussRat(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _parts(other)
        if o is NotImplemented:
            return o
        c, d = o
        den = c * c + d * d
        if den == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        a, b = self.real, self.imag
        return GaussRat((a * c + b * d) / den, (b * c - a * d) / den)

    def __rtruediv__(self, other):
        o = _parts(other)
        if o is NotImplemented:
            return o
        return GaussRat(*o) * inv(self)

    def __neg__(self):
        return GaussRat(-self.real, -self.imag)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return inv(self) ** (-n)
        result, base = Fraction(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, GaussRat):
            return self.real == other.real and self.imag == other.imag
        if isinstance(other, (int, Fraction)):
            return False
        if isinstance(other, complex):
            return self.real == other.real and self.imag == other.imag
        return NotImplemented

    def __hash__(self):
        return hash((self.real, self.imag))

    def __complex__(self):
        return complex(float(self.real), float(self.imag))

    def __repr__(self):
        return f"GaussRat({self.real}, {self.imag})"

    def __str__(self):
        sign = "+" if self.imag > 0 else "-"
        return f"{self.real}{sign}{abs(self.imag)}i"


I = GaussRat(0, 1)


def gauss(real, imag=0):
    """Canonical element of Q(i): a Fraction when real, else a GaussRat."""
    return GaussRat(real, imag)


def to_exact(x):
    """Coerce ints, strings, Fractions, GaussRats and ``[re, im]`` pairs."""
    if isinstance(x, (GaussRat, Fraction)):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(x, (int, str)):
        return Fraction(x)
    if isinstance(x, (list, tuple)) and len(x) == 2:
        return GaussRat(_frac(x[0]), _frac(x[1]))
    if isinstance(x, complex):
        if x.real != int(x.real) or x.imag != int(x.imag):
            raise TypeError("only integral complex literals are accepted")
        return GaussRat(int(x.real), int(x.imag))
    raise TypeError(f"cannot convert {x!r} to an element of Q(i)")


def re_im(x):
    p = _parts(x)
    if p is NotImplemented:
        raise TypeError(f"not an element of Q(i): {x!r}")
    return p


def abs2(x) -> Fraction:
    re, im = re_im(x)
    return re * re + im * im


def inv(x):
    re, im = re_im(x)
    den = re * re + im * im
    if den == 0:
        raise ZeroDivisionError("inverse of zero")
    return GaussRat(re / den, -im / den)


def conj(x):
    return x.conjugate() if isinstance(x, GaussRat) else x


def is_gaussian_integer(x) -> bool:
    re, im = re_im(x)
    return re.denominator == 1 and im.denominator == 1


def is_real(x) -> bool:
    return not isinstance(x, GaussRat)


def exact_str(x) -> list[str]:
    """``[re, im]`` as exact rational strings, the wire format for entries."""
    re, im = re_im(x)
    return [str(re), str(im)]
