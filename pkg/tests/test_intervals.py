from fractions import Fraction

import mpmath
from hypothesis import given, strategies as st

from torusdyn.intervals import Interval, decimal_ceil, decimal_floor, sqrt_ceil, sqrt_floor

pos = st.fractions(min_value=Fraction(1, 1000), max_value=1000, max_denominator=1000)
anyf = st.fractions(min_value=-100, max_value=100, max_denominator=100)


def iv(a, b):
    return Interval(min(a, b), max(a, b))


@given(anyf, anyf, anyf, anyf, st.sampled_from(["+", "-", "*"]))
def test_arithmetic_encloses(a, b, c, d, op):
    x, y = iv(a, b), iv(c, d)
    z = {"+": x + y, "-": x - y, "*": x * y}[op]
    for u in (a, b):
        for v in (c, d):
            assert z.contains({"+": u + v, "-": u - v, "*": u * v}[op])


@given(pos)
def test_sqrt_bounds(x):
    lo, hi = sqrt_floor(x, 64), sqrt_ceil(x, 64)
    assert lo * lo <= x <= hi * hi
    assert hi - lo <= Fraction(1, 2**60)


@given(pos, pos)
def test_log_exp_enclose_mpmath(a, b):
    x = iv(a, b)
    mpmath.mp.dps = 60
    for u in (x.lo, x.hi):
        ref = mpmath.log(mpmath.mpf(u.numerator) / u.denominator)
        lg = x.log(128)
        assert mpmath.mpf(lg.lo.numerator) / lg.lo.denominator <= ref + mpmath.mpf(10) ** -35
        assert ref - mpmath.mpf(10) ** -35 <= mpmath.mpf(lg.hi.numerator) / lg.hi.denominator
    assert x.log(128).exp(128).contains(x.lo)


@given(anyf)
def test_decimal_rounding_is_outward(x):
    assert Fraction(decimal_floor(x, 10)) <= x <= Fraction(decimal_ceil(x, 10))


def test_excludes_zero():
    assert Interval(Fraction(1, 10**30), 1).excludes_zero()
    assert not Interval(-1, 1).excludes_zero()
