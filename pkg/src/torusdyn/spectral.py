"""Certified spectral radii and root moduli.

Root approximations come from mpmath, but they are only used as centres.
The enclosure itself is the Gerschgorin-type inclusion for polynomials:
for a monic squarefree ``s`` of degree ``n`` and distinct points ``z_i``,
every root lies in some disc ``|x - z_i| <= n |w_i|`` with
``w_i = s(z_i) / prod_{j != i} (z_i - z_j)``, and each connected component
made of ``m`` discs holds exactly ``m`` roots.  The ``w_i`` are evaluated in
exact Gaussian-rational arithmetic, so a wrong float root can only make a
disc wide, never make the certificate false.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath

from . import polynomial as P
from .gaussian import GaussRat, abs2, re_im
from .intervals import Interval, sqrt_ceil, sqrt_floor
from .linalg import as_matrix, char_poly

DEFAULT_REL_TOL = Fraction(1, 10**12)
START_BITS = 96
MAX_BITS = 4096


class PrecisionExhausted(ArithmeticError):
    pass


@dataclass(frozen=True)
class RadiusBound:
    """Enclosure ``[lo, hi]`` of a spectral radius.

    ``tight`` is False when the precision budget ran out before the requested
    relative error was met; the interval is still a valid enclosure.
    """

    lo: Fraction
    hi: Fraction
    exactly_one: bool = False
    tight: bool = True

    @classmethod
    def one(cls) -> "RadiusBound":
        return cls(Fraction(1), Fraction(1), True, True)

    @property
    def interval(self) -> Interval:
        return Interval(self.lo, self.hi)

    @property
    def value(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def abs_error(self) -> Fraction:
        return (self.hi - self.lo) / 2

    @property
    def rel_error(self) -> Fraction:
        return self.abs_error / self.value if self.value else self.abs_error

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def log(self, bits: int = 128) -> Interval:
        if self.exactly_one:
            return Interval.point(0)
        return self.interval.log(bits)

    def __float__(self):
        return float(self.value)


# -- exact unit-radius test ---------------------------------------------------


def _cayley_real_parts(s: Sequence) -> tuple[list, list]:
    """Real and imaginary parts of (t+i)^n s((t-i)/(t+i))."""
    n = len(s) - 1
    i = GaussRat(0, 1)
    tm, tp = [-i, Fraction(1)], [i, Fraction(1)]
    q: list = []
    for j, c in enumerate(s):
        if c != 0:
            q = P.add(q, P.scale(P.mul(P.power(tm, j), P.power(tp, n - j)), c))
    re = [re_im(c)[0] for c in q]
    im = [re_im(c)[1] for c in q]
    return P.trim(re), P.trim(im)


def unit_circle_root_count(p: Sequence) -> int:
    """Number of distinct roots of ``p`` on |x| = 1, decided exactly."""
    s = P.squarefree_part(p)
    if len(s) <= 1:
        return 0
    re, im = _cayley_real_parts(s)
    g = P.gcd(re, im) if im else P.monic(re)
    count = P.count_real_roots(g) if len(g) > 1 else 0
    if P.evaluate(s, 1) == 0:
        count += 1
    return count


def is_exactly_one(p: Sequence) -> bool:
    """True iff the largest root modulus of ``p`` is exactly 1.

    Monic Gaussian-integer polynomials go through Kronecker's theorem
    (cyclotomic trial division of p * conj(p)).  Anything else uses the
    Cayley transform to count unit-circle roots exactly and certifies that
    the remaining roots lie strictly inside the disc.
    """
    p = P.trim(p)
    if len(p) <= 1:
        return False
    if p[-1] == 1 and P.is_gaussian_integral(p):
        return P.is_kronecker_unit_radius(p)
    _, q = P.strip_x_power(p)
    s = P.squarefree_part(q)
    c = unit_circle_root_count(s)
    if c == 0:
        return False
    d = P.gcd(s, P.reciprocal_conj(s))
    if len(d) - 1 != c:
        # d also holds a pair r, 1/conj(r) off the circle: one has |r| > 1
        return False
    rest = P.exact_div(s, d)
    if len(rest) <= 1:
        return True
    bound = _radius_enclosure(rest, DEFAULT_REL_TOL, MAX_BITS)
    if bound.hi < 1:
        return True
    if bound.lo > 1:
        return False
    raise PrecisionExhausted("could not separate the residual roots from the unit circle")


# -- root enclosures ------------------------------------------------------------


def _mpf_to_fraction(x) -> Fraction:
    sign, man, exp, _ = x._mpf_
    if man == 0:
        return Fraction(0)
    man = -man if sign else man
    return Fraction(man << exp) if exp >= 0 else Fraction(man, 1 << -exp)


def _approx_roots(s: Sequence, bits: int) -> list:
    with mpmath.workprec(bits):
        coeffs = []
        for c in reversed(s):
            re, im = re_im(c)
            coeffs.append(mpmath.mpc(mpmath.mpf(re.numerator) / re.denominator, mpmath.mpf(im.numerator) / im.denominator))
        roots = mpmath.polyroots(coeffs, maxsteps=200 + 4 * len(coeffs), extraprec=bits, error=False)
        if not isinstance(roots, (list, tuple)):
            roots = [roots]
        out = []
        for z in roots:
            z = mpmath.mpc(z)
            out.append(GaussRat(_mpf_to_fraction(z.real), _mpf_to_fraction(z.imag)))
    return out


@dataclass(frozen=True)
class RootCluster:
    """A connected union of inclusion discs holding ``size`` roots."""

    size: int
    modulus: Interval


def enclose_roots(s: Sequence, bits: int) -> list[RootCluster]:
    """Clusters of root enclosures for a monic squarefree polynomial."""
    s = P.monic(s)
    n = len(s) - 1
    if n == 0:
        return []
    if n == 1:
        z = -s[0]
        a2 = abs2(z)
        return [RootCluster(1, Interval(sqrt_floor(a2, bits), sqrt_ceil(a2, bits)))]
    zs = _approx_roots(s, bits)
    if len(set(zs)) < n:
        raise PrecisionExhausted("coincident root approximations")
    radii = []
    for i, z in enumerate(zs):
        den = Fraction(1)
        for j, y in enumerate(zs):
            if j != i:
                den *= abs2(z - y)
        w2 = abs2(P.evaluate(s, z)) / den
        radii.append(n * sqrt_ceil(w2, bits + 8))
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(n):
        for j in range(i + 1, n):
            r = radii[i] + radii[j]
            if abs2(zs[i] - zs[j]) <= r * r:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    clusters = []
    for members in groups.values():
        lo = min(sqrt_floor(abs2(zs[i]), bits + 8) - radii[i] for i in members)
        hi = max(sqrt_ceil(abs2(zs[i]), bits + 8) + radii[i] for i in members)
        clusters.append(RootCluster(len(members), Interval(max(lo, Fraction(0)), hi)))
    return clusters


def _rel_width_ok(iv: Interval, tol: Fraction) -> bool:
    return iv.hi - iv.lo <= 2 * tol * iv.lo


def _radius_enclosure(p: Sequence, tol: Fraction, max_bits: int) -> RadiusBound:
    _, q = P.strip_x_power(p)
    if len(q) <= 1:
        return RadiusBound(Fraction(0), Fraction(0))
    s = P.squarefree_part(q)
    bits = START_BITS
    last = None
    while bits <= max_bits:
        try:
            clusters = enclose_roots(s, bits)
        except PrecisionExhausted:
            bits *= 2
            continue
        lo = max(c.modulus.lo for c in clusters)
        hi = max(c.modulus.hi for c in clusters)
        last = RadiusBound(lo, hi)
        if hi - lo <= 2 * tol * lo:
            return last
        bits *= 2
    if last is None:
        bound = P.cauchy_bound(s)
        return RadiusBound(Fraction(0), bound, tight=False)
    return RadiusBound(last.lo, last.hi, tight=False)


def poly_spectral_radius(p: Sequence, rel_tol=DEFAULT_REL_TOL, max_bits: int = MAX_BITS) -> RadiusBound:
    p = P.trim(p)
    if is_exactly_one(p):
        return RadiusBound.one()
    return _radius_enclosure(p, Fraction(rel_tol), max_bits)


def spectral_radius(M, rel_tol=DEFAULT_REL_TOL, max_bits: int = MAX_BITS) -> RadiusBound:
    """Certified enclosure of the largest eigenvalue modulus of ``M``."""
    M = as_matrix(M)
    return poly_spectral_radius(char_poly(M), rel_tol, max_bits)


def root_moduli(p: Sequence, rel_tol=DEFAULT_REL_TOL, max_bits: int = MAX_BITS) -> list[Interval]:
    """One modulus enclosure per root of ``p`` counted with multiplicity,
    sorted by upper endpoint, largest first.

    Order statistics are monotone, so the j-th largest lower (upper)
    endpoint bounds the j-th largest true modulus from below (above).
    """
    p = P.trim(p)
    m, q = P.strip_x_power(p)
    lows: list[Fraction] = [Fraction(0)] * m
    highs: list[Fraction] = [Fraction(0)] * m
    tol = Fraction(rel_tol)
    for s, mult in P.squarefree_decomposition(q):
        bits = START_BITS
        clusters = None
        while bits <= max_bits:
            try:
                cand = enclose_roots(s, bits)
            except PrecisionExhausted:
                bits *= 2
                continue
            clusters = cand
            if all(_rel_width_ok(c.modulus, tol) for c in cand):
                break
            bits *= 2
        if clusters is None:
            raise PrecisionExhausted("root enclosure failed at every precision")
        for c in clusters:
            lows += [c.modulus.lo] * (c.size * mult)
            highs += [c.modulus.hi] * (c.size * mult)
    lows.sort(reverse=True)
    highs.sort(reverse=True)
    return [Interval(lo, hi) for lo, hi in zip(lows, highs)]


__all__ = [
    "PrecisionExhausted",
    "RadiusBound",
    "RootCluster",
    "enclose_roots",
    "is_exactly_one",
    "poly_spectral_radius",
    "root_moduli",
    "spectral_radius",
    "unit_circle_root_count",
]
