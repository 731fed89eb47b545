"""Units of Z[alpha] for totally real fields and their regular representations."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import polynomial as P
from .intervals import Interval
from .linalg import ExactMatrix, det

ROOT_BITS = 200


class FieldError(ValueError):
    pass


class NotAUnit(ValueError):
    pass


class NotEnoughUnits(ValueError):
    pass


def _check_monic_int(poly: Sequence[int]) -> list[int]:
    poly = [int(c) for c in poly]
    while poly and poly[-1] == 0:
        poly.pop()
    if len(poly) < 2:
        raise FieldError("polynomial must have degree >= 1")
    if poly[-1] != 1:
        raise FieldError("polynomial must be monic")
    return poly


def is_totally_real(poly: Sequence[int]) -> bool:
    """Every root is real, counted with multiplicity (Sturm sequences)."""
    poly = _check_monic_int(poly)
    return P.real_roots_with_multiplicity([Fraction(c) for c in poly]) == len(poly) - 1


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            out += [d, n // d]
    return sorted(set(out))


def has_rational_root(poly: Sequence[int]) -> bool:
    if poly[0] == 0:
        return True
    for d in _divisors(poly[0]):
        for r in (d, -d):
            if P.evaluate([Fraction(c) for c in poly], r) == 0:
                return True
    return False


def _has_quadratic_factors(poly: Sequence[int]) -> bool:
    """x^4 + a3 x^3 + a2 x^2 + a1 x + a0 = (x^2 + a x + b)(x^2 + c x + e)?"""
    a0, a1, a2, a3 = poly[0], poly[1], poly[2], poly[3]
    for b in [s * d for d in _divisors(a0) for s in (1, -1)]:
        e = a0 // b
        # a + c = a3 and a c = a2 - b - e, so a solves t^2 - a3 t + (a2 - b - e) = 0
        disc = a3 * a3 - 4 * (a2 - b - e)
        if disc < 0:
            continue
        r = math.isqrt(disc)
        if r * r != disc:
            continue
        if (a3 + r) % 2:
            continue
        for a in {(a3 + r) // 2, (a3 - r) // 2}:
            c = a3 - a
            if a * e + b * c == a1:
                return True
    return False


def is_irreducible(poly: Sequence[int]) -> bool:
    poly = _check_monic_int(poly)
    n = len(poly) - 1
    if n == 1:
        return True
    if n > 4:
        raise FieldError("irreducibility is only decided up to degree 4")
    if has_rational_root(poly):
        return False
    if n == 4 and _has_quadratic_factors(poly):
        return False
    return True


@dataclass(frozen=True)
class TotallyRealField:
    poly: tuple[int, ...]
    root_intervals: tuple[tuple[Fraction, Fraction], ...]

    @property
    def degree(self) -> int:
        return len(self.poly) - 1

    @classmethod
    def from_poly(cls, poly, bits: int = ROOT_BITS) -> "TotallyRealField":
        if isinstance(poly, str):
            poly = P.parse_int_poly(poly)
        poly = _check_monic_int(poly)
        if not is_irreducible(poly):
            raise FieldError("polynomial is reducible")
        if not is_totally_real(poly):
            raise FieldError("polynomial has non-real roots")
        fpoly = [Fraction(c) for c in poly]
        width = Fraction(1, 1 << bits)
        roots = tuple(P.refine_real_root(fpoly, lo, hi, width) for lo, hi in P.isolate_real_roots(fpoly))
        return cls(tuple(poly), roots)

    def embeddings(self, coords: Sequence[int]) -> list[Interval]:
        """Interval values of sum c_j alpha^j at every real root."""
        out = []
        for lo, hi in self.root_intervals:
            r = Interval(lo, hi)
            acc = Interval.point(0)
            for c in reversed(coords):
                acc = acc * r + c
            out.append(acc)
        return out

    def multiply(self, u: Sequence[int], v: Sequence[int]) -> list[int]:
        prod = P.mul([Fraction(c) for c in u], [Fraction(c) for c in v])
        r = P.rem(prod, [Fraction(c) for c in self.poly])
        out = [int(c) for c in r] + [0] * self.degree
        return out[: self.degree]

    def format_element(self, coords: Sequence[int]) -> str:
        return P.format_poly(list(coords), "a")


def regular_matrix(u: Sequence[int], field: TotallyRealField) -> ExactMatrix:
    """Multiplication by u on the power basis; column j holds u * alpha^j."""
    k = field.degree
    cols = []
    for j in range(k):
        basis = [0] * k
        basis[j] = 1
        cols.append(field.multiply(u, basis))
    return ExactMatrix([[cols[j][i] for j in range(k)] for i in range(k)])


def norm(u: Sequence[int], field: TotallyRealField) -> int:
    return int(det(regular_matrix(u, field)))


def regular_representation(u: Sequence[int], field: TotallyRealField) -> tuple[ExactMatrix, list[int]]:
    """Integer matrix of multiplication by u, with det +1.

    A norm -1 unit is squared first; the unit actually represented is
    returned alongside the matrix.
    """
    u = list(u) + [0] * (field.degree - len(u))
    M = regular_matrix(u, field)
    d = det(M)
    if d not in (1, -1):
        raise NotAUnit(f"norm {d} is not +-1")
    if d == -1:
        u = field.multiply(u, u)
        M = regular_matrix(u, field)
    return M, u


def fundamental_unit_quadratic(d: int) -> tuple[Fraction, Fraction]:
    """Fundamental unit (x, y) = x + y sqrt(d) > 1 of the maximal order of Q(sqrt d).

    Walks the continued fraction of w = sqrt(d) (or (1 + sqrt d)/2 when
    d = 1 mod 4) and stops at the first convergent h/q with h - q w of norm
    +-1; the unit is the conjugate h - q w', which exceeds 1.
    """
    if d <= 1:
        raise ValueError("d must exceed 1")
    for pr in range(2, math.isqrt(d) + 1):
        if d % (pr * pr) == 0:
            raise ValueError(f"{d} is not squarefree")
    half = d % 4 == 1
    Pn, Qn = (1, 2) if half else (0, 1)
    s = math.isqrt(d)
    h1, h2 = 1, 0  # numerators of the two latest convergents
    q1, q2 = 0, 1
    for _ in range(10_000):
        a = (Pn + s) // Qn
        h1, h2 = a * h1 + h2, h1
        q1, q2 = a * q1 + q2, q1
        hc, qc = h1, q1
        if half:
            nrm = ((2 * hc - qc) ** 2 - d * qc * qc) // 4
            x, y = Fraction(2 * hc - qc, 2), Fraction(qc, 2)
        else:
            nrm = hc * hc - d * qc * qc
            x, y = Fraction(hc), Fraction(qc)
        if nrm in (1, -1):
            return x, y
        Pn = a * Qn - Pn
        Qn = (d - Pn * Pn) // Qn
    raise ArithmeticError("continued fraction did not close")


# -- unit search ---------------------------------------------------------------


def _log_embedding(u: Sequence[int], field: TotallyRealField) -> list[Interval]:
    return [v.abs().log() for v in field.embeddings(u)]


def _interval_det(rows: list[list[Interval]]) -> Interval:
    n = len(rows)
    if n == 0:
        return Interval.point(1)
    if n == 1:
        return rows[0][0]
    total = Interval.point(0)
    for j in range(n):
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        term = rows[0][j] * _interval_det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def certified_rank(log_rows: list[list[Interval]]) -> tuple[int, Interval | None]:
    """Largest m such that some m x m minor provably excludes zero, using
    the first m rows (rows are added greedily, so this is the row rank
    certificate for the prefix)."""
    m = len(log_rows)
    if m == 0:
        return 0, None
    cols = len(log_rows[0])
    for subset in itertools.combinations(range(cols), m):
        minor = _interval_det([[r[c] for c in subset] for r in log_rows])
        if minor.excludes_zero():
            return m, minor
    return m - 1, None


def _candidate_key(c: tuple[int, ...]):
    return (max(abs(x) for x in c), sum(abs(x) for x in c), tuple(-x for x in c))


def _candidates(k: int, height: int):
    out = []
    for c in itertools.product(range(-height, height + 1), repeat=k):
        nz = next((x for x in c if x != 0), 0)
        if nz > 0:
            out.append(c)
    out.sort(key=_candidate_key)
    return out


@dataclass
class UnitSystem:
    field: TotallyRealField
    units: list[list[int]]
    represented: list[list[int]]
    matrices: list[ExactMatrix]
    regulator_minor: Interval | None
    log_embeddings: list[list[Interval]] = field(default_factory=list)

    @property
    def rank(self) -> int:
        return len(self.units)


def unit_search(field: TotallyRealField, height: int, count: int | None = None) -> UnitSystem:
    """Lexicographically first independent units with coordinates in [-height, height].

    Candidates are ordered by (max |c|, sum |c|, reversed sign of c), one
    representative per sign class; torsion (+-1) is skipped and a unit is
    kept only when the enlarged log-embedding matrix has a certified
    nonzero maximal minor.
    """
    k = field.degree
    count = k - 1 if count is None else count
    if count > k - 1:
        raise NotEnoughUnits(f"the unit rank of a degree-{k} totally real field is {k - 1}")
    chosen: list[list[int]] = []
    logs: list[list[Interval]] = []
    minor = None
    if count == 0:
        return UnitSystem(field, [], [], [], None)
    for c in _candidates(k, height):
        if c[0] == 1 and not any(c[1:]):
            continue
        n = norm(c, field)
        if n not in (1, -1):
            continue
        row = _log_embedding(list(c), field)
        r, m = certified_rank(logs + [row])
        if r == len(logs) + 1:
            chosen.append(list(c))
            logs.append(row)
            minor = m
            if len(chosen) == count:
                break
    if len(chosen) < count:
        raise NotEnoughUnits(f"found {len(chosen)} independent units below height {height}; raise the height bound")
    mats, reps = [], []
    for u in chosen:
        M, rep = regular_representation(u, field)
        mats.append(M)
        reps.append(rep)
    return UnitSystem(field, chosen, reps, mats, minor, logs)


__all__ = [
    "FieldError",
    "NotAUnit",
    "NotEnoughUnits",
    "TotallyRealField",
    "UnitSystem",
    "certified_rank",
    "fundamental_unit_quadratic",
    "is_irreducible",
    "is_totally_real",
    "norm",
    "regular_matrix",
    "regular_representation",
    "unit_search",
]
