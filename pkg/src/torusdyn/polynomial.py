"""Univariate polynomials over Q(i) as coefficient lists, lowest degree first."""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .gaussian import GaussRat, conj, inv, is_real, re_im, to_exact

ZERO = Fraction(0)
ONE = Fraction(1)


def trim(p: Sequence) -> list:
    p = [to_exact(c) for c in p]
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p: Sequence) -> int:
    p = trim(p)
    return len(p) - 1


def lead(p: Sequence):
    p = trim(p)
    return p[-1] if p else ZERO


def add(a: Sequence, b: Sequence) -> list:
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else ZERO) + (b[i] if i < len(b) else ZERO) for i in range(n)])


def sub(a: Sequence, b: Sequence) -> list:
    return add(a, [-c for c in b])


def scale(p: Sequence, c) -> list:
    return trim([c * x for x in p])


def mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y != 0:
                out[i + j] = out[i + j] + x * y
    return trim(out)


def power(p: Sequence, n: int) -> list:
    result, base = [ONE], list(p)
    while n:
        if n & 1:
            result = mul(result, base)
        base = mul(base, base)
        n >>= 1
    return result


def divmod_poly(a: Sequence, b: Sequence) -> tuple[list, list]:
    a, b = trim(a), trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [], a
    inv_lead = inv(b[-1])
    q = [ZERO] * (len(a) - len(b) + 1)
    r = list(a)
    for k in range(len(a) - len(b), -1, -1):
        c = r[k + len(b) - 1] * inv_lead
        q[k] = c
        if c != 0:
            for j, y in enumerate(b):
                r[k + j] = r[k + j] - c * y
    return trim(q), trim(r[: len(b) - 1])


def rem(a: Sequence, b: Sequence) -> list:
    return divmod_poly(a, b)[1]


def exact_div(a: Sequence, b: Sequence) -> list:
    q, r = divmod_poly(a, b)
    if r:
        raise ArithmeticError("polynomial division is not exact")
    return q


def monic(p: Sequence) -> list:
    p = trim(p)
    if not p:
        return p
    return scale(p, inv(p[-1]))


def gcd(a: Sequence, b: Sequence) -> list:
    a, b = trim(a), trim(b)
    while b:
        a, b = b, rem(a, b)
    return monic(a)


def derivative(p: Sequence) -> list:
    return trim([i * c for i, c in enumerate(p)][1:])


def evaluate(p: Sequence, x):
    acc = ZERO
    for c in reversed(p):
        acc = acc * x + c
    return acc


def compose(p: Sequence, q: Sequence) -> list:
    """p(q(x))."""
    acc: list = []
    for c in reversed(trim(p)):
        acc = add(mul(acc, q), [c])
    return acc


def conj_poly(p: Sequence) -> list:
    return [conj(c) for c in p]


def reciprocal_conj(p: Sequence) -> list:
    """x^deg * conj(p)(1/x); its roots are 1/conj(r) for the nonzero roots r of p."""
    return trim([conj(c) for c in reversed(trim(p))])


def is_real_poly(p: Sequence) -> bool:
    return all(is_real(c) for c in p)


def is_gaussian_integral(p: Sequence) -> bool:
    for c in p:
        re_, im_ = re_im(c)
        if re_.denominator != 1 or im_.denominator != 1:
            return False
    return True


def strip_x_power(p: Sequence) -> tuple[int, list]:
    p = trim(p)
    m = 0
    while m < len(p) and p[m] == 0:
        m += 1
    return m, p[m:]


def squarefree_part(p: Sequence) -> list:
    p = trim(p)
    if len(p) <= 1:
        return monic(p)
    g = gcd(p, derivative(p))
    return monic(exact_div(p, g))


def squarefree_decomposition(p: Sequence) -> list[tuple[list, int]]:
    """Yun's algorithm: [(s_i, i)] with p = lead * prod s_i^i, s_i squarefree and coprime."""
    p = monic(p)
    if len(p) <= 1:
        return []
    out = []
    dp = derivative(p)
    a = gcd(p, dp)
    b = exact_div(p, a)
    c = exact_div(dp, a)
    d = sub(c, derivative(b))
    i = 1
    while len(b) > 1:
        a = gcd(b, d)
        b_next = exact_div(b, a)
        c = exact_div(d, a) if len(a) > 1 else d
        if len(a) > 1:
            out.append((a, i))
        b = b_next
        d = sub(c, derivative(b))
        i += 1
    return out


def to_int_list(p: Sequence) -> list[int]:
    out = []
    for c in trim(p):
        if not is_real(c) or c.denominator != 1:
            raise ValueError("polynomial does not have integer coefficients")
        out.append(int(c))
    return out


# -- cyclotomic factors -------------------------------------------------------


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial."""
    p = [Fraction(-1)] + [ZERO] * (n - 1) + [ONE]
    for d in range(1, n):
        if n % d == 0:
            p = exact_div(p, list(cyclotomic(d)))
    return tuple(int(c) for c in p)


def euler_phi(n: int) -> int:
    result, m, f = n, n, 2
    while f * f <= m:
        if m % f == 0:
            while m % f == 0:
                m //= f
            result -= result // f
        f += 1
    if m > 1:
        result -= result // m
    return result


def cyclotomic_trial_division(p: Sequence) -> tuple[int, dict[int, int], list]:
    """Split a monic integer polynomial as x^m * prod Phi_n^e * rest.

    Every n with phi(n) <= deg p is tried; phi(n) >= sqrt(n/2) bounds the
    search by n <= 2 deg^2.
    """
    m, q = strip_x_power(p)
    found: dict[int, int] = {}
    deg = len(q) - 1
    if deg <= 0:
        return m, found, q
    for n in range(1, 2 * deg * deg + 3):
        if euler_phi(n) > len(q) - 1:
            continue
        phi_n = [Fraction(c) for c in cyclotomic(n)]
        while len(q) - 1 >= len(phi_n) - 1:
            quo, r = divmod_poly(q, phi_n)
            if r:
                break
            q = quo
            found[n] = found.get(n, 0) + 1
        if len(q) == 1:
            break
    return m, found, q


def is_kronecker_unit_radius(p: Sequence) -> bool:
    """Exact test that a monic Gaussian-integer polynomial has all roots of
    modulus 1 or 0, and at least one root of modulus 1.

    p * conj(p) is a monic integer polynomial with the same root moduli, so
    Kronecker's theorem applies to it: it must be x^m times cyclotomics.
    """
    p = trim(p)
    if p[-1] != 1 or not is_gaussian_integral(p):
        raise ValueError("Kronecker test needs a monic Gaussian-integer polynomial")
    norm = mul(p, conj_poly(p))
    _, factors, rest = cyclotomic_trial_division(norm)
    return len(rest) == 1 and bool(factors)


# -- real roots ---------------------------------------------------------------


def _require_real(p: Sequence) -> list:
    p = trim(p)
    if not is_real_poly(p):
        raise ValueError("real-root routines need real coefficients")
    return p


def sturm_sequence(p: Sequence) -> list[list]:
    p = _require_real(p)
    seq = [p, derivative(p)]
    while seq[-1]:
        r = rem(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-c for c in r])
    return [s for s in seq if s]


def _sign_changes(values) -> int:
    signs = [v for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def _signs_at(seq, x):
    if x == math.inf:
        return [s[-1] for s in seq]
    if x == -math.inf:
        return [s[-1] * (-1 if (len(s) - 1) % 2 else 1) for s in seq]
    return [evaluate(s, x) for s in seq]


def count_real_roots(p: Sequence, a=-math.inf, b=math.inf, seq=None) -> int:
    """Number of distinct real roots in (a, b]."""
    seq = seq or sturm_sequence(p)
    return _sign_changes(_signs_at(seq, a)) - _sign_changes(_signs_at(seq, b))


def cauchy_bound(p: Sequence) -> Fraction:
    """Rational R with every root of p in |z| < R."""
    p = trim(p)
    ln2 = re_im(p[-1])
    lead_abs2 = ln2[0] ** 2 + ln2[1] ** 2
    best = ZERO
    for c in p[:-1]:
        cr, ci = re_im(c)
        q = (cr * cr + ci * ci) / lead_abs2
        best = max(best, q)
    # 1 + max |c_i / c_n|, with sqrt bounded above by an integer
    return 1 + Fraction(math.isqrt(math.ceil(best)) + 1)


def isolate_real_roots(p: Sequence) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals (lo, hi], one per distinct real root, ascending."""
    p = _require_real(p)
    if len(p) <= 1:
        return []
    seq = sturm_sequence(p)
    bound = cauchy_bound(p)
    out = []
    stack = [(-bound, bound)]
    while stack:
        lo, hi = stack.pop()
        n = count_real_roots(p, lo, hi, seq)
        if n == 0:
            continue
        if n == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        stack.append((mid, hi))
        stack.append((lo, mid))
    return sorted(out)


def refine_real_root(p: Sequence, lo: Fraction, hi: Fraction, width: Fraction) -> tuple[Fraction, Fraction]:
    """Shrink an isolating interval (lo, hi] of a simple root below ``width``."""
    p = trim(p)
    v_hi = evaluate(p, hi)
    if v_hi == 0:
        return hi, hi
    s_hi = v_hi > 0
    while hi - lo > width:
        mid = (lo + hi) / 2
        v = evaluate(p, mid)
        if v == 0:
            return mid, mid
        if (v > 0) == s_hi:
            hi = mid
        else:
            lo = mid
    return lo, hi


def real_roots_with_multiplicity(p: Sequence) -> int:
    total = 0
    for s, mult in squarefree_decomposition(p):
        total += mult * count_real_roots(s)
    return total


# -- text form -----------------------------------------------------------------

_TERM = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*(x(?:\s*\^\s*(\d+))?)?")


def parse_int_poly(text: str) -> list[int]:
    """Parse e.g. ``"x^3-3x-1"`` into integer coefficients, lowest first."""
    s = text.replace(" ", "").replace("**", "^")
    if not s:
        raise ValueError("empty polynomial")
    coeffs: dict[int, int] = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial {text!r} at position {pos}")
        sign, num, xpart, exp = m.groups()
        if not num and not xpart:
            raise ValueError(f"cannot parse polynomial {text!r} at position {pos}")
        c = int(num) if num else 1
        if sign == "-":
            c = -c
        e = (int(exp) if exp else 1) if xpart else 0
        coeffs[e] = coeffs.get(e, 0) + c
        pos = m.end()
    n = max(coeffs)
    return [coeffs.get(i, 0) for i in range(n + 1)]


def format_poly(p: Sequence, var: str = "x") -> str:
    terms = []
    for e in range(len(p) - 1, -1, -1):
        c = p[e]
        if c == 0:
            continue
        if is_real(c):
            mag = abs(c)
            sign = "-" if c < 0 else "+"
            cs = "" if (mag == 1 and e > 0) else str(mag)
        else:
            sign, cs = "+", f"({c})"
        mono = "" if e == 0 else (var if e == 1 else f"{var}^{e}")
        terms.append((sign, f"{cs}{mono}"))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, t in terms[1:]:
        out += f" {sign} {t}"
    return out


def gauss_poly(p: Sequence) -> list:
    return trim([to_exact(c) for c in p])


__all__ = [
    "GaussRat",
    "add",
    "cauchy_bound",
    "compose",
    "count_real_roots",
    "cyclotomic",
    "cyclotomic_trial_division",
    "degree",
    "derivative",
    "divmod_poly",
    "evaluate",
    "exact_div",
    "format_poly",
    "gcd",
    "is_kronecker_unit_radius",
    "isolate_real_roots",
    "monic",
    "mul",
    "parse_int_poly",
    "refine_real_root",
    "squarefree_decomposition",
    "squarefree_part",
    "sturm_sequence",
]
