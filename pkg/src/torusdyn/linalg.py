"""Dense exact matrices over Q and Q(i).

Entries are Fractions or GaussRats (see :mod:`torusdyn.gaussian`).  Integer
heavy paths (characteristic polynomials) clear denominators and run on Python
ints instead.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Iterable, Sequence

from .gaussian import GaussRat, abs2, conj, inv, is_real, re_im, to_exact


class DimensionError(ValueError):
    pass


class SingularMatrixError(ArithmeticError):
    pass


ZERO = Fraction(0)
ONE = Fraction(1)


class ExactMatrix:
    """Immutable rectangular matrix over Q(i)."""

    __slots__ = ("rows", "nrows", "ncols", "_hash")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        rows = tuple(tuple(to_exact(x) for x in r) for r in rows)
        widths = {len(r) for r in rows}
        if len(widths) > 1:
            raise DimensionError("ragged matrix")
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = widths.pop() if widths else (ncols or 0)
        self._hash = None

    @classmethod
    def _raw(cls, rows: tuple, ncols: int) -> "ExactMatrix":
        m = object.__new__(cls)
        m.rows = rows
        m.nrows = len(rows)
        m.ncols = ncols
        m._hash = None
        return m

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls._raw(tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)), n)

    @classmethod
    def zeros(cls, n: int, m: int | None = None) -> "ExactMatrix":
        m = n if m is None else m
        return cls._raw(tuple((ZERO,) * m for _ in range(n)), m)

    @classmethod
    def diag(cls, entries: Sequence) -> "ExactMatrix":
        n = len(entries)
        vals = [to_exact(e) for e in entries]
        return cls._raw(tuple(tuple(vals[i] if i == j else ZERO for j in range(n)) for i in range(n)), n)

    @classmethod
    def column(cls, entries: Sequence) -> "ExactMatrix":
        return cls([[e] for e in entries])

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.shape, self.rows))
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.rows)
        return f"ExactMatrix[{body}]"

    def tolist(self) -> list[list]:
        return [list(r) for r in self.rows]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        _same_shape(self, other)
        return ExactMatrix._raw(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)), self.ncols
        )

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        _same_shape(self, other)
        return ExactMatrix._raw(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)), self.ncols
        )

    def __neg__(self):
        return ExactMatrix._raw(tuple(tuple(-a for a in r) for r in self.rows), self.ncols)

    def scale(self, c) -> "ExactMatrix":
        c = to_exact(c)
        return ExactMatrix._raw(tuple(tuple(c * a for a in r) for r in self.rows), self.ncols)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.ncols != other.nrows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.rows)) if other.nrows else [()] * other.ncols
        out = []
        for r in self.rows:
            out.append(tuple(_dot(r, c) for c in cols))
        return ExactMatrix._raw(tuple(out), other.ncols)

    def apply(self, vec: Sequence) -> list:
        if len(vec) != self.ncols:
            raise DimensionError("vector length mismatch")
        return [_dot(r, vec) for r in self.rows]

    def __pow__(self, n: int) -> "ExactMatrix":
        if not self.is_square:
            raise DimensionError("power of a non-square matrix")
        if n < 0:
            return inverse(self) ** (-n)
        result, base = ExactMatrix.identity(self.nrows), self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    @property
    def T(self) -> "ExactMatrix":
        return ExactMatrix._raw(tuple(zip(*self.rows)) if self.nrows else (), self.nrows)

    @property
    def H(self) -> "ExactMatrix":
        return conjugate(self).T

    def trace(self):
        return sum((self.rows[i][i] for i in range(min(self.shape))), ZERO)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "ExactMatrix":
        return ExactMatrix._raw(tuple(tuple(self.rows[i][j] for j in cols) for i in rows), len(cols))

    def is_real(self) -> bool:
        return all(is_real(x) for r in self.rows for x in r)

    def is_integral(self) -> bool:
        """All entries Gaussian integers."""
        for r in self.rows:
            for x in r:
                re, im = re_im(x)
                if re.denominator != 1 or im.denominator != 1:
                    return False
        return True

    def is_symmetric(self) -> bool:
        return self.is_square and self == self.T

    def is_hermitian(self) -> bool:
        return self.is_square and self == self.H


def _dot(a, b):
    s = ZERO
    for x, y in zip(a, b):
        if x and y:
            s = s + x * y
    return s


def _same_shape(a: ExactMatrix, b: ExactMatrix):
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch {a.shape} vs {b.shape}")


def as_matrix(m) -> ExactMatrix:
    return m if isinstance(m, ExactMatrix) else ExactMatrix(m)


def conjugate(m: ExactMatrix) -> ExactMatrix:
    return ExactMatrix._raw(tuple(tuple(conj(x) for x in r) for r in m.rows), m.ncols)


def tensor_product(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """Kronecker product; row (i, k) -> i * b.nrows + k."""
    rows = []
    for ra in a.rows:
        for rb in b.rows:
            rows.append(tuple(x * y for x in ra for y in rb))
    return ExactMatrix._raw(tuple(rows), a.ncols * b.ncols)


def direct_sum(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    n = a.ncols + b.ncols
    rows = [tuple(r) + (ZERO,) * b.ncols for r in a.rows]
    rows += [(ZERO,) * a.ncols + tuple(r) for r in b.rows]
    return ExactMatrix._raw(tuple(rows), n)


def _row_reduce(rows: list[list], ncols: int):
    """In-place reduced row echelon form; returns the pivot columns."""
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r >= nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        inv_piv = inv(piv)
        rows[r] = [x * inv_piv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return pivots


def rref(m: ExactMatrix) -> tuple[ExactMatrix, list[int]]:
    rows = [list(r) for r in m.rows]
    piv = _row_reduce(rows, m.ncols)
    return ExactMatrix._raw(tuple(tuple(r) for r in rows), m.ncols), piv


def rank(m: ExactMatrix) -> int:
    return len(rref(m)[1])


def nullspace(m: ExactMatrix) -> list[list]:
    """Basis of {x : m x = 0}, one free variable set to 1 per vector."""
    red, piv = rref(m)
    free = [j for j in range(m.ncols) if j not in piv]
    basis = []
    for f in free:
        v = [ZERO] * m.ncols
        v[f] = ONE
        for row, pc in zip(red.rows, piv):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def solve(m: ExactMatrix, rhs: Sequence) -> list | None:
    """One solution of m x = rhs, or None if inconsistent."""
    aug = ExactMatrix([list(r) + [b] for r, b in zip(m.rows, rhs)])
    red, piv = rref(aug)
    if m.ncols in piv:
        return None
    x = [ZERO] * m.ncols
    for row, pc in zip(red.rows, piv):
        x[pc] = row[-1]
    return x


def det(m: ExactMatrix):
    if not m.is_square:
        raise DimensionError("determinant of a non-square matrix")
    n = m.nrows
    if n == 0:
        return ONE
    if m.is_integral() and m.is_real():
        return Fraction(_bareiss([[int(x) for x in r] for r in m.rows]))
    rows = [list(r) for r in m.rows]
    d = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if p is None:
            return ZERO
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            d = -d
        piv = rows[c][c]
        d = d * piv
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                f = rows[i][c] / piv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return d


def _bareiss(a: list[list[int]]) -> int:
    n = len(a)
    a = [r[:] for r in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            p = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if p is None:
                return 0
            a[k], a[p] = a[p], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def inverse(m: ExactMatrix) -> ExactMatrix:
    if not m.is_square:
        raise DimensionError("inverse of a non-square matrix")
    n = m.nrows
    aug = [list(r) + [ONE if i == j else ZERO for j in range(n)] for i, r in enumerate(m.rows)]
    piv = _row_reduce(aug, n)
    if len(piv) < n:
        raise SingularMatrixError("matrix is singular")
    return ExactMatrix._raw(tuple(tuple(r[n:]) for r in aug), n)


# -- characteristic polynomial ------------------------------------------------


def _common_denominator(m: ExactMatrix) -> int:
    d = 1
    for r in m.rows:
        for x in r:
            re, im = re_im(x)
            d = math.lcm(d, re.denominator, im.denominator)
    return d


def _int_matmul(a, b):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(r, c)) for c in bt] for r in a]


def _faddeev_int(a: list[list[int]]) -> list[int]:
    n = len(a)
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    mk = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        c_prev = coeffs[n - k + 1]
        am = _int_matmul(a, mk) if k > 1 else [[0] * n for _ in range(n)]
        for i in range(n):
            am[i][i] += c_prev
        mk = am
        amk = _int_matmul(a, mk)
        tr = sum(amk[i][i] for i in range(n))
        q, r = divmod(-tr, k)
        assert r == 0
        coeffs[n - k] = q
    return coeffs


def _faddeev_gauss(ar, ai) -> list[tuple[int, int]]:
    n = len(ar)

    def mul(xr, xi, yr, yi):
        p1 = _int_matmul(xr, yr)
        p2 = _int_matmul(xi, yi)
        p3 = _int_matmul(xr, yi)
        p4 = _int_matmul(xi, yr)
        return (
            [[u - v for u, v in zip(r1, r2)] for r1, r2 in zip(p1, p2)],
            [[u + v for u, v in zip(r1, r2)] for r1, r2 in zip(p3, p4)],
        )

    coeffs = [(0, 0)] * (n + 1)
    coeffs[n] = (1, 0)
    mr = [[0] * n for _ in range(n)]
    mi = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        cr, ci = coeffs[n - k + 1]
        if k > 1:
            mr, mi = mul(ar, ai, mr, mi)
        else:
            mr = [[0] * n for _ in range(n)]
            mi = [[0] * n for _ in range(n)]
        for i in range(n):
            mr[i][i] += cr
            mi[i][i] += ci
        pr, pi = mul(ar, ai, mr, mi)
        tr_r = sum(pr[i][i] for i in range(n))
        tr_i = sum(pi[i][i] for i in range(n))
        qr, rr = divmod(-tr_r, k)
        qi, ri = divmod(-tr_i, k)
        assert rr == 0 and ri == 0
        coeffs[n - k] = (qr, qi)
    return coeffs


def char_poly(m: ExactMatrix) -> list:
    """det(xI - m) as coefficients, lowest degree first.

    Faddeev-LeVerrier on the denominator-cleared Gaussian-integer matrix; the
    divisions by k are exact there, so no fractions appear until rescaling.
    """
    if not m.is_square:
        raise DimensionError(f"characteristic polynomial of a {m.shape} matrix")
    n = m.nrows
    d = _common_denominator(m)
    ar = [[int(re_im(x)[0] * d) for x in r] for r in m.rows]
    if m.is_real():
        raw = [(c, 0) for c in _faddeev_int(ar)]
    else:
        ai = [[int(re_im(x)[1] * d) for x in r] for r in m.rows]
        raw = _faddeev_gauss(ar, ai)
    out = []
    for j, (cr, ci) in enumerate(raw):
        scale = Fraction(1, d ** (n - j))
        out.append(GaussRat(cr * scale, ci * scale))
    return out


# -- exterior powers ----------------------------------------------------------


def index_sets(n: int, p: int) -> list[tuple[int, ...]]:
    """p-subsets of range(n) in lexicographic order."""
    return list(itertools.combinations(range(n), p))


def exterior_power(m: ExactMatrix, p: int) -> ExactMatrix:
    """Matrix of p x p minors; entry (I, J) = det m[I, J], lexicographic I, J."""
    if not m.is_square:
        raise DimensionError("exterior power of a non-square matrix")
    n = m.nrows
    if not 0 <= p <= n:
        raise ValueError(f"exterior degree {p} out of range for n={n}")
    sets = index_sets(n, p)
    if p == 0:
        return ExactMatrix.identity(1)
    rows = []
    for rI in sets:
        rows.append(tuple(det(m.submatrix(rI, cJ)) for cJ in sets))
    return ExactMatrix._raw(tuple(rows), len(sets))


# -- inertia -------------------------------------------------------------------


def inertia(s: ExactMatrix) -> tuple[int, int, int]:
    """(n_plus, n_minus, n_zero) of a Hermitian matrix by exact congruence."""
    if not s.is_hermitian():
        raise ValueError("inertia needs a Hermitian (or real symmetric) matrix")
    a = [list(r) for r in s.rows]
    n = len(a)
    plus = minus = 0
    active = list(range(n))
    while active:
        i = next((j for j in active if a[j][j] != 0), None)
        if i is None:
            pair = next(((j, l) for j in active for l in active if l != j and a[j][l] != 0), None)
            if pair is None:
                break
            j, l = pair
            # row_j += t row_l, col_j += conj(t) col_l with t = conj(a[l][j])
            t = conj(a[l][j])
            _congruence_add(a, j, l, t)
            i = j
        piv = a[i][i]
        if piv > 0:
            plus += 1
        else:
            minus += 1
        for j in active:
            if j != i and a[j][i] != 0:
                _congruence_add(a, j, i, -a[j][i] / piv)
        active.remove(i)
    return plus, minus, n - plus - minus


def _congruence_add(a, j, l, t):
    """row_j += t * row_l; col_j += conj(t) * col_l."""
    n = len(a)
    a[j] = [x + t * y for x, y in zip(a[j], a[l])]
    tc = conj(t)
    for r in range(n):
        a[r][j] = a[r][j] + tc * a[r][l]


def signature(s: ExactMatrix) -> tuple[int, int, int]:
    if not s.is_square or not s.is_real() or s != s.T:
        raise ValueError("signature needs a real symmetric matrix")
    return inertia(s)


def is_positive_definite(h: ExactMatrix) -> bool:
    """Hermitian h > 0 via leading principal minors (Sylvester)."""
    if not h.is_hermitian():
        return False
    n = h.nrows
    return all(re_im(det(h.submatrix(range(k), range(k))))[0] > 0 for k in range(1, n + 1))


def is_positive_semidefinite(h: ExactMatrix) -> bool:
    if not h.is_hermitian():
        return False
    return inertia(h)[1] == 0


def vector_abs2(v: Sequence) -> Fraction:
    return sum((abs2(x) for x in v), ZERO)
