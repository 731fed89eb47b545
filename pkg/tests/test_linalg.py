from fractions import Fraction
from math import comb

import pytest
import sympy
from hypothesis import given, strategies as st

from helpers import small_fracs, square_matrices, unimodular
from torusdyn import polynomial as P
from torusdyn.gaussian import GaussRat, re_im
from torusdyn.linalg import (
    ExactMatrix,
    SingularMatrixError,
    char_poly,
    det,
    exterior_power,
    inertia,
    inverse,
    is_positive_definite,
    nullspace,
    rank,
    solve,
)


def to_sympy(M: ExactMatrix) -> sympy.Matrix:
    def conv(x):
        re, im = re_im(x)
        return sympy.Rational(re.numerator, re.denominator) + sympy.I * sympy.Rational(im.numerator, im.denominator)

    return sympy.Matrix([[conv(M[i, j]) for j in range(M.ncols)] for i in range(M.nrows)])


def from_sympy(x):
    re, im = sympy.re(x), sympy.im(x)
    return GaussRat(Fraction(int(re.p), int(re.q)), Fraction(int(im.p), int(im.q)))


@given(st.integers(1, 4).flatmap(square_matrices))
def test_char_poly_matches_sympy(M):
    x = sympy.Symbol("x")
    coeffs = sympy.Poly(to_sympy(M).charpoly(x).as_expr(), x).all_coeffs()
    expected = [from_sympy(sympy.nsimplify(c)) for c in reversed(coeffs)]
    assert P.trim(char_poly(M)) == P.trim(expected)


@given(st.integers(1, 4).flatmap(square_matrices))
def test_cayley_hamilton(M):
    n = M.nrows
    acc = ExactMatrix.zeros(n)
    for c in reversed(char_poly(M)):
        acc = acc @ M + ExactMatrix.identity(n).scale(c)
    assert acc == ExactMatrix.zeros(n)


@given(st.integers(1, 4).flatmap(square_matrices))
def test_det_matches_sympy(M):
    assert det(M) == from_sympy(sympy.expand(to_sympy(M).det()))


@given(st.integers(2, 4).flatmap(lambda n: st.tuples(square_matrices(n), square_matrices(n))))
def test_det_multiplicative(pair):
    A, B = pair
    assert det(A @ B) == det(A) * det(B)


@given(st.integers(2, 4).flatmap(lambda k: st.tuples(st.just(k), square_matrices(k))), st.data())
def test_det_of_exterior_power(kM, data):
    k, M = kM
    p = data.draw(st.integers(1, k))
    assert det(exterior_power(M, p)) == det(M) ** comb(k - 1, p - 1)


@given(st.integers(2, 3).flatmap(lambda n: st.tuples(square_matrices(n), square_matrices(n))), st.integers(1, 3))
def test_exterior_power_functorial(pair, p):
    A, B = pair
    p = min(p, A.nrows)
    assert exterior_power(A @ B, p) == exterior_power(A, p) @ exterior_power(B, p)


@given(st.integers(1, 4).flatmap(lambda k: unimodular(k)))
def test_inverse_of_unimodular_is_integral(A):
    B = inverse(A)
    assert A @ B == ExactMatrix.identity(A.nrows)
    assert B.is_integral()


def test_singular_inverse_raises():
    with pytest.raises(SingularMatrixError):
        inverse(ExactMatrix([[1, 2], [2, 4]]))


@given(square_matrices(3, small_fracs), st.lists(small_fracs, min_size=3, max_size=3))
def test_solve_and_nullspace(M, rhs):
    x = solve(M, rhs)
    if x is not None:
        assert M.apply(x) == list(rhs)
    for v in nullspace(M):
        assert all(c == 0 for c in M.apply(v))
    assert rank(M) + len(nullspace(M)) == 3


@given(st.integers(1, 4).flatmap(lambda n: square_matrices(n, small_fracs)), st.data())
def test_inertia_is_congruence_invariant(S0, data):
    n = S0.nrows
    S = S0 + S0.T
    T = data.draw(square_matrices(n, st.integers(-3, 3)))
    if det(T) == 0:
        return
    assert inertia(T.T @ S @ T) == inertia(S)
    assert sum(inertia(S)) == n


def test_inertia_matches_sympy_eigenvalues():
    S = ExactMatrix([[2, 1, 0], [1, -3, 4], [0, 4, 1]])
    evs = to_sympy(S).eigenvals()
    signs = [0, 0, 0]
    for ev, mult in evs.items():
        v = sympy.re(sympy.N(ev, 30))
        signs[0 if v > 0 else 1 if v < 0 else 2] += mult
    assert inertia(S) == tuple(signs)


def test_hermitian_positive_definite():
    i = GaussRat(0, 1)
    assert is_positive_definite(ExactMatrix([[2, i], [-i, 2]]))
    assert not is_positive_definite(ExactMatrix([[1, 2 * i], [-2 * i, 1]]))
