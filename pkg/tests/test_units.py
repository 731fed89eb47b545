from fractions import Fraction

import pytest
import sympy
from sympy.solvers.diophantine.diophantine import diop_DN

from torusdyn import polynomial as P
from torusdyn.linalg import ExactMatrix, det
from torusdyn.units import (
    FieldError,
    NotAUnit,
    TotallyRealField,
    fundamental_unit_quadratic,
    is_irreducible,
    is_totally_real,
    norm,
    regular_representation,
    unit_search,
)

REGULATOR_MINOR = Fraction("-0.8492874506461925286447620049374467362142")


@pytest.mark.parametrize(
    "d, unit",
    [
        (2, (1, 1)),
        (3, (2, 1)),
        (5, (Fraction(1, 2), Fraction(1, 2))),
        (6, (5, 2)),
        (7, (8, 3)),
        (13, (Fraction(3, 2), Fraction(1, 2))),
        (61, (Fraction(39, 2), Fraction(5, 2))),
        (94, (2143295, 221064)),
    ],
)
def test_fundamental_unit_table(d, unit):
    assert fundamental_unit_quadratic(d) == unit


@pytest.mark.parametrize("d", [2, 3, 6, 7, 11, 14, 19, 22, 23, 31, 43, 46, 94])
def test_fundamental_unit_against_sympy_pell(d):
    # for d != 1 mod 4 the unit group of Z[sqrt d] is generated by the fundamental unit
    x, y = fundamental_unit_quadratic(d)
    n = x * x - d * y * y
    assert n in (1, -1)
    if n == -1:
        x, y = x * x + d * y * y, 2 * x * y
    (px, py), = diop_DN(d, 1)
    assert (x, y) == (px, py)


def test_sqrt2_regular_matrix():
    field = TotallyRealField.from_poly("x^2-2")
    M, u = regular_representation([1, 1], field)
    assert M == ExactMatrix([[3, 4], [2, 3]])
    assert u == [3, 2]
    assert det(M) == 1


def test_regular_matrix_char_poly_is_min_poly():
    field = TotallyRealField.from_poly("x^3-3x-1")
    M, _ = regular_representation([0, 1, 0], field)
    x = sympy.Symbol("x")
    cp = sympy.Matrix(M.tolist()).charpoly(x).as_expr()
    assert sympy.expand(cp - (x**3 - 3 * x - 1)) == 0


def test_cubic_unit_search():
    field = TotallyRealField.from_poly("x^3-3x-1")
    system = unit_search(field, 2)
    assert system.rank == 2
    assert system.units == [[0, 1, 0], [1, 1, 0]]
    assert system.regulator_minor.contains(REGULATOR_MINOR)
    A, B = system.matrices
    assert A @ B == B @ A
    assert all(det(M) == 1 and M.is_integral() for M in system.matrices)


def test_field_validation():
    assert is_totally_real([-1, -3, 0, 1])
    assert not is_totally_real([1, 0, 1])
    assert not is_irreducible(P.parse_int_poly("x^4-5x^2+4"))
    assert not is_irreducible(P.parse_int_poly("x^4-10x^2+9"))
    assert is_irreducible(P.parse_int_poly("x^4-10x^2+1"))
    for bad in ("x^2+1", "x^2-4", "2x^2-1"):
        with pytest.raises(FieldError):
            TotallyRealField.from_poly(bad)


def test_non_unit_rejected():
    field = TotallyRealField.from_poly("x^2-2")
    assert norm([0, 1], field) == -2
    with pytest.raises(NotAUnit):
        regular_representation([0, 1], field)
