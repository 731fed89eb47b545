import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from helpers import random_unimodular, unimodular
from torusdyn import corpus
from torusdyn.automorphism import TorusAut, block_diagonal
from torusdyn.degrees import (
    FiberedAut,
    RawModel,
    StructureError,
    degree_profile,
    dynamical_degree,
    growth_limit_estimate,
    is_positive_entropy,
    product_formula_check,
    relative_degree,
    rho_pq,
    zero_entropy,
)
from torusdyn.linalg import ExactMatrix

CAT = [[2, 1], [1, 1]]
# (3 + sqrt 5)/2 and its square, 40 digits from mpmath
LAMBDA = Fraction("2.618033988749894848204586834365638117720")
LAMBDA2 = Fraction("6.854101966249684544613760503096914353161")
SQRT2_D1 = Fraction("33.97056274847714058562026469051637694284")  # (3 + 2 sqrt 2)^2


def test_cat_profile():
    prof = degree_profile(TorusAut(CAT))
    d0, d1, d2 = prof.degrees
    assert d0.exactly_one and d2.exactly_one
    assert d1.contains(LAMBDA2)
    assert prof.positive_entropy


def test_sqrt2_unit_degree():
    d = dynamical_degree(TorusAut([[3, 4], [2, 3]]), 1)
    assert d.contains(SQRT2_D1)


def test_identity_profile():
    prof = degree_profile(TorusAut.identity(3))
    assert all(d.exactly_one for d in prof.degrees)
    assert prof.h_a.hi == 0


def test_cat_times_point():
    f = block_diagonal(TorusAut(CAT), TorusAut.identity(1))
    d = degree_profile(f).degrees
    assert d[1].contains(LAMBDA2) and d[2].contains(LAMBDA2)


def test_rho_examples():
    f = TorusAut(CAT)
    assert rho_pq(f, 1, 0).contains(LAMBDA)
    assert rho_pq(f, 0, 0).exactly_one


def test_positive_entropy_examples():
    assert is_positive_entropy(TorusAut(CAT))
    assert zero_entropy(TorusAut([[1, 1], [0, 1]]))
    assert zero_entropy(TorusAut.identity(2))


@settings(max_examples=20)
@given(st.integers(2, 3).flatmap(unimodular), st.data())
def test_degree_duality_with_inverse(A, data):
    f = TorusAut(A)
    p = data.draw(st.integers(0, f.k))
    assert dynamical_degree(f, p).interval.overlaps(dynamical_degree(f.inverse(), f.k - p).interval)


@settings(max_examples=20)
@given(st.integers(2, 3).flatmap(unimodular), st.integers(2, 3))
def test_entropy_scales_with_power(A, n):
    f = TorusAut(A)
    h, hn = degree_profile(f).h_a, degree_profile(f.power(n)).h_a
    assert (h * n).overlaps(hn)


def test_direct_and_moduli_routes_agree():
    rng = random.Random(11)
    for _ in range(15):
        f = TorusAut(random_unimodular(rng, 3))
        for p in range(4):
            a = dynamical_degree(f, p, route="direct")
            b = dynamical_degree(f, p, route="moduli")
            assert a.interval.overlaps(b.interval)


def test_positive_entropy_matches_d1():
    rng = random.Random(5)
    for _ in range(20):
        f = TorusAut(random_unimodular(rng, 2, steps=rng.randint(1, 6)))
        d1 = dynamical_degree(f, 1)
        assert is_positive_entropy(f) == (not d1.exactly_one)
        if is_positive_entropy(f):
            assert d1.lo > 1


def test_growth_limit_identity_and_p0():
    g = growth_limit_estimate(TorusAut.identity(2), 1, n_max=5)
    assert all(b == 2 for b in g.brackets)
    g0 = growth_limit_estimate(TorusAut(CAT), 0, n_max=5)
    assert all(b == 2 for b in g0.brackets)


def test_growth_limit_cat():
    g = growth_limit_estimate(TorusAut(CAT), 1, n_max=20)
    assert g.final_rel_error.hi <= Fraction(1, 100)
    # k = 2 polarization: integral of omega(H) ^ omega(I) is tr H, and H = A^n^T A^n
    A = ExactMatrix(CAT)
    assert [g.brackets[n - 1] for n in (1, 3)] == [(A**2).trace(), (A**6).trace()] == [7, 322]


def test_raw_model():
    f = TorusAut(CAT)
    raw = RawModel(tuple(f.action(p, p) for p in range(3)))
    assert dynamical_degree(raw, 1).contains(LAMBDA2)
    with pytest.raises(ValueError):
        RawModel((ExactMatrix([[2]]), ExactMatrix([[1]])))


def test_relative_degrees():
    F = FiberedAut(block_diagonal(TorusAut.identity(1), TorusAut(CAT)), 1)
    assert relative_degree(F, 1).contains(LAMBDA2)
    rows = product_formula_check(F)
    assert all(r.matches for r in rows)
    with pytest.raises(StructureError):
        FiberedAut(TorusAut([[1, 1, 0], [0, 1, 0], [0, 0, 1]]), 1)


def test_identity_fiber():
    F = FiberedAut(block_diagonal(TorusAut(CAT), TorusAut.identity(2)), 2)
    assert all(relative_degree(F, p).exactly_one for p in range(3))


def test_bundled_fibrations_match():
    for F in corpus.fibered_examples().values():
        assert all(r.matches for r in product_formula_check(F))
