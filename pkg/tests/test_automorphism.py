from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from helpers import classes, unimodular
from torusdyn.automorphism import NotAnAutomorphism, TorusAut, block_diagonal, validate
from torusdyn.cohomology import CohomClass, TorusModel
from torusdyn.linalg import ExactMatrix
from torusdyn.spectral import spectral_radius

CAT = [[2, 1], [1, 1]]


def test_validate():
    assert validate([[2, 1], [1, 1]]).det == 1
    validate([[1, 1], [0, 1]])
    with pytest.raises(NotAnAutomorphism):
        validate([[2, 0], [0, 1]])


def test_inverse_and_power():
    f = TorusAut(CAT)
    assert f.inverse().A == ExactMatrix([[1, -1], [-1, 2]])
    assert f.power(0).is_identity()
    assert f.power(3) == f @ f @ f


def test_extreme_bidegree_actions():
    f = TorusAut([[2, 1, 0], [1, 1, 0], [0, 0, 1]])
    assert f.action(0, 0) == ExactMatrix([[1]])
    assert f.action(3, 3) == ExactMatrix([[1]])


def test_cat_h11_radius():
    M = TorusAut(CAT).action(1, 1)
    assert M.shape == (4, 4) and M.is_integral()
    r = spectral_radius(M, Fraction(1, 10**20))
    assert r.contains(Fraction("6.854101966249684544613760503096914353161"))


@given(st.integers(2, 3).flatmap(lambda k: st.tuples(unimodular(k), unimodular(k))), st.data())
def test_action_is_contravariant(pair, data):
    f, g = (TorusAut(A) for A in pair)
    p = data.draw(st.integers(0, f.k))
    q = data.draw(st.integers(0, f.k))
    assert (f @ g).action(p, q) == g.action(p, q) @ f.action(p, q)


@given(st.integers(2, 3).flatmap(unimodular), st.data())
def test_pullback_commutes_with_wedge(A, data):
    f = TorusAut(A)
    m = f.model
    a = data.draw(classes(m, 1, 0))
    b = data.draw(classes(m, 1, 1))
    assert f.pullback(a.wedge(b)) == f.pullback(a).wedge(f.pullback(b))


def test_block_diagonal_and_json():
    f = block_diagonal(TorusAut(CAT), TorusAut.identity(1))
    assert f.k == 3
    assert TorusAut.from_dict(f.to_dict()) == f


def test_pullback_model_mismatch():
    with pytest.raises(ValueError):
        TorusAut(CAT).pullback(CohomClass.one(TorusModel(3)))
