import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from torusdyn.cohomology import CohomClass, ConeMembershipError, TorusModel, kahler_class, nef_class, omega, real_basis_H11, standard_kahler
from torusdyn.gaussian import GaussRat
from torusdyn.hodge import (
    PreconditionError,
    hr_degeneracy,
    hr_inequality,
    primitive_line,
    q_form,
    random_kahler_form,
    random_nef_form,
    signature_check,
    whr_verify,
)
from torusdyn.linalg import ExactMatrix

HALF_I = GaussRat(0, Fraction(1, 2))


def diag(*xs):
    return ExactMatrix.diag(list(xs))


def test_k2_signature():
    v = signature_check([], ExactMatrix.identity(2), TorusModel(2))
    assert v.signature == (3, 1, 0) and v.ok


def test_k3_signature_and_scaling():
    m = TorusModel(3)
    rng = random.Random(1)
    w0 = ExactMatrix.identity(3)
    c = random_kahler_form(rng, 3)
    v = signature_check([w0], c, m)
    assert v.signature == (8, 1, 0) and v.primitive_dim == 8 and v.ok
    v2 = signature_check([w0.scale(2)], c.scale(2), m)
    assert v2.signature == v.signature


def test_k3_gram_is_9x9_and_negative_on_kahler():
    m = TorusModel(3)
    form = q_form([standard_kahler(m)], m)
    assert form.gram.shape == (9, 9) and form.gram.is_symmetric()
    a = kahler_class(diag(1, 2, 3), m)
    assert form(a, a) < 0


def test_rejects_non_kahler():
    with pytest.raises(ConeMembershipError):
        signature_check([], diag(1, 0), TorusModel(2))


def test_hr_inequality_examples():
    m = TorusModel(2)
    v = hr_inequality([], diag(1, 0), diag(0, 1), m)
    assert (v.q_aa, v.q_bb, v.q_ab) == (0, 0, -1) and v.holds
    a = diag(2, 1)
    v = hr_inequality([], a, a, m)
    assert v.q_aa * v.q_bb == v.q_ab**2


@settings(max_examples=30)
@given(st.integers(0, 10**6), st.integers(2, 3))
def test_form_symmetric_and_inequality_on_random_nef(seed, k):
    rng = random.Random(seed)
    m = TorusModel(k)
    cs = [nef_class(random_nef_form(rng, k), m) for _ in range(k - 2)]
    a, b = nef_class(random_nef_form(rng, k), m), nef_class(random_nef_form(rng, k), m)
    form = q_form(cs, m)
    assert form(a, b) == form(b, a)
    v = hr_inequality(cs, a, b, m)
    assert v.holds and v.nef_signs_ok


def test_primitive_line_is_nonpositive():
    m = TorusModel(3)
    rng = random.Random(3)
    cs = [kahler_class(random_kahler_form(rng, 3), m)]
    last = kahler_class(random_kahler_form(rng, 3), m)
    w = primitive_line(cs, last, real_basis_H11(m)[0], real_basis_H11(m)[4], m)
    assert w.ok


def test_whr_on_nef_product():
    m = TorusModel(3)
    v = whr_verify([diag(1, 0, 0)], m, trials=20, seed=4)
    assert v.p == 1 and v.ok and v.skipped == 0


def test_whr_empty_product_and_skips():
    m = TorusModel(3)
    assert whr_verify([], m, trials=5).ok
    theta = [diag(1, 0, 0)]
    tuples = [[nef_class(diag(1, 0, 0), m)]]
    v = whr_verify(theta, m, c_tuples=tuples)
    assert v.skipped == 1


def test_whr_rejects_zero_theta():
    m = TorusModel(3)
    with pytest.raises(PreconditionError):
        whr_verify([CohomClass.zero(m, 1, 1)], m)


def test_degeneracy_witness_examples():
    m = TorusModel(3)
    theta = CohomClass.monomial(m, (0,), (0,), HALF_I)
    e1, e2 = omega(diag(1, 0, 0), m), omega(diag(0, 1, 0), m)
    w = hr_degeneracy(theta, e2, e2)
    assert w.t == (1, -1) and w.squares_vanish
    w = hr_degeneracy(theta, e2, e2 + e1)
    assert w.t == (1, -1) and w.squares_vanish and w.per_tuple_consistent
    w = hr_degeneracy(theta, e2.scale(2), (e2 + e1).scale(3))
    assert w.t == (1, Fraction(-2, 3))
    with pytest.raises(PreconditionError):
        hr_degeneracy(theta, e2, omega(diag(0, 0, 1), m) + e2)
