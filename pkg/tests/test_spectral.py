import random
from fractions import Fraction

import numpy as np
import pytest

from helpers import random_unimodular
from torusdyn.gaussian import re_im
from torusdyn.linalg import ExactMatrix, char_poly
from torusdyn.spectral import is_exactly_one, root_moduli, spectral_radius, unit_circle_root_count


def to_numpy(M: ExactMatrix) -> np.ndarray:
    return np.array([[complex(*map(float, re_im(M[i, j]))) for j in range(M.ncols)] for i in range(M.nrows)])


def test_radius_matches_numpy_on_random_matrices():
    rng = random.Random(2024)
    for trial in range(100):
        k = 2 + trial % 3
        M = random_unimodular(rng, k, steps=4)
        r = spectral_radius(M, Fraction(1, 10**10))
        ref = max(abs(np.linalg.eigvals(to_numpy(M))))
        assert float(r.lo) - 1e-6 * ref <= ref <= float(r.hi) + 1e-6 * ref
        if r.exactly_one:
            assert ref == pytest.approx(1, abs=1e-5)


def test_cat_radius_against_oracle():
    r = spectral_radius(ExactMatrix([[2, 1], [1, 1]]), Fraction(1, 10**30))
    golden2 = Fraction("2.618033988749894848204586834365638117720")  # (3 + sqrt 5)/2
    assert r.lo <= golden2 + Fraction(1, 10**39) and golden2 - Fraction(1, 10**39) <= r.hi
    assert r.rel_error <= Fraction(1, 10**30)
    assert r.lo > 0


def test_cubic_moduli_are_tight():
    mods = root_moduli([-1, -3, 0, 1], Fraction(1, 10**20))
    expected = [
        Fraction("1.879385241571816768108218554649462939872"),
        Fraction("1.532088886237956070404785301110833347872"),
        Fraction("0.3472963553338606977034332535386295920008"),
    ]
    for iv, e in zip(mods, expected):
        assert iv.contains(e)
        assert iv.hi - iv.lo <= Fraction(1, 10**18)


@pytest.mark.parametrize(
    "p, count",
    [([1, 0, 1], 2), ([1, -3, 1], 0), ([-1, 0, 0, 1], 3), ([1, -1], 1), ([2, 0, 1], 0), ([1, -2, 1], 1)],
)
def test_unit_circle_count(p, count):
    assert unit_circle_root_count(p) == count


def test_exactly_one_non_integral():
    # (x - 1)(x - 1/2): modulus exactly one with the other root inside
    assert is_exactly_one([Fraction(1, 2), Fraction(-3, 2), 1])
    assert not is_exactly_one([2, -3, 1])
    assert is_exactly_one(char_poly(ExactMatrix([[1, 1], [0, 1]])))
