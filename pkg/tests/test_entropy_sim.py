from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from torusdyn.entropy_sim import TorusMap, TorusMapError, bowen_offsets, entropy_estimate, separated_count

CAT = TorusMap(((2, 1), (1, 1)))
IDENTITY = TorusMap(((1, 0), (0, 1)))


def brute_force_greedy(f: TorusMap, eps: float, n: int, N: int) -> int:
    """Direct pairwise greedy on orbits, for small grids."""
    A = f.as_array()
    pts = np.array(np.meshgrid(*[np.arange(N)] * f.m, indexing="ij")).reshape(f.m, -1).T
    orbits = [pts]
    for _ in range(n - 1):
        orbits.append((orbits[-1] @ A.T) % N)
    orbit = np.stack(orbits, axis=1)  # point, time, coord
    r = int(np.floor(eps * N + 1e-12))
    chosen = []
    for i in range(len(pts)):
        ok = True
        for j in chosen:
            d = (orbit[i] - orbit[j]) % N
            d = np.minimum(d, N - d)
            if d.max(axis=1).max() <= r:
                ok = False
                break
        if ok:
            chosen.append(i)
    return len(chosen)


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("eps", [0.1, 0.2])
def test_matches_brute_force(n, eps):
    assert separated_count(CAT, eps, n, 16) == brute_force_greedy(CAT, eps, n, 16)


@given(st.integers(1, 6), st.sampled_from([0.05, 0.1, 0.2]))
def test_identity_count_independent_of_n(n, eps):
    assert separated_count(IDENTITY, eps, n, 64) == separated_count(IDENTITY, eps, 1, 64)


def test_large_eps_gives_one():
    assert separated_count(CAT, 0.5, 5, 64) == 1
    assert separated_count(CAT, 0.9, 1, 64) == 1


def test_single_offset_counts_every_point():
    # once the Bowen set is {0}, every grid point is separated from every other
    K = bowen_offsets(CAT.as_array(), 32, 0.05, 12)
    assert len(K[-1]) == 1
    assert separated_count(CAT, 0.05, 12, 32) == 32**2


@settings(max_examples=10)
@given(st.sampled_from([0.05, 0.1]))
def test_counts_monotone(eps):
    counts = [separated_count(CAT, eps, n, 128) for n in range(1, 6)]
    assert counts == sorted(counts)
    assert separated_count(CAT, eps / 2, 3, 128) >= separated_count(CAT, eps, 3, 128)


def test_deterministic():
    a = entropy_estimate(CAT, (0.05,), 6, 256, with_reference=False)
    b = entropy_estimate(CAT, (0.05,), 6, 256, with_reference=False)
    assert a.to_dict() == b.to_dict()


def test_bowen_sets_shrink():
    K = bowen_offsets(CAT.as_array(), 128, 0.05, 6)
    sizes = [len(k) for k in K]
    assert sizes == sorted(sizes, reverse=True)
    assert all((k == 0).all(axis=1).any() for k in K)


def test_reference_is_half_algebraic_entropy():
    ref = CAT.reference_entropy()
    log_lambda = Fraction("0.9624236501192068949955178268487368462704")  # mpmath, 40 digits
    assert ref.lo - Fraction(1, 10**38) <= log_lambda <= ref.hi + Fraction(1, 10**38)


def test_rejects_bad_maps():
    with pytest.raises(TorusMapError):
        TorusMap(((2, 0), (0, 1)))
    with pytest.raises(TorusMapError):
        TorusMap(((1, 0, 0), (0, 1, 0)))
    with pytest.raises(ValueError):
        entropy_estimate(TorusMap(((1, 0, 0), (0, 1, 0), (0, 0, 1))), grid=1024)
