"""Shared generators for tests."""

import random

from hypothesis import strategies as st

from torusdyn.cohomology import CohomClass, TorusModel
from torusdyn.gaussian import GaussRat
from torusdyn.linalg import ExactMatrix

UNITS = [1, -1, GaussRat(0, 1), GaussRat(0, -1)]


def random_unimodular(rng: random.Random, k: int, steps: int = 6, gaussian: bool = True) -> ExactMatrix:
    """Product of random elementary matrices times a unit diagonal."""
    A = ExactMatrix.identity(k)
    for _ in range(steps if k > 1 else 0):
        i, j = rng.sample(range(k), 2)
        c = GaussRat(rng.randint(-2, 2), rng.randint(-1, 1) if gaussian else 0)
        E = [[1 if a == b else 0 for b in range(k)] for a in range(k)]
        E[i][j] = c
        A = A @ ExactMatrix(E)
    u = rng.choice(UNITS if gaussian else [1, -1])
    return A @ ExactMatrix.diag([u] + [1] * (k - 1))


gauss_ints = st.builds(GaussRat, st.integers(-3, 3), st.integers(-3, 3))
small_fracs = st.fractions(min_value=-5, max_value=5, max_denominator=6)


def square_matrices(n: int, elements=gauss_ints):
    return st.lists(st.lists(elements, min_size=n, max_size=n), min_size=n, max_size=n).map(ExactMatrix)


@st.composite
def unimodular(draw, k: int, gaussian: bool = True):
    seed = draw(st.integers(0, 10**6))
    steps = draw(st.integers(1, 8))
    return random_unimodular(random.Random(seed), k, steps, gaussian)


@st.composite
def classes(draw, model: TorusModel, p: int, q: int):
    basis = model.basis(p, q)
    coeffs = draw(st.lists(gauss_ints, min_size=len(basis), max_size=len(basis)))
    return CohomClass.from_vector(model, p, q, coeffs)
