"""Bundled example automorphisms and groups."""

from __future__ import annotations

from functools import lru_cache

from .automorphism import CAT_MAP, TorusAut, block_diagonal
from .degrees import FiberedAut
from .gaussian import GaussRat
from .groups import MatrixGroup
from .linalg import ExactMatrix
from .units import TotallyRealField, unit_search

I = GaussRat(0, 1)

# Parabolic and finite-order matrices: every eigenvalue is a root of unity.
ZERO_ENTROPY_MATRICES = {
    "parabolic": [[1, 1], [0, 1]],
    "parabolic_lower": [[1, 0], [1, 1]],
    "parabolic_2": [[1, 2], [0, 1]],
    "parabolic_neg": [[-1, 3], [0, -1]],
    "rotation_4": [[0, -1], [1, 0]],
    "rotation_3": [[0, -1], [1, -1]],
    "rotation_6": [[0, -1], [1, 1]],
    "minus_identity": [[-1, 0], [0, -1]],
    "gaussian_diag": [[I, 0], [0, -I]],
    "gaussian_parabolic": [[1, I], [0, 1]],
    "gaussian_jordan": [[I, 1], [0, I]],
    "unipotent_3": [[1, 1, 0], [0, 1, 1], [0, 0, 1]],
    "unipotent_full_3": [[1, 1, 1], [0, 1, 1], [0, 0, 1]],
    "cyclic_permutation_3": [[0, 0, 1], [1, 0, 0], [0, 1, 0]],
    "reflection_pair_3": [[1, 0, 0], [0, -1, 0], [0, 0, -1]],
    "companion_x3_2x2_2x_1": [[0, 0, -1], [1, 0, -2], [0, 1, -2]],
    "companion_phi5": [[0, 0, 0, -1], [1, 0, 0, -1], [0, 1, 0, -1], [0, 0, 1, -1]],
    "companion_phi8": [[0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]],
    "companion_phi12": [[0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, 1], [0, 0, 1, 0]],
    "parabolic_plus_rotation": [[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]],
}

UNIT_FIELDS = {"sqrt2": "x^2-2", "sqrt3": "x^2-3", "cubic": "x^3-3x-1"}
UNIT_HEIGHT = 2


def zero_entropy_examples() -> dict[str, TorusAut]:
    return {name: TorusAut(m) for name, m in ZERO_ENTROPY_MATRICES.items()}


def cat_map(k: int = 2) -> TorusAut:
    """The cat map on the first two coordinates, identity on the rest."""
    f = TorusAut(CAT_MAP)
    if k > 2:
        f = block_diagonal(f, TorusAut.identity(k - 2))
    return f


@lru_cache(maxsize=None)
def unit_group(name: str) -> MatrixGroup:
    field = TotallyRealField.from_poly(UNIT_FIELDS[name])
    system = unit_search(field, UNIT_HEIGHT)
    gens = [TorusAut(M) for M in system.matrices]
    labels = ["u" + "".join(map(str, u)) for u in system.represented]
    return MatrixGroup(gens, labels, f"units of Z[a], {UNIT_FIELDS[name]}")


def _heisenberg() -> MatrixGroup:
    a = TorusAut([[1, 1, 0], [0, 1, 0], [0, 0, 1]])
    b = TorusAut([[1, 0, 0], [0, 1, 1], [0, 0, 1]])
    return MatrixGroup([a, b], ["a", "b"], "Heisenberg (unipotent pair)")


def conjugate_cat_pair() -> tuple[TorusAut, TorusAut]:
    """The cat map g and h = P g P^-1 with P = [[1,1],[0,1]]."""
    g = TorusAut(CAT_MAP)
    P = TorusAut([[1, 1], [0, 1]])
    return g, P @ g @ P.inverse()


@lru_cache(maxsize=None)
def bundled_groups() -> dict[str, MatrixGroup]:
    cat = TorusAut(CAT_MAP)
    groups = {
        "cat": MatrixGroup([cat], ["g"], "cat map"),
        "sqrt2": unit_group("sqrt2"),
        "sqrt3": unit_group("sqrt3"),
        "cubic": unit_group("cubic"),
        "cat_times_involution": MatrixGroup(
            [cat_map(3), TorusAut([[-1, 0, 0], [0, -1, 0], [0, 0, 1]])],
            ["g", "s"],
            "cat map with a finite-order factor (k=3)",
        ),
        "cat_pair_k4": MatrixGroup(
            [block_diagonal(cat, TorusAut.identity(2)), block_diagonal(TorusAut.identity(2), cat)],
            ["g1", "g2"],
            "independent cat maps on C^2 x C^2",
        ),
        "parabolic": MatrixGroup([TorusAut([[1, 1], [0, 1]])], ["n"], "parabolic"),
        "heisenberg": _heisenberg(),
    }
    return groups


def solvability_examples() -> dict[str, MatrixGroup]:
    g, h = conjugate_cat_pair()
    cat = TorusAut(CAT_MAP)
    return {
        "abelian": MatrixGroup([cat, cat @ cat], ["g", "g2"], "powers of the cat map"),
        "heisenberg": _heisenberg(),
        "ping_pong": MatrixGroup([g, h], ["g", "h"], "cat map and a conjugate"),
    }


def _fibered(G, F, C) -> FiberedAut:
    l, m = len(G), len(F)
    rows = [list(G[i]) + [0] * m for i in range(l)]
    rows += [list(C[i]) + list(F[i]) for i in range(m)]
    return FiberedAut(TorusAut(ExactMatrix(rows)), l)


CUBIC_UNIT = [[0, 0, 1], [1, 0, 3], [0, 1, 0]]
SQRT2_UNIT = [[3, 4], [2, 3]]


def fibered_examples() -> dict[str, FiberedAut]:
    """Block-lower-triangular automorphisms [[G, 0], [C, F]] (base first)."""
    cat = [list(r) for r in CAT_MAP]
    return {
        "point_base_cat_fibre": _fibered([[1]], cat, [[0], [0]]),
        "cat_base_cat_fibre": _fibered(cat, cat, [[0, 0], [0, 0]]),
        "cat_base_cat_fibre_coupled": _fibered(cat, cat, [[1, 0], [0, 1]]),
        "cat_base_point_fibre": _fibered(cat, [[1]], [[1, 1]]),
        "point_base_sqrt2_fibre": _fibered([[1]], SQRT2_UNIT, [[1], [0]]),
        "flip_base_cat_fibre": _fibered([[-1]], cat, [[0], [1]]),
        "sqrt2_base_cat_fibre": _fibered(SQRT2_UNIT, cat, [[1, 0], [0, 0]]),
        "cat_base_cubic_fibre": _fibered(cat, CUBIC_UNIT, [[0, 0], [0, 0], [0, 0]]),
        "point_base_cubic_fibre": _fibered([[1]], CUBIC_UNIT, [[1], [1], [0]]),
        "cubic_base_point_fibre": _fibered(CUBIC_UNIT, [[1]], [[0, 1, 0]]),
    }


__all__ = [
    "UNIT_FIELDS",
    "ZERO_ENTROPY_MATRICES",
    "bundled_groups",
    "cat_map",
    "conjugate_cat_pair",
    "fibered_examples",
    "solvability_examples",
    "unit_group",
    "zero_entropy_examples",
]
