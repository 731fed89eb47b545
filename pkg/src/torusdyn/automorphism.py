"""Linear automorphisms of C^k / (Z^k + i Z^k) and their pullbacks.

Convention: f(z) = A z, so f^*(dz_a) = sum_b A[a][b] dz_b.  On coefficient
vectors of H^{p,q} (basis from :meth:`TorusModel.basis`) the pullback is
Lambda^p(A^T) (x) conj(Lambda^q(A^T)), which makes pullback contravariant:
action(compose(f, g)) = action(g) @ action(f).
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import cached_property

from .cohomology import CohomClass, DegreeError, ModelMismatch, TorusModel
from .gaussian import GaussRat, exact_str
from .linalg import (
    ExactMatrix,
    as_matrix,
    char_poly,
    conjugate,
    det,
    direct_sum,
    exterior_power,
    inverse,
    tensor_product,
)

UNITS = (Fraction(1), Fraction(-1), GaussRat(0, 1), GaussRat(0, -1))


class NotAnAutomorphism(ValueError):
    pass


class TorusAut:
    """A lattice-preserving linear automorphism; immutable."""

    def __init__(self, A, model: TorusModel | None = None):
        A = as_matrix(A)
        if not A.is_square:
            raise NotAnAutomorphism("matrix must be square")
        if not A.is_integral():
            raise NotAnAutomorphism("entries must be Gaussian integers")
        model = model or TorusModel(A.nrows)
        if model.k != A.nrows:
            raise ModelMismatch("matrix size differs from the torus dimension")
        d = det(A)
        if d not in UNITS:
            raise NotAnAutomorphism(f"determinant {d} is not a unit of Z[i]")
        self.model = model
        self.A = A

    @classmethod
    def identity(cls, k: int) -> "TorusAut":
        return cls(ExactMatrix.identity(k))

    @property
    def k(self) -> int:
        return self.model.k

    @cached_property
    def det(self):
        return det(self.A)

    @cached_property
    def char_poly(self) -> list:
        return char_poly(self.A)

    def is_identity(self) -> bool:
        return self.A == ExactMatrix.identity(self.k)

    def is_real(self) -> bool:
        return self.A.is_real()

    def __eq__(self, other):
        return isinstance(other, TorusAut) and self.A == other.A

    def __hash__(self):
        return hash(self.A)

    def __repr__(self):
        return f"TorusAut({self.A.tolist()})"

    # -- group operations --------------------------------------------------

    def _check(self, other: "TorusAut"):
        if other.model != self.model:
            raise ModelMismatch("automorphisms act on different tori")

    def compose(self, other: "TorusAut") -> "TorusAut":
        """self o other."""
        self._check(other)
        return TorusAut(self.A @ other.A, self.model)

    def __matmul__(self, other):
        return self.compose(other)

    def inverse(self) -> "TorusAut":
        return TorusAut(inverse(self.A), self.model)

    def power(self, n: int) -> "TorusAut":
        return TorusAut(self.A**n, self.model)

    # -- cohomology --------------------------------------------------------

    def _lambda(self, p: int) -> ExactMatrix:
        cache = self.__dict__.setdefault("_lambda_cache", {})
        if p not in cache:
            cache[p] = exterior_power(self.A.T, p)
        return cache[p]

    def action(self, p: int, q: int) -> ExactMatrix:
        """Matrix of f^* on H^{p,q}."""
        if not (0 <= p <= self.k and 0 <= q <= self.k):
            raise DegreeError(f"bidegree ({p},{q}) outside 0..{self.k}")
        cache = self.__dict__.setdefault("_action_cache", {})
        if (p, q) not in cache:
            cache[(p, q)] = tensor_product(self._lambda(p), conjugate(self._lambda(q)))
        return cache[(p, q)]

    def pullback(self, c: CohomClass) -> CohomClass:
        if c.model != self.model:
            raise ModelMismatch("class and automorphism live on different tori")
        return CohomClass.from_vector(self.model, c.p, c.q, self.action(c.p, c.q).apply(c.vector()))

    # -- serialization -----------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "model": {"k": self.k},
            "matrix": [[exact_str(x) for x in row] for row in self.A.rows],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "TorusAut":
        rows = data["matrix"]
        A = ExactMatrix([[_entry(x) for x in row] for row in rows])
        k = int(data.get("model", {}).get("k", A.nrows))
        return cls(A, TorusModel(k))


def _entry(x):
    if isinstance(x, (list, tuple)):
        return GaussRat(Fraction(x[0]), Fraction(x[1]))
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise ValueError(f"bad matrix entry {x!r}")


def validate(A, model: TorusModel | None = None) -> TorusAut:
    return TorusAut(A, model)


def action_on_Hpq(f: TorusAut, p: int, q: int) -> ExactMatrix:
    return f.action(p, q)


def compose(f: TorusAut, g: TorusAut) -> TorusAut:
    return f.compose(g)


def block_diagonal(*fs: TorusAut) -> TorusAut:
    """Product automorphism on the product torus."""
    A = fs[0].A
    for f in fs[1:]:
        A = direct_sum(A, f.A)
    return TorusAut(A)


CAT_MAP = ((2, 1), (1, 1))

__all__ = [
    "CAT_MAP",
    "NotAnAutomorphism",
    "TorusAut",
    "action_on_Hpq",
    "block_diagonal",
    "compose",
    "validate",
]
