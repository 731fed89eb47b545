"""Cohomology of the torus C^k / (Z^k + i Z^k) as an exterior algebra.

A class of bidegree (p, q) is a finite sum of ``c * dz_I ^ dzbar_J`` with
``|I| = p``, ``|J| = q`` and both index sets ascending.  Products are kept in
this split form: moving ``dz_{I2}`` in front of ``dzbar_{J1}`` costs
``(-1)^(|J1| |I2|)``, and each group is then sorted with its own permutation
sign.  Worked example for k = 2::

    (dz_1 ^ dzbar_1) ^ (dz_2 ^ dzbar_2)
        = - dz_1 ^ dz_2 ^ dzbar_1 ^ dzbar_2     (one dz past one dzbar)

Indices are 0-based in code and JSON.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Mapping

from .gaussian import GaussRat, conj, exact_str, to_exact
from .linalg import ExactMatrix, as_matrix, index_sets, is_positive_definite, is_positive_semidefinite

HALF_I = GaussRat(0, Fraction(1, 2))
HALF = Fraction(1, 2)

Index = tuple[int, ...]


class DegreeError(ValueError):
    pass


class ModelMismatch(ValueError):
    pass


class ConeMembershipError(ValueError):
    pass


@dataclass(frozen=True)
class TorusModel:
    k: int

    def __post_init__(self):
        if not 1 <= self.k <= 6:
            raise ValueError("supported complex dimensions are 1..6")

    def hodge_number(self, p: int, q: int) -> int:
        return comb(self.k, p) * comb(self.k, q)

    def basis(self, p: int, q: int) -> list[tuple[Index, Index]]:
        """Lexicographic (I, J) basis of H^{p,q}, I varying slowest."""
        return [(I, J) for I in index_sets(self.k, p) for J in index_sets(self.k, q)]


@lru_cache(maxsize=None)
def _merge(a: Index, b: Index):
    """(sign, sorted a+b) or None when an index repeats."""
    if set(a) & set(b):
        return None
    seq = list(a) + list(b)
    inversions = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return (-1 if inversions % 2 else 1), tuple(sorted(seq))


class CohomClass:
    """Immutable element of H^{p,q} with Gaussian-rational coefficients."""

    __slots__ = ("model", "p", "q", "_terms")

    def __init__(self, model: TorusModel, p: int, q: int, terms: Mapping[tuple[Index, Index], object] = ()):
        if not (0 <= p <= model.k and 0 <= q <= model.k):
            raise DegreeError(f"bidegree ({p},{q}) outside 0..{model.k}")
        clean = {}
        for (I, J), c in dict(terms).items():
            I, J = tuple(I), tuple(J)
            if len(I) != p or len(J) != q:
                raise DegreeError(f"term {I},{J} does not have bidegree ({p},{q})")
            if list(I) != sorted(set(I)) or list(J) != sorted(set(J)):
                raise ValueError("index sets must be strictly ascending")
            if any(not 0 <= x < model.k for x in I + J):
                raise ValueError("index out of range")
            c = to_exact(c)
            if c != 0:
                clean[(I, J)] = c
        self.model = model
        self.p = p
        self.q = q
        self._terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def one(cls, model: TorusModel) -> "CohomClass":
        return cls(model, 0, 0, {((), ()): 1})

    @classmethod
    def zero(cls, model: TorusModel, p: int, q: int) -> "CohomClass":
        return cls(model, p, q)

    @classmethod
    def monomial(cls, model: TorusModel, I: Iterable[int], J: Iterable[int], coeff=1) -> "CohomClass":
        I, J = tuple(I), tuple(J)
        return cls(model, len(I), len(J), {(I, J): coeff})

    @classmethod
    def from_vector(cls, model: TorusModel, p: int, q: int, vec) -> "CohomClass":
        return cls(model, p, q, dict(zip(model.basis(p, q), vec)))

    # -- accessors ---------------------------------------------------------

    @property
    def bidegree(self) -> tuple[int, int]:
        return self.p, self.q

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def coeff(self, I, J):
        return self._terms.get((tuple(I), tuple(J)), Fraction(0))

    def vector(self) -> list:
        return [self._terms.get(b, Fraction(0)) for b in self.model.basis(self.p, self.q)]

    def is_zero(self) -> bool:
        return not self._terms

    # -- algebra -----------------------------------------------------------

    def _check(self, other: "CohomClass"):
        if not isinstance(other, CohomClass):
            raise TypeError("expected a CohomClass")
        if other.model != self.model:
            raise ModelMismatch("classes live on different torus models")

    def __add__(self, other):
        self._check(other)
        if other.bidegree != self.bidegree:
            raise DegreeError("cannot add classes of different bidegree")
        out = dict(self._terms)
        for key, c in other._terms.items():
            out[key] = out.get(key, 0) + c
        return CohomClass(self.model, self.p, self.q, out)

    def __neg__(self):
        return CohomClass(self.model, self.p, self.q, {key: -c for key, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "CohomClass":
        c = to_exact(c)
        return CohomClass(self.model, self.p, self.q, {key: c * v for key, v in self._terms.items()})

    def __mul__(self, c):
        if isinstance(c, CohomClass):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def wedge(self, other: "CohomClass") -> "CohomClass":
        self._check(other)
        p, q = self.p + other.p, self.q + other.q
        if p > self.model.k or q > self.model.k:
            raise DegreeError(f"product bidegree ({p},{q}) exceeds ({self.model.k},{self.model.k})")
        out: dict = {}
        for (I1, J1), c1 in self._terms.items():
            for (I2, J2), c2 in other._terms.items():
                mi = _merge(I1, I2)
                if mi is None:
                    continue
                mj = _merge(J1, J2)
                if mj is None:
                    continue
                sign = mi[0] * mj[0] * (-1 if (len(J1) * len(I2)) % 2 else 1)
                key = (mi[1], mj[1])
                out[key] = out.get(key, 0) + sign * c1 * c2
        return CohomClass(self.model, p, q, out)

    def __xor__(self, other):
        return self.wedge(other)

    def power(self, n: int) -> "CohomClass":
        result = CohomClass.one(self.model)
        for _ in range(n):
            result = result.wedge(self)
        return result

    def conjugate(self) -> "CohomClass":
        """conj(dz_I ^ dzbar_J) = (-1)^(pq) dz_J ^ dzbar_I."""
        s = -1 if (self.p * self.q) % 2 else 1
        return CohomClass(self.model, self.q, self.p, {(J, I): s * conj(c) for (I, J), c in self._terms.items()})

    def is_real(self) -> bool:
        return self.conjugate() == self

    def __eq__(self, other):
        if not isinstance(other, CohomClass):
            return NotImplemented
        return self.model == other.model and self.bidegree == other.bidegree and self._terms == other._terms

    def __hash__(self):
        return hash((self.model, self.p, self.q, frozenset(self._terms.items())))

    def __repr__(self):
        parts = [f"{c}*dz{list(I)}^dzb{list(J)}" for (I, J), c in sorted(self._terms.items())]
        return f"CohomClass(k={self.model.k}, ({self.p},{self.q}), {' + '.join(parts) or '0'})"

    # -- serialization -----------------------------------------------------

    def to_dict(self) -> dict:
        terms = []
        for (I, J), c in sorted(self._terms.items()):
            re, im = exact_str(c)
            terms.append({"I": list(I), "J": list(J), "re": re, "im": im})
        return {"k": self.model.k, "p": self.p, "q": self.q, "terms": terms}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict, model: TorusModel | None = None) -> "CohomClass":
        model = model or TorusModel(int(data["k"]))
        terms = {}
        for t in data["terms"]:
            key = (tuple(t["I"]), tuple(t["J"]))
            terms[key] = terms.get(key, 0) + GaussRat(Fraction(t["re"]), Fraction(t.get("im", "0")))
        return cls(model, int(data["p"]), int(data["q"]), terms)


def wedge(*classes: CohomClass) -> CohomClass:
    if not classes:
        raise ValueError("empty product needs a model; use CohomClass.one")
    out = classes[0]
    for c in classes[1:]:
        out = out.wedge(c)
    return out


def wedge_all(model: TorusModel, classes: Iterable[CohomClass]) -> CohomClass:
    out = CohomClass.one(model)
    for c in classes:
        out = out.wedge(c)
    return out


def volume_class(model: TorusModel) -> CohomClass:
    return wedge_all(model, (CohomClass.monomial(model, (j,), (j,), HALF_I) for j in range(model.k)))


@lru_cache(maxsize=None)
def _volume_coefficient(k: int):
    sign = -1 if (k * (k - 1) // 2) % 2 else 1
    return sign * HALF_I**k


def integrate(top: CohomClass):
    """Integral of a (k,k)-class; the volume class integrates to 1."""
    k = top.model.k
    if top.bidegree != (k, k):
        raise DegreeError(f"integration needs bidegree ({k},{k}), got {top.bidegree}")
    full = tuple(range(k))
    return top.coeff(full, full) / _volume_coefficient(k)


def integrate_product(*classes: CohomClass):
    return integrate(wedge(*classes))


# -- Hermitian forms and (1,1)-classes ----------------------------------------


def _hermitian(H) -> ExactMatrix:
    H = as_matrix(H)
    if not H.is_square or not H.is_hermitian():
        raise ValueError("expected a Hermitian matrix")
    return H


def omega(H, model: TorusModel | None = None) -> CohomClass:
    """The real (1,1)-class sum (i/2) H_ab dz_a ^ dzbar_b of a Hermitian H."""
    H = _hermitian(H)
    model = model or TorusModel(H.nrows)
    if H.nrows != model.k:
        raise ModelMismatch("form size differs from the torus dimension")
    terms = {((a,), (b,)): HALF_I * H[a, b] for a in range(model.k) for b in range(model.k)}
    return CohomClass(model, 1, 1, terms)


def kahler_class(H, model: TorusModel | None = None) -> CohomClass:
    H = _hermitian(H)
    if not is_positive_definite(H):
        raise ConeMembershipError("form is not positive definite")
    return omega(H, model)


def nef_class(H, model: TorusModel | None = None) -> CohomClass:
    H = _hermitian(H)
    if not is_positive_semidefinite(H):
        raise ConeMembershipError("form is not positive semidefinite")
    return omega(H, model)


def standard_kahler(model: TorusModel) -> CohomClass:
    return omega(ExactMatrix.identity(model.k), model)


@lru_cache(maxsize=None)
def _real_basis(k: int) -> tuple[CohomClass, ...]:
    model = TorusModel(k)
    out = [CohomClass.monomial(model, (a,), (a,), HALF_I) for a in range(k)]
    pairs = list(itertools.combinations(range(k), 2))
    out += [CohomClass(model, 1, 1, {((a,), (b,)): HALF_I, ((b,), (a,)): HALF_I}) for a, b in pairs]
    out += [CohomClass(model, 1, 1, {((a,), (b,)): HALF, ((b,), (a,)): -HALF}) for a, b in pairs]
    return tuple(out)


def real_basis_H11(model: TorusModel) -> list[CohomClass]:
    """k^2 real (1,1)-classes: diagonal, symmetric, then antisymmetric pairs."""
    return list(_real_basis(model.k))


def real_coordinates(c: CohomClass) -> list[Fraction]:
    """Coordinates of a real (1,1)-class in :func:`real_basis_H11`."""
    if c.bidegree != (1, 1):
        raise DegreeError("real coordinates are defined on H^{1,1}")
    k = c.model.k
    pairs = list(itertools.combinations(range(k), 2))
    H = hermitian_of(c)
    out = [H[a, a] for a in range(k)]
    out += [_re(H[a, b]) for a, b in pairs]
    out += [-_im(H[a, b]) for a, b in pairs]
    return out


def from_real_coordinates(model: TorusModel, coords) -> CohomClass:
    basis = real_basis_H11(model)
    if len(coords) != len(basis):
        raise ValueError("wrong number of coordinates")
    out = CohomClass.zero(model, 1, 1)
    for x, b in zip(coords, basis):
        if x != 0:
            out = out + b.scale(x)
    return out


def hermitian_of(c: CohomClass) -> ExactMatrix:
    """The matrix H with c = omega(H) (H Hermitian iff c is real)."""
    if c.bidegree != (1, 1):
        raise DegreeError("only (1,1)-classes come from Hermitian forms")
    k = c.model.k
    inv_half_i = 1 / HALF_I
    return ExactMatrix([[c.coeff((a,), (b,)) * inv_half_i for b in range(k)] for a in range(k)])


def _re(x):
    return x.real if isinstance(x, GaussRat) else x


def _im(x):
    return x.imag if isinstance(x, GaussRat) else Fraction(0)


# -- numerical almost-equivalence ---------------------------------------------


def monomial_products(model: TorusModel, n: int) -> list[CohomClass]:
    """All n-fold products of basis (1,1)-classes (with repetition)."""
    return list(_monomials(model.k, n))


@lru_cache(maxsize=None)
def _monomials(k: int, n: int) -> tuple[CohomClass, ...]:
    model = TorusModel(k)
    basis = _real_basis(k)
    out = []
    for combo in itertools.combinations_with_replacement(range(len(basis)), n):
        out.append(wedge_all(model, (basis[i] for i in combo)))
    return tuple(out)


def numerical_profile(c: CohomClass) -> list:
    """Integrals of c against every (k-p)-fold product of basis classes."""
    p, q = c.bidegree
    if p != q:
        raise DegreeError("numerical equivalence is defined on (p,p)-classes")
    return [integrate(c.wedge(m)) for m in _monomials(c.model.k, c.model.k - p)]


def is_numerically_trivial(c: CohomClass) -> bool:
    return all(v == 0 for v in numerical_profile(c))


def is_numerically_equiv(a: CohomClass, b: CohomClass) -> bool:
    a._check(b)
    if a.bidegree != b.bidegree:
        raise DegreeError("numerical equivalence compares classes of equal bidegree")
    return is_numerically_trivial(a - b)


__all__ = [
    "CohomClass",
    "ConeMembershipError",
    "DegreeError",
    "ModelMismatch",
    "TorusModel",
    "from_real_coordinates",
    "hermitian_of",
    "integrate",
    "integrate_product",
    "is_numerically_equiv",
    "is_numerically_trivial",
    "kahler_class",
    "monomial_products",
    "nef_class",
    "numerical_profile",
    "omega",
    "real_basis_H11",
    "real_coordinates",
    "standard_kahler",
    "volume_class",
    "wedge",
    "wedge_all",
]
