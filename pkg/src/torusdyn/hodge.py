"""The form Q_Omega(a, b) = -integral(a ^ b ^ Omega) on H^{1,1} and its signatures.

Forms are represented by Gram matrices on :func:`real_basis_H11`; real
(1,1)-classes by their coordinates in that basis.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .cohomology import (
    CohomClass,
    ConeMembershipError,
    DegreeError,
    TorusModel,
    integrate,
    is_numerically_trivial,
    kahler_class,
    nef_class,
    numerical_profile,
    omega,
    real_basis_H11,
    real_coordinates,
    wedge_all,
)
from .gaussian import GaussRat
from .linalg import ExactMatrix, inertia, is_positive_semidefinite, nullspace


class PreconditionError(ValueError):
    pass


def _as_class(c, model: TorusModel) -> CohomClass:
    if isinstance(c, CohomClass):
        return c
    return omega(c, model)


def _check_real_11(c: CohomClass):
    if c.bidegree != (1, 1) or not c.is_real():
        raise DegreeError("expected a real (1,1)-class")


@dataclass(frozen=True)
class HRForm:
    omega: CohomClass
    gram: ExactMatrix

    @property
    def model(self) -> TorusModel:
        return self.omega.model

    def __call__(self, a: CohomClass, b: CohomClass) -> Fraction:
        x, y = real_coordinates(a), real_coordinates(b)
        return sum(x[i] * self.gram[i, j] * y[j] for i in range(len(x)) for j in range(len(y)) if x[i] and y[j])


def gram_matrix(Omega: CohomClass) -> ExactMatrix:
    """Gram matrix of -integral(a ^ b ^ Omega) on the real (1,1) basis."""
    model = Omega.model
    k = model.k
    if Omega.bidegree != (k - 2, k - 2):
        raise DegreeError(f"Omega must have bidegree ({k-2},{k-2})")
    basis = real_basis_H11(model)
    partial = [b.wedge(Omega) for b in basis]
    n = len(basis)
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            v = -integrate(basis[i].wedge(partial[j]))
            if isinstance(v, GaussRat):
                raise ArithmeticError("intersection of real classes is not real")
            rows[i][j] = rows[j][i] = v
    return ExactMatrix(rows)


def q_form(c_list: Sequence, model: TorusModel) -> HRForm:
    """Q_Omega with Omega = c_1 ^ ... ^ c_{k-2} (Omega = 1 when k = 2)."""
    cs = [_as_class(c, model) for c in c_list]
    if len(cs) != model.k - 2:
        raise PreconditionError(f"need exactly k-2 = {model.k - 2} classes")
    for c in cs:
        _check_real_11(c)
    Omega = wedge_all(model, cs)
    return HRForm(Omega, gram_matrix(Omega))


def q_form_of(Omega: CohomClass) -> HRForm:
    return HRForm(Omega, gram_matrix(Omega))


@dataclass(frozen=True)
class PrimitiveSubspace:
    omega_prime: CohomClass
    functional: tuple[Fraction, ...]
    basis: tuple[tuple[Fraction, ...], ...]

    def contains(self, coords: Sequence) -> bool:
        return sum(a * b for a, b in zip(self.functional, coords)) == 0


def linear_functional(Omega_prime: CohomClass) -> list[Fraction]:
    """Coordinates of a -> integral(a ^ Omega') on the real (1,1) basis."""
    return [integrate(b.wedge(Omega_prime)) for b in real_basis_H11(Omega_prime.model)]


def primitive_subspace(Omega_prime: CohomClass) -> PrimitiveSubspace:
    k = Omega_prime.model.k
    if Omega_prime.bidegree != (k - 1, k - 1):
        raise DegreeError(f"Omega' must have bidegree ({k-1},{k-1})")
    ell = linear_functional(Omega_prime)
    if all(x == 0 for x in ell):
        raise PreconditionError("Omega' is zero: the primitive space is not a hyperplane")
    basis = nullspace(ExactMatrix([ell]))
    return PrimitiveSubspace(Omega_prime, tuple(ell), tuple(tuple(v) for v in basis))


def restricted_gram(gram: ExactMatrix, basis: Sequence[Sequence]) -> ExactMatrix:
    N = ExactMatrix([list(v) for v in basis]).T
    return N.T @ gram @ N


# -- verdicts ----------------------------------------------------------------


@dataclass
class SignatureVerdict:
    signature: tuple[int, int, int]
    expected: tuple[int, int, int]
    primitive_inertia: tuple[int, int, int]
    primitive_dim: int

    @property
    def ok(self) -> bool:
        return (
            self.signature == self.expected
            and self.primitive_inertia == (self.primitive_dim, 0, 0)
        )


def signature_check(c_list: Sequence, c_last, model: TorusModel) -> SignatureVerdict:
    """Signature of Q_Omega and positivity on P_{Omega ^ c_last} for Kahler data."""
    cs = [_require_kahler(c, model) for c in c_list]
    last = _require_kahler(c_last, model)
    form = q_form(cs, model)
    prim = primitive_subspace(form.omega.wedge(last))
    n = model.k**2
    return SignatureVerdict(
        inertia(form.gram),
        (n - 1, 1, 0),
        inertia(restricted_gram(form.gram, prim.basis)),
        len(prim.basis),
    )


def _require_kahler(c, model: TorusModel) -> CohomClass:
    if isinstance(c, CohomClass):
        return c
    return kahler_class(c, model)


def _require_nef(c, model: TorusModel) -> CohomClass:
    if isinstance(c, CohomClass):
        return c
    return nef_class(c, model)


@dataclass
class InequalityVerdict:
    q_aa: Fraction
    q_bb: Fraction
    q_ab: Fraction

    @property
    def holds(self) -> bool:
        return abs(self.q_aa) * abs(self.q_bb) <= self.q_ab**2

    @property
    def nef_signs_ok(self) -> bool:
        """For nef data all three values are <= 0."""
        return self.q_aa <= 0 and self.q_bb <= 0 and self.q_ab <= 0


def hr_inequality(c_list: Sequence, alpha, beta, model: TorusModel) -> InequalityVerdict:
    """|Q(a,a)| |Q(b,b)| <= Q(a,b)^2 for nef a, b and nef Omega-factors."""
    cs = [_require_nef(c, model) for c in c_list]
    a, b = _require_nef(alpha, model), _require_nef(beta, model)
    form = q_form(cs, model)
    return InequalityVerdict(form(a, a), form(b, b), form(a, b))


@dataclass
class PrimitiveLineWitness:
    coefficients: tuple[Fraction, Fraction]
    self_intersection: Fraction

    @property
    def ok(self) -> bool:
        return self.coefficients != (0, 0) and self.self_intersection <= 0


def primitive_line(c_list: Sequence, c_last, alpha, beta, model: TorusModel) -> PrimitiveLineWitness:
    """The point a*alpha + b*beta of span(alpha, beta) lying in P_{Omega'},
    together with integral((a alpha + b beta)^2 ^ Omega), which must be <= 0."""
    cs = [_as_class(c, model) for c in c_list]
    Omega = wedge_all(model, cs)
    Omega_prime = Omega.wedge(_as_class(c_last, model))
    al, be = _as_class(alpha, model), _as_class(beta, model)
    a = integrate(be.wedge(Omega_prime))
    b = -integrate(al.wedge(Omega_prime))
    v = al.scale(a) + be.scale(b)
    return PrimitiveLineWitness((a, b), integrate(v.wedge(v).wedge(Omega)))


# -- weak Hodge-Riemann classes ------------------------------------------------


def random_gaussian_matrix(rng: random.Random, rows: int, cols: int, bound: int = 2, real: bool = False) -> ExactMatrix:
    def entry():
        re = rng.randint(-bound, bound)
        im = 0 if real else rng.randint(-bound, bound)
        return GaussRat(re, im)

    return ExactMatrix([[entry() for _ in range(cols)] for _ in range(rows)])


def random_kahler_form(rng: random.Random, k: int, bound: int = 2, real: bool = False) -> ExactMatrix:
    """B^H B + I: exactly positive definite by construction."""
    B = random_gaussian_matrix(rng, k, k, bound, real)
    return B.H @ B + ExactMatrix.identity(k)


def random_nef_form(rng: random.Random, k: int, bound: int = 2, real: bool = False) -> ExactMatrix:
    """B^H B with B having 1..k random rows: positive semidefinite, often singular."""
    r = rng.randint(1, k)
    B = random_gaussian_matrix(rng, r, k, bound, real)
    return B.H @ B


def trial_rng(seed: int, trial: int) -> random.Random:
    return random.Random(seed * 1_000_003 + trial)


@dataclass
class WHRTrial:
    trial: int
    skipped: bool
    primitive_inertia: tuple[int, int, int] | None

    @property
    def ok(self) -> bool:
        return self.skipped or self.primitive_inertia[1] == 0


@dataclass
class WHRVerdict:
    p: int
    trials: list[WHRTrial] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(t.ok for t in self.trials)

    @property
    def skipped(self) -> int:
        return sum(t.skipped for t in self.trials)


def whr_verify(theta_factors: Sequence, model: TorusModel, trials: int = 20, seed: int = 0, c_tuples=None) -> WHRVerdict:
    """Check that Q_Omega is semi-positive on P_{Omega'} for Theta = product of
    the factors, Omega = Theta ^ c_1 ... c_{k-p-2}, Omega' = Omega ^ c_{k-p-1}.

    The c_j are random Kahler classes unless explicit (possibly nef) tuples
    are supplied; tuples with Omega' = 0 are skipped and reported.
    """
    factors = [_require_nef(c, model) for c in theta_factors]
    Theta = wedge_all(model, factors)
    p = Theta.p
    if p > model.k - 2:
        raise PreconditionError("Theta must have degree p <= k-2")
    if Theta.is_zero():
        raise PreconditionError("Theta is zero")
    needed = model.k - p - 1
    verdict = WHRVerdict(p)
    if c_tuples is None:
        c_tuples = []
        for t in range(trials):
            rng = trial_rng(seed, t)
            c_tuples.append([kahler_class(random_kahler_form(rng, model.k), model) for _ in range(needed)])
    for t, cs in enumerate(c_tuples):
        cs = [_require_nef(c, model) for c in cs]
        if len(cs) != needed:
            raise PreconditionError(f"each tuple needs {needed} classes")
        Omega = wedge_all(model, [Theta] + cs[:-1])
        Omega_prime = Omega.wedge(cs[-1])
        if all(x == 0 for x in linear_functional(Omega_prime)):
            verdict.trials.append(WHRTrial(t, True, None))
            continue
        prim = primitive_subspace(Omega_prime)
        gram = gram_matrix(Omega)
        verdict.trials.append(WHRTrial(t, False, inertia(restricted_gram(gram, prim.basis))))
    return verdict


# -- degeneracy witness ---------------------------------------------------------


@dataclass
class DegeneracyWitness:
    t: tuple[Fraction, Fraction]
    squares_vanish: bool
    per_tuple_t: list[Fraction | None]

    @property
    def per_tuple_consistent(self) -> bool:
        if self.t[0] == 0:
            return True
        ratio = self.t[1] / self.t[0]
        return all(x is None or x == ratio for x in self.per_tuple_t)


def hr_degeneracy(Theta: CohomClass, L1, L2, trials: int = 5, seed: int = 0) -> DegeneracyWitness:
    """(t1, t2) != 0 with Theta ^ (t1 L1 + t2 L2) numerically trivial, given
    Theta ^ L1 ^ L2 = 0.  Normalised so that the first nonzero entry is 1."""
    model = Theta.model
    L1, L2 = _as_class(L1, model), _as_class(L2, model)
    _check_real_11(L1)
    _check_real_11(L2)
    if Theta.p != Theta.q or Theta.p > model.k - 2:
        raise DegreeError("Theta must be a (p,p)-class with p <= k-2")
    if not Theta.wedge(L1).wedge(L2).is_zero():
        raise PreconditionError("Theta ^ L1 ^ L2 is not zero")
    squares = Theta.wedge(L1).wedge(L1).is_zero() and Theta.wedge(L2).wedge(L2).is_zero()
    u1 = numerical_profile(Theta.wedge(L1))
    u2 = numerical_profile(Theta.wedge(L2))
    null = nullspace(ExactMatrix([[a, b] for a, b in zip(u1, u2)]))
    if not null:
        raise ArithmeticError("no numerically trivial combination exists")
    t1, t2 = null[0]
    norm = t1 if t1 != 0 else t2
    t = (t1 / norm, t2 / norm)
    if not is_numerically_trivial(Theta.wedge(L1.scale(t[0]) + L2.scale(t[1]))):
        raise ArithmeticError("witness failed verification")
    # redundant per-tuple route: t is where L1 + t L2 meets P_{Omega'}
    per_tuple = []
    needed = model.k - Theta.p - 1
    for trial in range(trials):
        rng = trial_rng(seed, trial)
        cs = [kahler_class(random_kahler_form(rng, model.k), model) for _ in range(needed)]
        Omega_prime = wedge_all(model, [Theta] + cs)
        a1 = integrate(L1.wedge(Omega_prime))
        a2 = integrate(L2.wedge(Omega_prime))
        per_tuple.append(-a1 / a2 if a2 != 0 else None)
    return DegeneracyWitness(t, squares, per_tuple)


def is_nef_form(H: ExactMatrix) -> bool:
    return H.is_hermitian() and is_positive_semidefinite(H)


__all__ = [
    "ConeMembershipError",
    "DegeneracyWitness",
    "HRForm",
    "InequalityVerdict",
    "PreconditionError",
    "PrimitiveLineWitness",
    "PrimitiveSubspace",
    "SignatureVerdict",
    "WHRVerdict",
    "gram_matrix",
    "hr_degeneracy",
    "hr_inequality",
    "linear_functional",
    "primitive_line",
    "primitive_subspace",
    "q_form",
    "q_form_of",
    "random_kahler_form",
    "random_nef_form",
    "restricted_gram",
    "signature_check",
    "trial_rng",
    "whr_verify",
]
