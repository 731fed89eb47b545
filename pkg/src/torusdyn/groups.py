"""Finitely generated groups of torus automorphisms acting on cohomology.

Invariant chains.  If f(z) = A z and T = A^T has an eigenvector w with
T w = mu w, then f^* omega(w w^H) = |mu|^2 omega(w w^H).  More generally, for
an invariant flag w_1, ..., w_k common to all T_g (upper triangular in that
basis), the classes

    Theta_p = omega(w_1 w_1^H) ^ ... ^ omega(w_p w_p^H)

satisfy g^* Theta_p = chi_p(g) Theta_p with chi_p(g) = prod_{j<=p} |mu_j(g)|^2:
cross terms of T w_j with earlier w_i die against the factor omega(w_i w_i^H).
Each Theta_p is a product of nef classes, so it lies in the nef cone relative
to Theta_{p-1}.

Two exact routes produce the flag:

* ``rational``: every eigenvalue of every generator is a unit of Z[i]; a
  common flag is built by intersecting eigenspaces over Q(i).
* ``algebraic``: generators commute and a combination B = sum c_g T_g has
  squarefree characteristic polynomial S with only real roots.  Then
  T_g = q_g(B) for a polynomial q_g, the eigenvector is a column w(x) of
  adj(xI - B), and T_g w(x) = q_g(x) w(x) mod S is checked as a polynomial
  identity, so it holds at every root theta_j of S at once.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import polynomial as P
from .automorphism import TorusAut
from .cohomology import CohomClass, TorusModel, omega, real_basis_H11, real_coordinates, standard_kahler, wedge_all
from .degrees import dynamical_degree, zero_entropy
from .gaussian import GaussRat, abs2, conj
from .intervals import Interval
from .linalg import ExactMatrix, char_poly, inverse, nullspace, rank, solve

KAPPA = 0  # Kodaira dimension of a complex torus
ROOT_BITS = 200
UNIT_EIGENVALUES = (Fraction(1), Fraction(-1), GaussRat(0, 1), GaussRat(0, -1))


class UnsupportedGroup(ValueError):
    pass


class ChainError(ValueError):
    pass


# -- groups and words ------------------------------------------------------------


@dataclass
class MatrixGroup:
    generators: list[TorusAut]
    labels: list[str] = field(default_factory=list)
    name: str = ""

    def __post_init__(self):
        if not self.generators:
            raise ValueError("a group needs at least one generator")
        k = self.generators[0].k
        for g in self.generators:
            if g.k != k:
                raise ValueError("generators act on different tori")
            if g.is_identity():
                raise ValueError("the identity is not allowed as a generator")
        if not self.labels:
            self.labels = [f"g{i}" for i in range(len(self.generators))]

    @property
    def model(self) -> TorusModel:
        return self.generators[0].model

    @property
    def k(self) -> int:
        return self.model.k

    def is_commutative(self) -> bool:
        gs = [g.A for g in self.generators]
        return all(a @ b == b @ a for a, b in itertools.combinations(gs, 2))

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "model": {"k": self.k},
            "generators": [{"label": l, **g.to_dict()} for l, g in zip(self.labels, self.generators)],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "MatrixGroup":
        gens, labels = [], []
        k = data.get("model", {}).get("k")
        for i, g in enumerate(data["generators"]):
            spec = dict(g)
            if k is not None:
                spec.setdefault("model", {"k": k})
            gens.append(TorusAut.from_dict(spec))
            labels.append(g.get("label", f"g{i}"))
        return cls(gens, labels, data.get("name", ""))


Letter = tuple[int, int]  # (generator index, +1 or -1)


def reduced_words(n_gens: int, max_len: int) -> list[tuple[Letter, ...]]:
    """Freely reduced words of length 1..max_len over generators and inverses."""
    letters = [(i, s) for i in range(n_gens) for s in (1, -1)]
    out: list[tuple[Letter, ...]] = []
    frontier: list[tuple[Letter, ...]] = [()]
    for _ in range(max_len):
        nxt = []
        for w in frontier:
            for a in letters:
                if w and w[-1] == (a[0], -a[1]):
                    continue
                nxt.append(w + (a,))
        out += nxt
        frontier = nxt
    return out


def word_label(word: Sequence[Letter], labels: Sequence[str]) -> str:
    if not word:
        return "e"
    return "".join(labels[i] + ("" if s == 1 else "^-1") for i, s in word)


def exponent_vector(word: Sequence[Letter], n_gens: int) -> tuple[int, ...]:
    e = [0] * n_gens
    for i, s in word:
        e[i] += s
    return tuple(e)


class WordEvaluator:
    """Caches generator inverses and word products."""

    def __init__(self, G: MatrixGroup):
        self.G = G
        self.mats = {(i, 1): g.A for i, g in enumerate(G.generators)}
        for i, g in enumerate(G.generators):
            self.mats[(i, -1)] = inverse(g.A)
        self.cache: dict = {(): ExactMatrix.identity(G.k)}

    def matrix(self, word: Sequence[Letter]) -> ExactMatrix:
        word = tuple(word)
        if word not in self.cache:
            self.cache[word] = self.matrix(word[:-1]) @ self.mats[word[-1]]
        return self.cache[word]

    def aut(self, word: Sequence[Letter]) -> TorusAut:
        return TorusAut(self.matrix(word), self.G.model)


# -- polynomial helpers over Q -----------------------------------------------------


def _poly_rem(p, S):
    return P.rem(p, S) if len(p) >= len(S) else P.trim(p)


def _poly_matrix_apply(T: ExactMatrix, vec: list[list]) -> list[list]:
    n = T.nrows
    out = []
    for i in range(n):
        acc: list = []
        for j in range(n):
            if T[i, j] != 0:
                acc = P.add(acc, P.scale(vec[j], T[i, j]))
        out.append(acc)
    return out


def _adjugate_columns(B: ExactMatrix, S: list) -> list[list[list]]:
    """adj(xI - B) as a k x k matrix of polynomials (coefficient lists).

    adj(xI - B) = sum_m x^(k-1-m) M_m with M_0 = I and M_m = B M_{m-1} + s_{k-m} I.
    """
    k = B.nrows
    Ms = [ExactMatrix.identity(k)]
    for m in range(1, k):
        Ms.append(B @ Ms[-1] + ExactMatrix.identity(k).scale(S[k - m]))
    adj = [[[Fraction(0)] * k for _ in range(k)] for _ in range(k)]
    for m, M in enumerate(Ms):
        deg = k - 1 - m
        for i in range(k):
            for j in range(k):
                adj[i][j][deg] = M[i, j]
    return [[P.trim(adj[i][j]) for i in range(k)] for j in range(k)]  # columns


@dataclass(frozen=True)
class RealRoot:
    """A root of a squarefree real polynomial inside (lo, hi]."""

    lo: Fraction
    hi: Fraction

    @property
    def interval(self) -> Interval:
        return Interval(self.lo, self.hi)

    def is_root_of(self, g: list, S: list) -> bool:
        """Exact: does the root of S in (lo, hi] also annihilate g?"""
        if self.lo == self.hi:
            return not g or P.evaluate(g, self.lo) == 0
        d = P.gcd(S, g) if g else P.monic(S)
        if len(d) <= 1:
            return False
        return P.count_real_roots(d, self.lo, self.hi) == 1


def _eval_interval(p: Sequence, x: Interval) -> Interval:
    acc = Interval.point(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


# -- invariant flags -----------------------------------------------------------------


@dataclass
class FlagData:
    """Per-root eigen-data for the algebraic route."""

    B: ExactMatrix
    S: list
    roots: list[RealRoot]
    vectors: list[list[list]]  # w_j(x) as polynomial vectors


def _unit_split(T: ExactMatrix) -> bool:
    """Does the characteristic polynomial factor into (x - u), u in {1,-1,i,-i}?"""
    p = char_poly(T)
    for u in UNIT_EIGENVALUES:
        while len(p) > 1:
            q, r = P.divmod_poly(p, [-u, Fraction(1)])
            if r:
                break
            p = q
    return len(p) == 1


def _common_eigenvector(mats: list[ExactMatrix]):
    n = mats[0].nrows
    for combo in itertools.product(UNIT_EIGENVALUES, repeat=len(mats)):
        rows = []
        for T, mu in zip(mats, combo):
            D = T - ExactMatrix.identity(n).scale(mu)
            rows += [list(r) for r in D.rows]
        null = nullspace(ExactMatrix(rows))
        if null:
            return null[0], combo
    return None, None


def _rational_flag(mats: list[ExactMatrix]) -> list[list]:
    """A common invariant flag over Q(i): columns w_1..w_n with
    span(w_1..w_j) invariant under every matrix."""
    n = mats[0].nrows
    v, _ = _common_eigenvector(mats)
    if v is None:
        raise UnsupportedGroup("no common eigenvector over Q(i)")
    if n == 1:
        return [v]
    cols = [list(v)]
    for i in range(n):
        e = [Fraction(0)] * n
        e[i] = Fraction(1)
        if rank(ExactMatrix(cols + [e]).T) == len(cols) + 1:
            cols.append(e)
        if len(cols) == n:
            break
    Pm = ExactMatrix(cols).T
    Pinv = inverse(Pm)
    subs = []
    for T in mats:
        C = Pinv @ T @ Pm
        if any(C[i, 0] != 0 for i in range(1, n)):
            raise ChainError("eigenvector is not invariant")
        subs.append(C.submatrix(range(1, n), range(1, n)))
    rest = _rational_flag(subs)
    lifted = [Pm.apply([Fraction(0)] + list(u)) for u in rest]
    return [list(v)] + lifted


def _generic_combination(mats: list[ExactMatrix]):
    """B = sum c_g T_g with squarefree real-rooted characteristic polynomial."""
    r = len(mats)
    for scale in range(1, 6):
        for c in itertools.product(range(-scale, scale + 1), repeat=r):
            if max(abs(x) for x in c) != scale and scale > 1:
                continue
            if not any(c):
                continue
            B = ExactMatrix.zeros(mats[0].nrows)
            for ci, T in zip(c, mats):
                if ci:
                    B = B + T.scale(ci)
            if not B.is_real():
                continue
            S = char_poly(B)
            if len(P.gcd(S, P.derivative(S))) > 1:
                continue
            if P.count_real_roots(S) != len(S) - 1:
                continue
            return B, S, c
    return None


def _polynomial_in(B: ExactMatrix, T: ExactMatrix) -> list | None:
    """q with T = q(B), or None."""
    k = B.nrows
    powers = [ExactMatrix.identity(k)]
    for _ in range(1, k):
        powers.append(powers[-1] @ B)
    rows = []
    rhs = []
    for i in range(k):
        for j in range(k):
            rows.append([Pw[i, j] for Pw in powers])
            rhs.append(T[i, j])
    q = solve(ExactMatrix(rows), rhs)
    return P.trim(q) if q is not None else None


@dataclass
class InvariantChain:
    """Invariant flag, classes Theta_p and characters for a group."""

    group: MatrixGroup
    route: str
    order_key: str
    flag: list[list] | None = None  # rational route: exact vectors
    data: FlagData | None = None  # algebraic route
    _char_cache: dict = field(default_factory=dict, repr=False)

    @property
    def k(self) -> int:
        return self.group.k

    # -- eigenvalues of an element along the flag ---------------------------------

    def eigen_moduli_squared(self, A: ExactMatrix) -> list[Interval]:
        """|mu_j(g)|^2 along the flag, for the automorphism with matrix A."""
        key = ("mod", A)
        if key in self._char_cache:
            return self._char_cache[key]
        T = A.T
        if self.route == "rational":
            W = ExactMatrix(self.flag).T
            C = inverse(W) @ T @ W
            for i in range(self.k):
                for j in range(i):
                    if C[i, j] != 0:
                        raise ChainError("element does not preserve the flag")
            out = [Interval.point(abs2(C[j, j])) for j in range(self.k)]
        else:
            q = self._poly_of(T)
            out = []
            for root in self.data.roots:
                v = _eval_interval(q, root.interval)
                out.append(v * v)
        self._char_cache[key] = out
        return out

    def _poly_of(self, T: ExactMatrix) -> list:
        key = ("poly", T)
        if key not in self._char_cache:
            self._char_cache[key] = self._solve_poly(T)
        return self._char_cache[key]

    def _solve_poly(self, T: ExactMatrix) -> list:
        d = self.data
        q = _polynomial_in(d.B, T)
        if q is None:
            raise ChainError("element is not a polynomial in the generic combination")
        for w in d.vectors:
            lhs = _poly_matrix_apply(T, w)
            for a, comp in zip(lhs, w):
                if _poly_rem(P.sub(a, P.mul(q, comp)), d.S):
                    raise ChainError("eigen-identity fails modulo S")
        return q

    def unit_modulus_exact(self, A: ExactMatrix) -> list[bool]:
        """Exact test of |mu_j(g)| = 1 for each j."""
        T = A.T
        if self.route == "rational":
            return [x.lo == 1 for x in self.eigen_moduli_squared(A)]
        q = self._poly_of(T)
        S = self.data.S
        out = []
        for root in self.data.roots:
            one = root.is_root_of(P.sub(q, [Fraction(1)]), S) or root.is_root_of(P.add(q, [Fraction(1)]), S)
            out.append(one)
        return out

    def multiplicative_exact(self, A: ExactMatrix, B: ExactMatrix) -> bool:
        """mu_j(AB) = mu_j(A) mu_j(B) exactly: q_{AB} = q_A q_B mod S, or the
        diagonal of the triangular form multiplies."""
        if self.route == "rational":
            W = ExactMatrix(self.flag).T
            Wi = inverse(W)
            da, db, dab = (Wi @ M.T @ W for M in (A, B, A @ B))
            return all(dab[j, j] == da[j, j] * db[j, j] for j in range(self.k))
        qa, qb, qab = self._poly_of(A.T), self._poly_of(B.T), self._poly_of((A @ B).T)
        return not _poly_rem(P.sub(qab, P.mul(qa, qb)), self.data.S)

    def characters(self, A: ExactMatrix) -> list[Interval]:
        """chi_0 .. chi_k of the automorphism with matrix A."""
        mods = self.eigen_moduli_squared(A)
        out = [Interval.point(1)]
        for m in mods:
            out.append(out[-1] * m)
        return out

    def phi(self, A: ExactMatrix) -> list[Interval]:
        """(log chi_{kappa+1}, ..., log chi_{k-1})."""
        chis = self.characters(A)
        return [_safe_log(chis[p]) for p in range(KAPPA + 1, self.k)]

    def phi_exactly_zero(self, A: ExactMatrix) -> bool:
        """phi(g) = 0 exactly: then |mu_1| = ... = |mu_{k-1}| = 1, and |det| = 1
        forces |mu_k| = 1 too."""
        return all(self.unit_modulus_exact(A))

    # -- classes -----------------------------------------------------------------

    def approximate_vectors(self, bits: int = 60) -> list[list]:
        """Rational approximations of w_1..w_k (exact on the rational route)."""
        if self.route == "rational":
            return [list(v) for v in self.flag]
        out = []
        for root, w in zip(self.data.roots, self.data.vectors):
            x = root.interval.mid
            out.append([P.evaluate(c, x) if c else Fraction(0) for c in w])
        return out

    def theta(self, p: int, bits: int = 60) -> CohomClass:
        """Theta_p; exact on the rational route, a rational approximation otherwise."""
        model = self.group.model
        vecs = self.approximate_vectors(bits)
        factors = []
        for w in vecs[:p]:
            H = ExactMatrix([[a * conj(b) for b in w] for a in w])
            factors.append(omega(H, model))
        return wedge_all(model, factors)

    def verify_exact_invariance(self) -> bool:
        """g^* Theta_p = chi_p(g) Theta_p for generators, as exact class identities
        (rational route) or exact polynomial identities modulo S (algebraic)."""
        for g in self.group.generators:
            if self.route == "rational":
                chis = self.characters(g.A)
                for p in range(1, self.k + 1):
                    th = self.theta(p)
                    if g.pullback(th) != th.scale(chis[p].lo):
                        return False
            else:
                self._poly_of(g.A.T)
        return True


def _safe_log(x: Interval) -> Interval:
    if x.lo == 1 and x.hi == 1:
        return Interval.point(0)
    return x.log()


def _algebraic_flag(G: MatrixGroup) -> FlagData:
    mats = [g.A.T for g in G.generators]
    found = _generic_combination(mats)
    if found is None:
        raise UnsupportedGroup("no combination of the generators has simple real spectrum")
    B, S, _ = found
    S = P.monic(S)
    cols = _adjugate_columns(B, S)
    width = Fraction(1, 1 << ROOT_BITS)
    roots = [RealRoot(*P.refine_real_root(S, lo, hi, width)) for lo, hi in P.isolate_real_roots(S)]
    vectors = []
    for root in roots:
        chosen = None
        for col in cols:
            if any(c and not root.is_root_of(c, S) for c in col):
                chosen = col
                break
        if chosen is None:
            raise ChainError("adjugate vanishes at a simple root")
        vectors.append(chosen)
    # B w(x) = x w(x) mod S for every chosen column
    for w in vectors:
        lhs = _poly_matrix_apply(B, w)
        for a, comp in zip(lhs, w):
            if _poly_rem(P.sub(a, P.mul([Fraction(0), Fraction(1)], comp)), S):
                raise ChainError("adjugate column is not an eigenvector")
    return FlagData(B, S, roots, vectors)


def invariant_chain(G: MatrixGroup) -> InvariantChain:
    """Build Theta_0..Theta_k with characters; roots ordered so that the
    first generator's eigenvalue moduli decrease (Perron-Frobenius first)."""
    mats = [g.A.T for g in G.generators]
    if all(_unit_split(T) for T in mats):
        flag = _rational_flag(mats)
        return InvariantChain(G, "rational", "flag", flag=flag)
    if not G.is_commutative():
        raise UnsupportedGroup("non-commuting group without unit eigenvalues: finite-index passage is not implemented")
    data = _algebraic_flag(G)
    chain = InvariantChain(G, "algebraic", "first-generator modulus", data=data)
    keys = []
    for j in range(len(data.roots)):
        key = []
        for g in G.generators:
            key.append(-chain.eigen_moduli_squared(g.A)[j].mid)
        keys.append((tuple(key), data.roots[j].lo))
    order = sorted(range(len(data.roots)), key=lambda j: keys[j])
    data.roots = [data.roots[j] for j in order]
    data.vectors = [data.vectors[j] for j in order]
    chain._char_cache.clear()
    return chain


@dataclass
class EigenRay:
    vector: list
    characters: list[Interval]
    cls: CohomClass
    exact: bool


def common_eigenray(G: MatrixGroup | None, model: TorusModel | None = None) -> EigenRay:
    """A nonzero nef class v with g^* v = lambda_g v for every generator.

    For the identity group (``G`` None) the standard Kahler class is returned.
    """
    if G is None:
        return EigenRay([], [], standard_kahler(model), True)
    chain = invariant_chain(G)
    w = chain.approximate_vectors()[0]
    chars = [chain.characters(g.A)[1] for g in G.generators]
    return EigenRay(w, chars, chain.theta(1), chain.route == "rational")


# -- phi, rank and the checks built on it ----------------------------------------------


def sup_norm(v: Sequence[Interval]) -> Interval:
    out = Interval.point(0)
    for x in v:
        out = out.max(x.abs())
    return out


@dataclass
class WordReport:
    label: str
    exponents: tuple[int, ...]
    phi: list[Interval]
    phi_zero_exact: bool
    phi_nonzero_certified: bool
    zero_entropy: bool
    half_log_dk1: Interval
    homomorphism_ok: bool
    multiplicative_ok: bool = True

    @property
    def phi_norm(self) -> Interval:
        return sup_norm(self.phi)

    @property
    def bound_ok(self) -> bool:
        """||phi|| >= (1/2) log d_{k-1}, not refuted by the enclosures."""
        return self.phi_norm.hi >= self.half_log_dk1.lo

    @property
    def kernel_ok(self) -> bool:
        if not (self.phi_zero_exact or self.phi_nonzero_certified):
            return False
        return self.phi_zero_exact == self.zero_entropy


@dataclass
class PhiImage:
    words: list[WordReport]
    generator_phi: list[list[Interval]]
    rank_lower: int
    rank_upper: int
    relations: list[tuple[int, ...]]
    discreteness_margin: Interval | None

    @property
    def rank(self) -> int | None:
        return self.rank_lower if self.rank_lower == self.rank_upper else None

    @property
    def certified(self) -> bool:
        return self.rank is not None


def _certified_minor_rank(rows: list[list[Interval]]) -> int:
    if not rows or not rows[0]:
        return 0
    n, m = len(rows), len(rows[0])
    from .units import _interval_det

    for size in range(min(n, m), 0, -1):
        for rs in itertools.combinations(range(n), size):
            for cs in itertools.combinations(range(m), size):
                if _interval_det([[rows[r][c] for c in cs] for r in rs]).excludes_zero():
                    return size
    return 0


def _integer_relations(vectors: list[list[Interval]]) -> list[tuple[int, ...]]:
    """Candidate integer relations among the phi vectors (found numerically)."""
    if not vectors or not vectors[0]:
        return [tuple(1 if i == j else 0 for i in range(len(vectors))) for j in range(len(vectors))]
    M = np.array([[float(x.mid) for x in v] for v in vectors]).T
    _, s, vh = np.linalg.svd(M)
    tol = 1e-9 * max(1.0, float(s.max()) if s.size else 1.0)
    null = [vh[i] for i in range(vh.shape[0]) if i >= len(s) or s[i] < tol]
    out = []
    for v in null:
        big = max(abs(v))
        fr = [Fraction(float(x / big)).limit_denominator(60) for x in v]
        den = 1
        for f in fr:
            den = den * f.denominator // np.gcd(den, f.denominator)
        out.append(tuple(int(f * den) for f in fr))
    return out


def phi_map(G: MatrixGroup, chain: InvariantChain, word_cap: int = 3) -> PhiImage:
    """phi on every reduced word up to ``word_cap``, with the lower bound on its norm,
    kernel consistency, homomorphism check and a certified rank."""
    ev = WordEvaluator(G)
    gen_phi = [chain.phi(g.A) for g in G.generators]
    reports = []
    for word in [()] + reduced_words(len(G.generators), word_cap):
        A = ev.matrix(word)
        e = exponent_vector(word, len(G.generators))
        ph = chain.phi(A)
        zero_exact = chain.phi_exactly_zero(A)
        nonzero = any(x.excludes_zero() for x in ph)
        f = TorusAut(A, G.model)
        z = zero_entropy(f)
        d = dynamical_degree(f, G.k - 1)
        half = d.log() * Fraction(1, 2)
        predicted = [Interval.point(0)] * len(ph)
        for ei, gp in zip(e, gen_phi):
            predicted = [a + gp_c * ei for a, gp_c in zip(predicted, gp)]
        hom = all(a.overlaps(b) for a, b in zip(ph, predicted))
        mult = True
        if word:
            mult = chain.multiplicative_exact(ev.matrix(word[:-1]), ev.mats[word[-1]])
        reports.append(WordReport(word_label(word, G.labels), e, ph, zero_exact, nonzero, z, half, hom, mult))
    lower = _certified_minor_rank(gen_phi)
    relations = []
    for i, g in enumerate(G.generators):
        if chain.phi_exactly_zero(g.A):
            relations.append(tuple(1 if j == i else 0 for j in range(len(G.generators))))
    for rel in _integer_relations(gen_phi):
        if not any(rel):
            continue
        A = ExactMatrix.identity(G.k)
        for gi, n in enumerate(rel):
            if n:
                A = A @ (G.generators[gi].A ** n)
        if chain.phi_exactly_zero(A):
            relations.append(rel)
    rel_rank = rank(ExactMatrix([list(r) for r in relations])) if relations else 0
    upper = min(len(G.generators) - rel_rank, G.k - 1 - KAPPA)
    nonzero_norms = [r.phi_norm for r in reports if r.phi_nonzero_certified]
    margin = None
    if nonzero_norms:
        margin = nonzero_norms[0]
        for x in nonzero_norms[1:]:
            margin = Interval(min(margin.lo, x.lo), min(margin.hi, x.hi))
    return PhiImage(reports, gen_phi, lower, upper, relations, margin)


def rank_bound_check(image: PhiImage, k: int) -> bool:
    return image.rank_upper <= k - KAPPA - 1


def zero_entropy_kernel_check(image: PhiImage) -> bool:
    return all(r.kernel_ok for r in image.words)


def phi_bound_check(image: PhiImage) -> bool:
    return all(r.bound_ok for r in image.words)


# -- ping-pong ------------------------------------------------------------------------


def real_h11_action(f: TorusAut) -> ExactMatrix:
    """Matrix of f^* on H^{1,1}(X, R) in the real basis coordinates."""
    cols = [real_coordinates(f.pullback(b)) for b in real_basis_H11(f.model)]
    return ExactMatrix(cols).T


def _approx_eigenbasis(R: ExactMatrix, denom: int = 10**8):
    """Rational approximation of a real eigenbasis, dominant column first and
    the smallest-modulus column last; None if either end is not a simple real
    eigenvalue."""
    A = np.array([[float(x) for x in row] for row in R.rows])
    vals, vecs = np.linalg.eig(A)
    order = np.argsort(-np.abs(vals))
    vals, vecs = vals[order], vecs[:, order]
    mods = np.abs(vals)
    if len(vals) < 2 or mods[0] <= mods[1] * (1 + 1e-9) or mods[-1] >= mods[-2] * (1 - 1e-9):
        return None
    if abs(vals[0].imag) > 1e-12 or abs(vals[-1].imag) > 1e-12:
        return None
    cols = []
    i = 0
    while i < len(vals):
        v = vecs[:, i]
        if abs(vals[i].imag) < 1e-12:
            cols.append(v.real / np.max(np.abs(v.real)))
            i += 1
        else:
            cols.append(v.real / np.max(np.abs(v)))
            cols.append(v.imag / np.max(np.abs(v)))
            i += 2
    E = ExactMatrix([[Fraction(float(c[r])).limit_denominator(denom) for c in cols] for r in range(len(vals))])
    if rank(E) != len(vals):
        return None
    return E


def _cone_vertices(m: int, idx: int, delta: Fraction) -> list[list[Fraction]]:
    out = []
    for signs in itertools.product((-1, 1), repeat=m - 1):
        v = [delta * s for s in signs]
        v.insert(idx, Fraction(1))
        out.append(v)
    return out


def _maps_into(images: list[list], idx: int, delta: Fraction) -> bool:
    """All points (already in target coordinates) lie in one half of the open
    double cone |c_j| < delta |c_idx|."""
    signs = set()
    for c in images:
        lead = c[idx]
        if lead == 0:
            return False
        signs.add(lead > 0)
        if any(abs(x) >= delta * abs(lead) for j, x in enumerate(c) if j != idx):
            return False
    return len(signs) == 1


def _disjoint(points: list[list], idx: int, delta: Fraction) -> bool:
    """The convex cone over ``points`` (target coordinates) misses the double
    cone |c_j| <= delta |c_idx|: some c_j beats delta |c_idx| with fixed sign."""
    m = len(points[0])
    for j in range(m):
        if j == idx:
            continue
        for s in (1, -1):
            if all(s * c[j] - delta * c[idx] > 0 and s * c[j] + delta * c[idx] > 0 for c in points):
                return True
    return False


@dataclass
class PingPongCertificate:
    delta: Fraction
    N: int
    basis_g: ExactMatrix
    basis_h: ExactMatrix


def ping_pong_certificate(g: TorusAut, h: TorusAut, n_max: int = 10) -> PingPongCertificate | None:
    """Disjoint cones U_g, U_h in H^{1,1}(X, R) with g^n(U_h) in U_g and
    h^n(U_g) in U_h for |n| >= N, so <g^N, h^N> is free.

    U_g is the union of two double cones around the dominant and the
    weakest eigen-directions of g, written in a rational approximate
    eigenbasis; every inclusion is checked exactly on the cone vertices, and
    forward invariance of the attracting cones extends it to all |n| >= N.
    """
    if g == h:
        return None
    Rg, Rh = real_h11_action(g), real_h11_action(h)
    Eg, Eh = _approx_eigenbasis(Rg), _approx_eigenbasis(Rh)
    if Eg is None or Eh is None:
        return None
    m = Rg.nrows
    top, bot = 0, m - 1
    Egi, Ehi = inverse(Eg), inverse(Eh)
    Rgi, Rhi = inverse(Rg), inverse(Rh)
    for delta in (Fraction(1, 2**j) for j in range(1, 11)):
        verts = {(which, idx): [E.apply(v) for v in _cone_vertices(m, idx, delta)]
                 for which, E in (("g", Eg), ("h", Eh)) for idx in (top, bot)}

        def in_coords(Einv, pts):
            return [Einv.apply(p) for p in pts]

        # attracting cones are forward invariant
        ok = (
            _maps_into(in_coords(Egi, [Rg.apply(p) for p in verts[("g", top)]]), top, delta)
            and _maps_into(in_coords(Egi, [Rgi.apply(p) for p in verts[("g", bot)]]), bot, delta)
            and _maps_into(in_coords(Ehi, [Rh.apply(p) for p in verts[("h", top)]]), top, delta)
            and _maps_into(in_coords(Ehi, [Rhi.apply(p) for p in verts[("h", bot)]]), bot, delta)
        )
        if not ok:
            continue
        disjoint = all(
            _disjoint(in_coords(Egi, verts[("h", ih)]), ig, delta)
            for ig in (top, bot)
            for ih in (top, bot)
        )
        if not disjoint:
            continue
        for N in range(1, n_max + 1):
            gN, gmN = Rg**N, Rgi**N
            hN, hmN = Rh**N, Rhi**N
            good = all(
                _maps_into(in_coords(Egi, [gN.apply(p) for p in verts[("h", ih)]]), top, delta)
                and _maps_into(in_coords(Egi, [gmN.apply(p) for p in verts[("h", ih)]]), bot, delta)
                and _maps_into(in_coords(Ehi, [hN.apply(p) for p in verts[("g", ig)]]), top, delta)
                and _maps_into(in_coords(Ehi, [hmN.apply(p) for p in verts[("g", ig)]]), bot, delta)
                for ih in (top, bot)
                for ig in (top, bot)
            )
            if good:
                return PingPongCertificate(delta, N, Eg, Eh)
    return None


# -- derived series -----------------------------------------------------------------


@dataclass
class DerivedSeriesReport:
    status: str  # "solvable" or "inconclusive"
    depth: int | None
    level_sizes: list[int]
    truncated: bool
    free_subgroup: PingPongCertificate | None = None


def _commutator(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    return a @ b @ inverse(a) @ inverse(b)


def derived_series_probe(G: MatrixGroup, depth: int = 4, word_cap: int = 2, gen_cap: int = 24) -> DerivedSeriesReport:
    """Iterate G^(i+1) = [G^(i), G^(i)] on explicit generators: commutators of
    elements given by words of length <= word_cap in the current generators.

    Reaching only the identity proves solvability of the probed subgroups up
    to that cap; it is reported as "solvable" at that depth.
    """
    k = G.k
    ident = ExactMatrix.identity(k)
    level = [g.A for g in G.generators]
    sizes = [len(level)]
    truncated = False
    for d in range(1, depth + 1):
        elements: list[ExactMatrix] = []
        seen = set()
        inv = [inverse(a) for a in level]
        mats = {(i, 1): a for i, a in enumerate(level)}
        mats.update({(i, -1): b for i, b in enumerate(inv)})
        for word in reduced_words(len(level), word_cap):
            M = ident
            for letter in word:
                M = M @ mats[letter]
            if M != ident and M not in seen:
                seen.add(M)
                elements.append(M)
        new: list[ExactMatrix] = []
        new_seen = set()
        for a, b in itertools.combinations(elements, 2):
            c = _commutator(a, b)
            if c != ident and c not in new_seen:
                new_seen.add(c)
                new.append(c)
                if len(new) >= gen_cap:
                    truncated = True
                    break
        sizes.append(len(new))
        if not new:
            return DerivedSeriesReport("solvable", d, sizes, truncated)
        level = new
    cert = None
    gens = G.generators
    for a, b in itertools.combinations(gens, 2):
        if not zero_entropy(a) and not zero_entropy(b):
            cert = ping_pong_certificate(a, b)
            if cert:
                break
    return DerivedSeriesReport("inconclusive", None, sizes, truncated, cert)


__all__ = [
    "ChainError",
    "DerivedSeriesReport",
    "EigenRay",
    "InvariantChain",
    "KAPPA",
    "MatrixGroup",
    "PhiImage",
    "PingPongCertificate",
    "UnsupportedGroup",
    "WordEvaluator",
    "WordReport",
    "common_eigenray",
    "derived_series_probe",
    "exponent_vector",
    "invariant_chain",
    "phi_bound_check",
    "phi_map",
    "ping_pong_certificate",
    "rank_bound_check",
    "real_h11_action",
    "reduced_words",
    "word_label",
    "zero_entropy_kernel_check",
]
