"""Dynamical degrees, algebraic entropy and relative degrees."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from . import polynomial as P
from .automorphism import TorusAut
from .cohomology import CohomClass, integrate, kahler_class
from .intervals import DEFAULT_BITS, Interval
from .linalg import ExactMatrix, as_matrix
from .spectral import DEFAULT_REL_TOL, RadiusBound, root_moduli, spectral_radius

DIRECT_MAX_DIM = 9


class StructureError(ValueError):
    pass


@dataclass(frozen=True)
class RawModel:
    """User-supplied matrices of f^* on H^{p,p}, p = 0..k (unverified)."""

    matrices: tuple[ExactMatrix, ...]

    def __post_init__(self):
        ms = tuple(as_matrix(m) for m in self.matrices)
        object.__setattr__(self, "matrices", ms)
        if len(ms) < 2:
            raise ValueError("a raw model needs at least H^{0,0} and H^{k,k}")
        for m in ms:
            if not m.is_square:
                raise ValueError("raw model matrices must be square")
        for end in (ms[0], ms[-1]):
            if end.shape != (1, 1) or end[0, 0] != 1:
                raise ValueError("the H^{0,0} and H^{k,k} actions must be [1]")

    @property
    def k(self) -> int:
        return len(self.matrices) - 1


def _moduli_degree(f: TorusAut, p: int, rel_tol) -> RadiusBound:
    """d_p from the eigenvalue moduli of A: the square of the product of the
    p largest moduli (eigenvalues of Lambda^p A (x) conj Lambda^p A)."""
    k = f.k
    tol = Fraction(rel_tol) / (4 * k)
    mods = root_moduli(f.char_poly, tol)
    lo = hi = Fraction(1)
    for iv in mods[:p]:
        lo *= iv.lo
        hi *= iv.hi
    lo, hi = lo * lo, hi * hi
    return RadiusBound(lo, hi, False, hi - lo <= 2 * Fraction(rel_tol) * lo)


def zero_entropy(f: TorusAut | RawModel) -> bool:
    """Exact test that every eigenvalue of the cohomology action has modulus 1."""
    if isinstance(f, RawModel):
        return spectral_radius(f.matrices[1]).exactly_one if f.k >= 1 else True
    return P.is_kronecker_unit_radius(f.char_poly)


def is_positive_entropy(f: TorusAut | RawModel) -> bool:
    return not zero_entropy(f)


def dynamical_degree(f: TorusAut | RawModel, p: int, rel_tol=DEFAULT_REL_TOL, route: str = "auto") -> RadiusBound:
    """Certified spectral radius of f^* on H^{p,p}.

    ``route`` is ``"direct"`` (radius of the H^{p,p} matrix), ``"moduli"``
    (eigenvalue moduli of A) or ``"auto"`` (direct for small H^{p,p}).
    """
    k = f.k
    if not 0 <= p <= k:
        raise ValueError(f"p={p} outside 0..{k}")
    if isinstance(f, RawModel):
        return spectral_radius(f.matrices[p], rel_tol)
    if p in (0, k):
        return RadiusBound.one()
    if route == "auto":
        route = "direct" if comb(k, p) ** 2 <= DIRECT_MAX_DIM else "moduli"
    if route == "direct":
        return spectral_radius(f.action(p, p), rel_tol)
    if route != "moduli":
        raise ValueError(f"unknown route {route!r}")
    if zero_entropy(f):
        return RadiusBound.one()
    return _moduli_degree(f, p, rel_tol)


def rho_pq(f: TorusAut, p: int, q: int, rel_tol=DEFAULT_REL_TOL) -> RadiusBound:
    """Certified spectral radius of f^* on H^{p,q}."""
    return spectral_radius(f.action(p, q), rel_tol)


def _sqrt_upper(x: Fraction, bits: int = DEFAULT_BITS) -> Fraction:
    return Interval.point(x).sqrt(bits).hi


def rho_bound_holds(rho: RadiusBound, dp: RadiusBound, dq: RadiusBound) -> bool:
    """rho_{p,q} <= sqrt(d_p d_q) is consistent with the certified enclosures
    (equality cases such as (p, q) = (1, 0) are not refutable, and pass)."""
    return rho.lo <= _sqrt_upper(dp.hi * dq.hi)


def _compare(a: RadiusBound, b: RadiusBound) -> str:
    if a.exactly_one and b.exactly_one:
        return "="
    if a.hi < b.lo:
        return "<"
    if a.lo > b.hi:
        return ">"
    return "="


def is_unimodal(degrees: Sequence[RadiusBound]) -> bool:
    """Increasing, then flat, then decreasing (with overlap read as equality)."""
    steps = [_compare(a, b) for a, b in zip(degrees, degrees[1:])]
    phase = 0
    order = {"<": 0, "=": 1, ">": 2}
    for s in steps:
        if order[s] < phase:
            return False
        phase = order[s]
    return True


def is_log_concave(degrees: Sequence[RadiusBound]) -> bool:
    """d_p^2 >= d_{p-1} d_{p+1} is not refuted by the enclosures."""
    return all(
        degrees[p].hi ** 2 >= degrees[p - 1].lo * degrees[p + 1].lo for p in range(1, len(degrees) - 1)
    )


@dataclass
class DegreeProfile:
    degrees: list[RadiusBound]
    h_a: Interval
    positive_entropy: bool
    log_concave: bool
    unimodal: bool
    unverified_model: bool = False
    rho: dict | None = None

    @property
    def k(self) -> int:
        return len(self.degrees) - 1

    def to_dict(self, digits: int = 20) -> dict:
        out = {
            "k": self.k,
            "degrees": [radius_report(d, digits) for d in self.degrees],
            "h_a": self.h_a.decimal_pair(digits),
            "positive_entropy": self.positive_entropy,
            "log_concave": self.log_concave,
            "unimodal": self.unimodal,
            "unverified_model": self.unverified_model,
        }
        if self.rho is not None:
            out["rho"] = {f"{p},{q}": entry for (p, q), entry in sorted(self.rho.items())}
        return out


def radius_report(r: RadiusBound, digits: int = 20) -> dict:
    return {
        "interval": r.interval.decimal_pair(digits),
        "exactly_one": r.exactly_one,
        "certified_tolerance_met": r.tight,
    }


def algebraic_entropy(degrees: Sequence[RadiusBound]) -> Interval:
    logs = [d.log() for d in degrees]
    out = logs[0]
    for iv in logs[1:]:
        out = out.max(iv)
    return out


def degree_profile(f: TorusAut | RawModel, rel_tol=DEFAULT_REL_TOL, with_rho: bool = False) -> DegreeProfile:
    degrees = [dynamical_degree(f, p, rel_tol) for p in range(f.k + 1)]
    h_a = algebraic_entropy(degrees)
    positive = is_positive_entropy(f)
    if positive and not h_a.hi > 0:
        raise ArithmeticError("positive entropy but h_a enclosure is {0}")
    if not positive and h_a != Interval.point(0):
        raise ArithmeticError("zero entropy but some degree is not exactly 1")
    rho = None
    if with_rho and isinstance(f, TorusAut):
        rho = {}
        for p in range(f.k + 1):
            for q in range(f.k + 1):
                r = rho_pq(f, p, q, rel_tol)
                rho[(p, q)] = {
                    **radius_report(r),
                    "bound_holds": rho_bound_holds(r, degrees[p], degrees[q]),
                }
    return DegreeProfile(
        degrees,
        h_a,
        positive,
        is_log_concave(degrees),
        is_unimodal(degrees),
        unverified_model=isinstance(f, RawModel),
        rho=rho,
    )


# -- growth of intersection numbers ---------------------------------------------


@dataclass
class GrowthLimit:
    brackets: list[Fraction]
    estimates: list[Interval]
    degree: RadiusBound

    @property
    def final_rel_error(self) -> Interval:
        d = self.degree.interval
        return (self.estimates[-1] - d).abs() / d


def growth_limit_estimate(f: TorusAut, p: int, H=None, n_max: int = 20, bits: int = DEFAULT_BITS) -> GrowthLimit:
    """a_n = (integral of (f^n)^* omega^p ^ omega^{k-p})^(1/n) for n = 1..n_max.

    The bracket is an exact rational; only the n-th root is rounded (outward).
    """
    k = f.k
    H = ExactMatrix.identity(k) if H is None else as_matrix(H)
    w = kahler_class(H, f.model)
    start = w.power(p)
    rest = w.power(k - p)
    basis = f.model.basis(p, p)
    # integral of (class) ^ omega^{k-p} as a linear functional on H^{p,p}
    functional = [integrate(CohomClass(f.model, p, p, {b: 1}).wedge(rest)) for b in basis]
    M = f.action(p, p)
    v = start.vector()
    brackets, estimates = [], []
    for n in range(1, n_max + 1):
        v = M.apply(v)
        b = sum(c * x for c, x in zip(functional, v))
        if not isinstance(b, Fraction):
            raise ArithmeticError("intersection number is not real")
        brackets.append(b)
        estimates.append((Interval.point(b).log(bits) * Fraction(1, n)).exp(bits))
    return GrowthLimit(brackets, estimates, dynamical_degree(f, p))


# -- relative degrees ------------------------------------------------------------


class FiberedAut:
    """f(z) = A z with A = [[G, 0], [C, F]]: base coordinates first.

    The projection to the first ``l`` coordinates intertwines f with the base
    map g(z) = G z; F acts along the fibres.
    """

    def __init__(self, f: TorusAut, l: int):
        k = f.k
        if not 1 <= l < k:
            raise StructureError("base dimension must satisfy 1 <= l < k")
        A = f.A
        for i in range(l):
            for j in range(l, k):
                if A[i, j] != 0:
                    raise StructureError("matrix is not block-lower-triangular for this splitting")
        self.f = f
        self.l = l
        self.base = TorusAut(A.submatrix(range(l), range(l)))
        self.fiber = TorusAut(A.submatrix(range(l, k), range(l, k)))

    @property
    def k(self) -> int:
        return self.f.k


def relative_degree(F: FiberedAut, p: int, rel_tol=DEFAULT_REL_TOL) -> RadiusBound:
    if not 0 <= p <= F.k - F.l:
        raise ValueError("relative degree index out of range")
    return dynamical_degree(F.fiber, p, rel_tol)


@dataclass
class ProductFormulaRow:
    p: int
    direct: RadiusBound
    formula: Interval
    argmax: list[int]
    matches: bool

    @property
    def interior(self) -> bool:
        """Some maximiser s is strictly between 0 and p."""
        return any(0 < s < self.p for s in self.argmax)

    @property
    def interior_only(self) -> bool:
        return bool(self.argmax) and all(0 < s < self.p for s in self.argmax)


def product_formula_check(F: FiberedAut, rel_tol=DEFAULT_REL_TOL) -> list[ProductFormulaRow]:
    """Compare d_p(f) with max_s d_s(g) d_{p-s}(f|pi) for every p."""
    k, l = F.k, F.l
    base = [dynamical_degree(F.base, s, rel_tol) for s in range(l + 1)]
    rel = [relative_degree(F, t, rel_tol) for t in range(k - l + 1)]
    rows = []
    for p in range(k + 1):
        direct = dynamical_degree(F.f, p, rel_tol)
        cands = {}
        for s in range(max(0, p - (k - l)), min(p, l) + 1):
            cands[s] = base[s].interval * rel[p - s].interval
        best = None
        for iv in cands.values():
            best = iv if best is None else best.max(iv)
        argmax = sorted(s for s, iv in cands.items() if iv.hi >= best.lo)
        rows.append(ProductFormulaRow(p, direct, best, argmax, direct.interval.overlaps(best)))
    return rows


__all__ = [
    "DegreeProfile",
    "FiberedAut",
    "GrowthLimit",
    "ProductFormulaRow",
    "RawModel",
    "StructureError",
    "algebraic_entropy",
    "degree_profile",
    "dynamical_degree",
    "growth_limit_estimate",
    "is_log_concave",
    "is_positive_entropy",
    "is_unimodal",
    "relative_degree",
    "rho_bound_holds",
    "rho_pq",
    "product_formula_check",
    "zero_entropy",
]
