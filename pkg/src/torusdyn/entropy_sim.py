"""Empirical topological entropy of linear maps of R^m / Z^m.

Points live on the grid (Z/N)^m / N, which an integer matrix maps to itself,
so orbit separation only depends on the difference d = y - x:
x and y fail to be (n, eps)-separated iff every A^j d (j < n) has sup
distance <= eps to the lattice.  Those differences form the Bowen set K_n,
and a greedy first-fit scan in lexicographic order marks x + K_n around every
chosen point.  The count is a lower bound for the maximal separated set.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numba
import numpy as np

from .automorphism import TorusAut
from .degrees import degree_profile
from .intervals import Interval
from .linalg import ExactMatrix, as_matrix, det

log = logging.getLogger(__name__)

MIN_BALL = 16  # Bowen sets with fewer grid points are dominated by the grid
MAX_CELLS = 1 << 28


class TorusMapError(ValueError):
    pass


@dataclass(frozen=True)
class TorusMap:
    """x -> M x on R^m / Z^m with the sup distance to the lattice."""

    M: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.M)
        m = len(rows)
        if m == 0 or any(len(r) != m for r in rows):
            raise TorusMapError("matrix must be square")
        d = det(ExactMatrix(rows))
        if d not in (1, -1):
            raise TorusMapError(f"|det| must be 1, got {d}")
        object.__setattr__(self, "M", rows)

    @property
    def m(self) -> int:
        return len(self.M)

    @classmethod
    def from_matrix(cls, M) -> "TorusMap":
        return cls(tuple(tuple(r) for r in as_matrix(M).tolist()))

    def as_array(self) -> np.ndarray:
        return np.array(self.M, dtype=np.int64)

    def reference_entropy(self) -> Interval:
        """Certified h_a of the complexified map, halved: the complex torus
        C^m / Z[i]^m carries two copies of R^m / Z^m."""
        prof = degree_profile(TorusAut(ExactMatrix(self.M)))
        return prof.h_a * Fraction(1, 2)


def bowen_offsets(A: np.ndarray, N: int, eps: float, n_max: int) -> list[np.ndarray]:
    """K_1 .. K_{n_max} as arrays of integer offsets (rows), exactly mod N."""
    m = A.shape[0]
    r = min(int(math.floor(eps * N + 1e-12)), (N - 1) // 2)
    axes = [np.arange(-r, r + 1, dtype=np.int64)] * m
    D = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, m)
    cur = D.copy()  # A^j d mod N, centred
    out = []
    for _ in range(n_max):
        keep = np.all(np.abs(cur) <= r, axis=1)
        D, cur = D[keep], cur[keep]
        out.append(D.copy())
        cur = (cur @ A.T) % N
        cur = np.where(cur > N // 2, cur - N, cur)
    return out


@numba.njit(cache=True)
def _greedy_count(N: int, m: int, K: np.ndarray) -> int:
    total = N**m
    if K.shape[0] == 1:
        return total  # only d = 0: every grid point is separated from the rest
    marked = np.zeros(total, dtype=np.uint8)
    strides = np.empty(m, dtype=np.int64)
    s = 1
    for a in range(m - 1, -1, -1):
        strides[a] = s
        s *= N
    coords = np.zeros(m, dtype=np.int64)  # odometer over the grid, last axis fastest
    count = 0
    for idx in range(total):
        if not marked[idx]:
            count += 1
            for t in range(K.shape[0]):
                j = 0
                for a in range(m):
                    c = coords[a] + K[t, a]
                    if c < 0:
                        c += N
                    elif c >= N:
                        c -= N
                    j += c * strides[a]
                marked[j] = 1
        a = m - 1
        while a >= 0:
            coords[a] += 1
            if coords[a] < N:
                break
            coords[a] = 0
            a -= 1
    return count


def separated_count(f: TorusMap, eps: float, n: int, grid: int) -> int:
    """Size of the greedy (n, eps)-separated subset of the grid."""
    if eps <= 0 or n < 1:
        raise ValueError("need eps > 0 and n >= 1")
    if eps >= 0.5:
        return 1  # every pair is within eps of each other
    K = bowen_offsets(f.as_array(), grid, eps, n)[-1]
    return int(_greedy_count(grid, f.m, K))


@dataclass
class EpsilonRun:
    eps: float
    counts: list[int]
    ball_sizes: list[int]
    usable: list[int]  # values of n used for the fit
    slope: float | None
    monotone: bool


@dataclass
class SeparationEstimate:
    grid: int
    eps_schedule: list[float]
    n_max: int
    runs: list[EpsilonRun]
    h_est: float | None
    h_ref: Interval | None = None
    warnings: list[str] = field(default_factory=list)

    def to_dict(self, digits: int = 12) -> dict:
        return {
            "grid": self.grid,
            "eps_schedule": self.eps_schedule,
            "n_max": self.n_max,
            "runs": [
                {
                    "eps": r.eps,
                    "counts": r.counts,
                    "bowen_set_sizes": r.ball_sizes,
                    "fit_n": r.usable,
                    "slope": r.slope,
                    "monotone_in_n": r.monotone,
                }
                for r in self.runs
            ],
            "h_est": self.h_est,
            "h_ref": self.h_ref.decimal_pair(digits) if self.h_ref else None,
            "warnings": self.warnings,
        }


def _fit_slope(ns: Sequence[int], counts: Sequence[int]) -> float | None:
    if len(ns) < 2:
        return None
    x = np.array(ns, dtype=float)
    y = np.log(np.array(counts, dtype=float))
    return float(np.polyfit(x, y, 1)[0])


def entropy_estimate(
    f: TorusMap,
    eps_schedule: Sequence[float] = (0.05, 0.02, 0.01),
    n_max: int = 12,
    grid: int = 1024,
    with_reference: bool = True,
) -> SeparationEstimate:
    """Greedy separated-set counts for every eps and n <= n_max, a log-linear
    fit over the top half of the n where the Bowen set still holds at least
    MIN_BALL grid points, and h_est = max of the fitted slopes."""
    if grid**f.m > MAX_CELLS:
        raise ValueError(f"grid {grid}^{f.m} exceeds {MAX_CELLS} cells")
    eps_schedule = sorted(eps_schedule, reverse=True)
    A = f.as_array()
    warnings = []
    runs = []
    for eps in eps_schedule:
        if eps * grid < 2:
            warnings.append(f"grid {grid} too coarse for eps={eps}")
        balls = bowen_offsets(A, grid, eps, n_max)
        counts = [int(_greedy_count(grid, f.m, K)) for K in balls]
        sizes = [len(K) for K in balls]
        ok_n = [n for n, s in zip(range(1, n_max + 1), sizes) if s >= MIN_BALL]
        if len(ok_n) < n_max:
            warnings.append(f"eps={eps}: Bowen set below {MIN_BALL} grid points after n={max(ok_n, default=0)}")
        top = ok_n[len(ok_n) // 2 :] if len(ok_n) >= 4 else ok_n
        slope = _fit_slope(top, [counts[n - 1] for n in top])
        monotone = all(a <= b for a, b in zip(counts, counts[1:]))
        if not monotone:
            warnings.append(f"eps={eps}: counts not monotone in n")
        runs.append(EpsilonRun(eps, counts, sizes, top, slope, monotone))
    for a, b in zip(runs, runs[1:]):
        if any(x > y for x, y in zip(a.counts, b.counts)):
            warnings.append(f"counts at eps={a.eps} exceed those at eps={b.eps}")
    slopes = [r.slope for r in runs if r.slope is not None]
    h_est = max(slopes) if slopes else None
    h_ref = f.reference_entropy() if with_reference else None
    for w in warnings:
        log.warning(w)
    return SeparationEstimate(grid, list(eps_schedule), n_max, runs, h_est, h_ref, warnings)


__all__ = [
    "EpsilonRun",
    "SeparationEstimate",
    "TorusMap",
    "TorusMapError",
    "bowen_offsets",
    "entropy_estimate",
    "separated_count",
]
