"""Pivoted Cholesky for implicitly defined PSD matrices.

Only the diagonal and the K pivot columns are ever formed, so a rank-K
approximation of an n×n matrix costs O(K²n) work and O(Kn) memory.
The square-root-free form keeps H ≈ Σ_r a_r ℓ_r ℓ_rᵀ with a_r the
reciprocal of the r-th pivot value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ContractViolation, NotPsd, RankCapExceeded

__all__ = [
    "DEFAULT_EPS",
    "PsdMatrixOracle",
    "LowRankFactor",
    "default_max_rank",
    "pivoted_cholesky",
]

DEFAULT_EPS = 100 * np.finfo(float).eps


class PsdMatrixOracle:
    """A symmetric PSD matrix known only through its diagonal and columns.

    Parameters
    ----------
    size
        Matrix dimension n.
    diag
        Callable returning the n diagonal entries.
    column
        Callable ``column(j)`` returning the n entries of column j.
    """

    def __init__(self, size: int, diag: Callable[[], np.ndarray], column: Callable[[int], np.ndarray]):
        self.size = int(size)
        self._diag = diag
        self._column = column

    def diag(self) -> np.ndarray:
        return np.asarray(self._diag(), dtype=float)

    def column(self, j: int) -> np.ndarray:
        return np.asarray(self._column(j), dtype=float)

    @classmethod
    def from_dense(cls, a) -> "PsdMatrixOracle":
        a = np.asarray(a, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ContractViolation("dense oracle needs a square matrix")
        return cls(a.shape[0], lambda: np.diag(a).copy(), lambda j: a[:, j].copy())

    @classmethod
    def from_hankel(cls, h) -> "PsdMatrixOracle":
        """Hankel matrix H[j, k] = h[j + k] from its 2n−1 anti-diagonal values."""
        h = np.asarray(h, dtype=float).ravel()
        if h.size == 0:
            return cls(0, lambda: np.zeros(0), lambda j: np.zeros(0))
        if h.size % 2 == 0:
            raise ContractViolation("Hankel symbol must have odd length 2n-1")
        n = (h.size + 1) // 2
        return cls(n, lambda: h[0::2].copy(), lambda j: h[j : j + n].copy())

    def dense(self) -> np.ndarray:
        """Materialize the matrix (testing aid, O(n²))."""
        return np.column_stack([self.column(j) for j in range(self.size)]) if self.size else np.zeros((0, 0))


@dataclass(frozen=True)
class LowRankFactor:
    """H ≈ Σ_r weights[r] · columns[:, r] columns[:, r]ᵀ."""

    columns: np.ndarray
    weights: np.ndarray
    pivots: np.ndarray
    achieved_tol: float

    def __post_init__(self):
        for arr in (self.columns, self.weights, self.pivots):
            arr.setflags(write=False)

    @property
    def rank(self) -> int:
        return int(self.weights.size)

    @property
    def size(self) -> int:
        return int(self.columns.shape[0])

    def dense(self) -> np.ndarray:
        return (self.columns * self.weights) @ self.columns.T


def default_max_rank(n: int) -> int:
    return min(n, 8 * math.ceil(math.log2(n + 2)) + 40)


def _factor(rows: np.ndarray, weights: list, pivots: list, tol: float) -> LowRankFactor:
    k = len(weights)
    return LowRankFactor(
        # Stored one contiguous column per factor term.
        columns=rows[:k].copy().T,
        weights=np.array(weights, dtype=float),
        pivots=np.array(pivots, dtype=np.intp),
        achieved_tol=float(tol),
    )


def pivoted_cholesky(
    oracle: PsdMatrixOracle,
    eps: float = DEFAULT_EPS,
    max_rank: int | None = None,
) -> LowRankFactor:
    """Greedy max-diagonal pivoted Cholesky without square roots.

    Stops at the first K with max updated diagonal ≤ eps · (initial max
    diagonal).  Pivot ties go to the lowest index.

    Raises
    ------
    RankCapExceeded
        Tolerance not reached within ``max_rank`` steps; ``err.factor`` holds
        the partial factor.
    NotPsd
        An updated diagonal entry fell below −max(eps, 64 ε_mach) times the
        initial max diagonal.
    """
    if not eps > 0:
        raise ContractViolation("eps must be positive")
    n = oracle.size
    if max_rank is None:
        max_rank = default_max_rank(n)
    if max_rank > n:
        raise ContractViolation(f"max_rank {max_rank} exceeds matrix size {n}")

    d = oracle.diag().copy()
    if d.shape != (n,):
        raise ContractViolation("oracle diagonal has the wrong length")
    if n == 0:
        return _factor(np.zeros((0, 0)), [], [], 0.0)
    dmax0 = float(d.max())
    if dmax0 <= 0.0:
        if d.min() < 0.0:
            raise NotPsd("matrix has a negative diagonal and no positive one")
        return _factor(np.zeros((0, n)), [], [], 0.0)
    floor = eps * dmax0
    # Rounding in the diagonal updates is O(ε_mach · dmax0) whatever eps is.
    slack = max(eps, 64 * np.finfo(float).eps) * dmax0
    if d.min() < -slack:
        raise NotPsd(f"negative diagonal entry {d.min():.3e}")

    rows = np.empty((max_rank, n))
    weights: list[float] = []
    pivots: list[int] = []
    for r in range(max_rank + 1):
        p = int(np.argmax(d))
        if d[p] <= floor:
            return _factor(rows, weights, pivots, max(d[p], 0.0))
        if r == max_rank:
            partial = _factor(rows, weights, pivots, d[p])
            raise RankCapExceeded(
                f"tolerance {eps:g} not reached after {max_rank} pivots (residual {d[p]:.3e})",
                partial,
            )
        col = oracle.column(p)
        if r:
            # Apply the r previous rank-1 corrections to the raw column only.
            col -= (np.asarray(weights) * rows[:r, p]) @ rows[:r]
        pivot_value = col[p]
        if pivot_value <= floor:
            # Diagonal and recomputed column disagree; the diagonal was rounding noise.
            return _factor(rows, weights, pivots, max(pivot_value, 0.0))
        rows[r] = col
        a = 1.0 / pivot_value
        weights.append(a)
        pivots.append(p)
        d -= col * col * a
        d[p] = 0.0
        if d.min() < -slack:
            raise NotPsd(f"updated diagonal entry {d.min():.3e} after {r + 1} pivots")
        np.maximum(d, 0.0, out=d)
    raise AssertionError("unreachable")
