"""Diagonally scaled Toeplitz-dot-Hankel operators A = D₁ (T ∘ H) D₂.

With H ≈ Σ_r a_r ℓ_r ℓ_rᵀ from pivoted Cholesky, each rank-1 term turns the
Hadamard product into a diagonally scaled Toeplitz product,

    (T ∘ ℓℓᵀ) v = D_ℓ T D_ℓ v,

so A·v costs K Toeplitz products sharing one FFT symbol.

Some Hankel parts are only PSD after deleting row and column 0.  For those a
plan stores row 0 of A explicitly and compresses the trailing block; column 0
below the diagonal is zero for the upper-triangular conversion matrices this
is used for.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.fft as sfft

from .errors import ContractViolation
from .lowrank import DEFAULT_EPS, LowRankFactor, PsdMatrixOracle, pivoted_cholesky
from .toeplitz import ToeplitzOperator, toeplitz_build

__all__ = ["ConversionPlan", "plan_build", "plan_apply"]

# Rank-1 terms transformed per batched FFT call; bounds scratch memory.
_BATCH = 4


@dataclass(frozen=True)
class ConversionPlan:
    size: int
    d1: np.ndarray
    d2: np.ndarray
    toeplitz: Optional[ToeplitzOperator]
    hankel_factor: LowRankFactor
    split_first_row: bool = False
    first_row_entries: Optional[np.ndarray] = None

    @property
    def rank(self) -> int:
        return self.hankel_factor.rank

    def dense(self) -> np.ndarray:
        """Densify the operator the plan applies (testing aid)."""
        n = self.size
        out = np.zeros((n, n))
        lo = 1 if self.split_first_row else 0
        if n > lo:
            core = self.d1[:, None] * (self.toeplitz.dense() * self.hankel_factor.dense()) * self.d2[None, :]
            out[lo:, lo:] = core
        if self.split_first_row:
            out[0] = self.first_row_entries
        return out


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


def plan_build(
    n: int,
    d1,
    d2,
    toeplitz_symbols,
    hankel_oracle: PsdMatrixOracle,
    eps: float = DEFAULT_EPS,
    split_first_row: bool = False,
    first_row_entries=None,
    max_rank: Optional[int] = None,
) -> ConversionPlan:
    """Assemble a plan for D₁ (T ∘ H) D₂ of size n.

    Parameters
    ----------
    d1, d2
        The n diagonal scalings.
    toeplitz_symbols
        ``(first_column, first_row)`` of the n×n Toeplitz part, or a prebuilt
        :class:`ToeplitzOperator`.
    hankel_oracle
        The Hankel part; of size n, or n − 1 (indices 1…n−1) when
        ``split_first_row`` is set.
    first_row_entries
        Row 0 of A, required with ``split_first_row``.
    """
    d1 = _frozen(d1)
    d2 = _frozen(d2)
    if d1.shape != (n,) or d2.shape != (n,):
        raise ContractViolation("diagonals must have length n")
    if isinstance(toeplitz_symbols, ToeplitzOperator):
        col, row = toeplitz_symbols.first_column, toeplitz_symbols.first_row
    else:
        col, row = (np.asarray(s, dtype=float) for s in toeplitz_symbols)
    if col.shape != (n,) or row.shape != (n,):
        raise ContractViolation("Toeplitz symbols must have length n")

    lo = 1 if split_first_row else 0
    if hankel_oracle.size != n - lo:
        raise ContractViolation(f"Hankel oracle has size {hankel_oracle.size}, expected {n - lo}")
    if split_first_row:
        if first_row_entries is None:
            raise ContractViolation("split_first_row needs first_row_entries")
        first_row_entries = _frozen(first_row_entries)
        if first_row_entries.shape != (n,):
            raise ContractViolation("first_row_entries must have length n")
    else:
        first_row_entries = None

    factor = pivoted_cholesky(hankel_oracle, eps, max_rank)
    m = n - lo
    top = None
    if m > 0:
        top = toeplitz_symbols if (lo == 0 and isinstance(toeplitz_symbols, ToeplitzOperator)) else toeplitz_build(col[:m], row[:m])
    return ConversionPlan(
        size=n,
        d1=d1[lo:],
        d2=d2[lo:],
        toeplitz=top,
        hankel_factor=factor,
        split_first_row=split_first_row,
        first_row_entries=first_row_entries,
    )


def _apply_core(plan: ConversionPlan, v: np.ndarray) -> np.ndarray:
    factor = plan.hankel_factor
    m = v.size
    out = np.zeros(m)
    if factor.rank == 0 or m == 0:
        return out
    w = plan.d2 * v
    op = plan.toeplitz
    L = factor.columns
    a = factor.weights
    flen = op.m
    for start in range(0, factor.rank, _BATCH):
        stop = min(start + _BATCH, factor.rank)
        block = L.T[start:stop]  # (b, m), contiguous rows
        y = sfft.irfft(sfft.rfft(block * w, flen, axis=-1) * op.symbol, flen, axis=-1)[:, :m]
        # Summation in index order r = 1…K.
        for i, r in enumerate(range(start, stop)):
            out += a[r] * block[i] * y[i]
    return plan.d1 * out


def plan_apply(plan: ConversionPlan, v) -> np.ndarray:
    """A·v for the operator described by ``plan``."""
    v = np.asarray(v, dtype=float)
    if v.shape != (plan.size,):
        raise ContractViolation(f"vector length {v.shape} != plan size {plan.size}")
    if not plan.split_first_row:
        return _apply_core(plan, v)
    out = np.empty(plan.size)
    out[0] = plan.first_row_entries @ v
    out[1:] = _apply_core(plan, v[1:])
    return out
