"""Toeplitz matrix-vector products through circulant embedding.

The n×n Toeplitz matrix with first column (t₀, t₋₁, …) and first row
(t₀, t₁, …) is the leading block of a circulant of length m ≥ 2n−1, so
T·v is a slice of a cyclic convolution and costs three FFTs of length m.
The transform of the circulant's first column (the symbol) is computed once
and reused by every product.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.fft as sfft

from .errors import ContractViolation

__all__ = ["ToeplitzOperator", "toeplitz_build", "toeplitz_apply", "embedding_length"]


def embedding_length(n: int) -> int:
    """Smallest power of two ≥ 2n − 1."""
    return 1 << max(2 * n - 2, 0).bit_length()


@dataclass(frozen=True)
class ToeplitzOperator:
    first_column: np.ndarray
    first_row: np.ndarray
    symbol: np.ndarray  # rfft of the length-m embedding

    @property
    def n(self) -> int:
        return int(self.first_column.size)

    @property
    def m(self) -> int:
        return embedding_length(self.n)

    def dense(self) -> np.ndarray:
        n = self.n
        idx = np.arange(n)[None, :] - np.arange(n)[:, None]
        vals = np.concatenate([self.first_column[::-1], self.first_row[1:]])
        return vals[idx + n - 1]


def _embedding(first_column: np.ndarray, first_row: np.ndarray, m: int) -> np.ndarray:
    n = first_column.size
    c = np.zeros(m)
    c[:n] = first_column
    if n > 1:
        c[m - n + 1 :] = first_row[:0:-1]
    return c


def toeplitz_build(first_column, first_row) -> ToeplitzOperator:
    col = np.array(first_column, dtype=float).ravel()
    row = np.array(first_row, dtype=float).ravel()
    if col.size != row.size:
        raise ContractViolation(f"first column has {col.size} entries, first row {row.size}")
    if col.size == 0:
        raise ContractViolation("empty Toeplitz matrix")
    if col[0] != row[0]:
        raise ContractViolation("first column and first row disagree at the corner")
    m = embedding_length(col.size)
    symbol = sfft.rfft(_embedding(col, row, m))
    for arr in (col, row, symbol):
        arr.setflags(write=False)
    return ToeplitzOperator(col, row, symbol)


def toeplitz_apply(op: ToeplitzOperator, v) -> np.ndarray:
    """Return T·v (v may also be a stack of vectors along the last axis)."""
    v = np.asarray(v, dtype=float)
    if v.shape[-1] != op.n:
        raise ContractViolation(f"vector length {v.shape[-1]} != operator size {op.n}")
    m = op.m
    out = sfft.irfft(sfft.rfft(v, m, axis=-1) * op.symbol, m, axis=-1)
    return out[..., : op.n]
