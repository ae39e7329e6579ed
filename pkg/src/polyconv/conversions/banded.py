"""One-step parameter raises as banded upper-triangular factors.

Raising a parameter by one is a sparse matrix on coefficient vectors:

* ultraspherical λ → λ+1:  C_n^(λ) = λ/(λ+n) (C_n^(λ+1) − C_{n−2}^(λ+1));
* Jacobi (α, β) → (α+1, β):
  (2n+α+β+1) P_n^(α,β) = (n+α+β+1) P_n^(α+1,β) − (n+β) P_{n−1}^(α+1,β);
* Laguerre α → α+1:  L_n^(α) = L_n^(α+1) − L_{n−1}^(α+1).

Truncating to the leading (N+1)×(N+1) block is exact because the factors
are upper triangular.  Lowering a parameter is a banded back substitution.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_banded

from ..errors import ContractViolation

__all__ = ["BandedUpperFactor", "ultraspherical_step", "jacobi_step", "laguerre_step"]


@dataclass(frozen=True)
class BandedUpperFactor:
    """Upper-triangular matrix with a main diagonal and one band at ``offset``."""

    kind: str
    params: tuple
    offset: int

    def bands(self, n: int) -> tuple[np.ndarray, np.ndarray]:
        """(diagonal of length n, band of length n − offset) of the n×n block."""
        j = np.arange(n, dtype=float)
        if self.kind == "ultraspherical":
            (lam,) = self.params
            diag = lam / (lam + j)
            upper = -lam / (lam + j[: max(n - 2, 0)] + 2)
        elif self.kind == "jacobi":
            a, b = self.params
            diag = np.ones(n)
            # P_0 = 1 in every basis; the general ratio is 0/0 at n = 0 when α+β = −1.
            diag[1:] = (j[1:] + a + b + 1) / (2 * j[1:] + a + b + 1)
            jj = j[: max(n - 1, 0)]
            upper = -(jj + 1 + b) / (2 * jj + a + b + 3)
        elif self.kind == "laguerre":
            diag = np.ones(n)
            upper = -np.ones(max(n - 1, 0))
        else:
            raise ContractViolation(f"unknown banded factor kind {self.kind!r}")
        return diag, upper

    def dense(self, n: int) -> np.ndarray:
        diag, upper = self.bands(n)
        out = np.diag(diag)
        if upper.size:
            out += np.diag(upper, self.offset)
        return out

    def apply(self, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v, dtype=float)
        diag, upper = self.bands(v.size)
        out = diag * v
        if upper.size:
            out[: -self.offset] += upper * v[self.offset :]
        return out

    def solve(self, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v, dtype=float)
        n = v.size
        if n == 0:
            return v.copy()
        diag, upper = self.bands(n)
        ab = np.zeros((self.offset + 1, n))
        ab[self.offset] = diag
        ab[0, self.offset :] = upper
        return solve_banded((0, self.offset), ab, v)


def ultraspherical_step(lam: float) -> BandedUpperFactor:
    """C^(λ) coefficients → C^(λ+1) coefficients."""
    return BandedUpperFactor("ultraspherical", (float(lam),), 2)


def jacobi_step(alpha: float, beta: float) -> BandedUpperFactor:
    """P^(α,β) coefficients → P^(α+1,β) coefficients."""
    return BandedUpperFactor("jacobi", (float(alpha), float(beta)), 1)


def laguerre_step(alpha: float) -> BandedUpperFactor:
    """L^(α) coefficients → L^(α+1) coefficients."""
    return BandedUpperFactor("laguerre", (float(alpha),), 1)
