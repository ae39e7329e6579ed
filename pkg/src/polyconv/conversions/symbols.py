"""Factors of each conversion matrix in Toeplitz-dot-Hankel form.

Every builder returns the pieces of A = D₁ (T ∘ H) D₂ for an n×n truncation.
T is upper triangular, so only its first row is needed; H is Hankel and is
returned as its anti-diagonal sequence h with H[j, k] = h[j + k].  When the
full Hankel part is not PSD, ``split`` is set, ``hankel`` covers indices
1…n−1 only, and row 0 of A is returned in ``first_row``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..errors import InvalidParameter
from ..lowrank import PsdMatrixOracle
from ..special import gamma_quotient, lambda_sequence, pochhammer_over_factorial

__all__ = ["THParts", "parts", "hankel_symbol"]

_SQRT_PI = math.sqrt(math.pi)


@dataclass(frozen=True)
class THParts:
    d1: np.ndarray
    d2: np.ndarray
    toeplitz_row: np.ndarray
    hankel: np.ndarray
    split: bool = False
    first_row: Optional[np.ndarray] = None

    @property
    def toeplitz_column(self) -> np.ndarray:
        col = np.zeros_like(self.toeplitz_row)
        col[:1] = self.toeplitz_row[:1]
        return col

    def oracle(self) -> PsdMatrixOracle:
        return PsdMatrixOracle.from_hankel(self.hankel)


def _even_only(values: np.ndarray) -> np.ndarray:
    """Spread values onto even offsets: out[2i] = values[i], odd offsets 0."""
    n = 2 * values.size
    out = np.zeros(n)
    out[0::2] = values
    return out


def leg2cheb_parts(n: int) -> THParts:
    # Λ(s/2)/√π, s = 0 … 2n−2; the 1/√π scaling makes the leading entries exact.
    tab = lambda_sequence(2 * n - 1) / _SQRT_PI
    d1 = np.full(n, 2.0)
    d1[0] = 1.0
    row = tab[:n].copy()
    row[1::2] = 0.0
    return THParts(d1, np.ones(n), row, tab)


def cheb2leg_parts(n: int) -> THParts:
    k = np.arange(n, dtype=float)
    d1 = k + 0.5
    d2 = -k / 4
    d2[0] = -1 / _SQRT_PI
    m = np.arange(0, n, 2, dtype=float)
    row = _even_only(gamma_quotient([-0.5], [1.0], base=m / 2))[:n]
    # Rows/columns 1…n−1 only: H[j, k] = Γ((j+k)/2) / Γ((j+k+3)/2) with j + k ≥ 2.
    s = np.arange(2, 2 * n - 1, dtype=float)
    hankel = gamma_quotient([0.0], [1.5], base=s / 2)
    first = np.zeros(n)
    first[0] = 1.0
    if n > 2:
        ke = np.arange(2, n, 2, dtype=float)
        h0k = gamma_quotient([0.0], [1.5], base=ke / 2)
        first[2::2] = d1[0] * row[2::2] * h0k * d2[2::2]
    return THParts(d1, d2, row, hankel, split=True, first_row=first)


def ultraspherical_parts(lam1: float, lam2: float, n: int) -> THParts:
    """Case |λ₁ − λ₂| < 1, noninteger."""
    a = lam1 - lam2
    d1 = lam2 + np.arange(n, dtype=float)
    i = np.arange((n + 1) // 2)
    row = _even_only(pochhammer_over_factorial(a, i))[:n]
    s = np.arange(2 * n - 1, dtype=float) / 2
    hankel = float(gamma_quotient([lam2], [lam1])) * gamma_quotient([lam1], [lam2 + 1], base=s)
    return THParts(d1, np.ones(n), row, hankel)


def jacobi_parts(alpha: float, beta: float, gamma: float, n: int) -> THParts:
    """(α, β) → (γ, β) for |α − γ| < 1, noninteger.

    With α + β ≤ −1 the full Hankel part is not PSD and row 0 is split off.
    """
    split = alpha + beta <= -1
    j = np.arange(n, dtype=float)
    d1 = np.empty(n)
    d1[0] = float(gamma_quotient([gamma + beta + 2], [beta + 1]))
    if n > 1:
        jj = j[1:]
        d1[1:] = (2 * jj + gamma + beta + 1) * gamma_quotient([gamma + beta + 1], [beta + 1], base=jj)
    lo = 1 if split else 0
    d2 = np.zeros(n)
    d2[lo:] = gamma_quotient([beta + 1], [alpha + beta + 1], base=j[lo:])
    row = pochhammer_over_factorial(alpha - gamma, np.arange(n))
    s = np.arange(2 * lo, 2 * n - 1, dtype=float)
    hankel = gamma_quotient([alpha + beta + 1], [gamma + beta + 2], base=s)
    first = None
    if split:
        first = d1[0] * gamma_quotient([beta + 1], [gamma + beta + 2], base=j) * row
        first[0] = 1.0
    return THParts(d1, d2, row, hankel, split=split, first_row=first)


def laguerre_parts(alpha1: float, alpha2: float, n: int) -> THParts:
    """Noninteger α₁ − α₂: a pure Toeplitz matrix, Hankel part all ones."""
    row = pochhammer_over_factorial(alpha1 - alpha2, np.arange(n))
    return THParts(np.ones(n), np.ones(n), row, np.ones(2 * n - 1))


def parts(kind: str, params: tuple, n: int) -> THParts:
    if n < 1:
        raise InvalidParameter("conversion size must be at least 1")
    if kind == "leg2cheb":
        return leg2cheb_parts(n)
    if kind == "cheb2leg":
        return cheb2leg_parts(n)
    if kind == "ultraspherical":
        return ultraspherical_parts(*params, n)
    if kind == "jacobi":
        return jacobi_parts(*params, n)
    if kind == "laguerre":
        return laguerre_parts(*params, n)
    raise InvalidParameter(f"unknown conversion kind {kind!r}")


def hankel_symbol(kind: str, params: tuple, n: int) -> PsdMatrixOracle:
    """Hankel part of a conversion as a PSD oracle.

    For split families (Chebyshev→Legendre, Jacobi with α + β ≤ −1) the
    oracle covers indices 1…n−1 and has size n − 1.  Legendre→Chebyshev
    returns H[j, k] = Λ((j+k)/2); plans use the same matrix divided by √π.
    """
    if kind == "leg2cheb":
        if n < 1:
            raise InvalidParameter("conversion size must be at least 1")
        return PsdMatrixOracle.from_hankel(lambda_sequence(2 * n - 1))
    return parts(kind, tuple(params), n).oracle()
