"""Dense O(N²) reference conversions.

Rows of each conversion matrix are generated from the explicit entry
formulas in blocks and consumed immediately, so memory stays O(N) apart
from a fixed-size block buffer.  Dot products use Dot2 (error-free
products plus a pairwise two-sum cascade), which keeps the result within a
few ulps of the exact dot product of the stored entries.

Nothing here touches the fast machinery.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ContractViolation, InvalidParameter
from .special import gamma_quotient, lambda_sequence, pochhammer_over_factorial

__all__ = [
    "DenseConversionSpec",
    "KINDS",
    "dense_row",
    "dense_matrix",
    "direct_apply",
    "dot2",
]

KINDS = (
    "identity",
    "leg2cheb",
    "cheb2leg",
    "ultra2ultra",
    "jacobi",
    "jac2jac",
    "jac2cheb",
    "cheb2jac",
    "lag2lag",
)

_NPARAMS = {
    "identity": 0,
    "leg2cheb": 0,
    "cheb2leg": 0,
    "ultra2ultra": 2,
    "jacobi": 3,
    "jac2jac": 4,
    "jac2cheb": 2,
    "cheb2jac": 2,
    "lag2lag": 2,
}

# Entries per generated block.
_BLOCK_ENTRIES = 1 << 20
_SQRT_PI = math.sqrt(math.pi)
_SPLITTER = 134217729.0  # 2**27 + 1


@dataclass(frozen=True)
class DenseConversionSpec:
    """A conversion matrix of a given size.

    ``kind`` is one of :data:`KINDS`; ``params`` are

    * ``ultra2ultra``: (λ₁, λ₂)
    * ``jacobi``: (α, β, γ), the one-parameter map P^(α,β) → P^(γ,β)
    * ``jac2jac``: (α, β, γ, δ)
    * ``jac2cheb`` / ``cheb2jac``: (α, β)
    * ``lag2lag``: (α₁, α₂)
    """

    kind: str
    params: tuple = ()
    size: int = 1

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidParameter(f"unknown conversion kind {self.kind!r}")
        params = tuple(float(p) for p in self.params)
        object.__setattr__(self, "params", params)
        if len(params) != _NPARAMS[self.kind]:
            raise InvalidParameter(f"{self.kind} takes {_NPARAMS[self.kind]} parameters, got {len(params)}")
        if any(not math.isfinite(p) for p in params):
            raise InvalidParameter("parameters must be finite")
        if self.kind == "ultra2ultra" and min(params) <= 0:
            raise InvalidParameter("ultraspherical parameters must be positive")
        if self.kind in ("jacobi", "jac2jac", "jac2cheb", "cheb2jac", "lag2lag") and min(params) <= -1:
            raise InvalidParameter(f"{self.kind} parameters must exceed -1")
        if int(self.size) != self.size or self.size < 1:
            raise InvalidParameter("size must be a positive integer")
        object.__setattr__(self, "size", int(self.size))


# ---------------------------------------------------------------------------
# Compensated dot products


def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _split(a):
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def _two_prod(a, b):
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    return p, al * bl - (((p - ah * bh) - al * bh) - ah * bl)


def dot2(rows: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Compensated ``rows @ v`` for a 2-D block of rows."""
    rows = np.asarray(rows, dtype=float)
    v = np.asarray(v, dtype=float)
    if rows.shape[-1] == 0:
        return np.zeros(rows.shape[0])
    p, e = _two_prod(rows, v[None, :])
    while p.shape[1] > 1:
        if p.shape[1] % 2:
            p = np.pad(p, ((0, 0), (0, 1)))
            e = np.pad(e, ((0, 0), (0, 1)))
        s, err = _two_sum(p[:, 0::2], p[:, 1::2])
        e = e[:, 0::2] + e[:, 1::2] + err
        p = s
    return p[:, 0] + e[:, 0]


# ---------------------------------------------------------------------------
# Entry formulas for the single-stage kinds


@lru_cache(maxsize=16)
def _tables(kind: str, params: tuple, n: int) -> dict:
    """O(n) factor tables; entries are products of lookups into these."""
    s = np.arange(2 * n + 1, dtype=float)
    m = np.arange(n)
    if kind == "leg2cheb":
        return {"mu": lambda_sequence(2 * n + 1) / _SQRT_PI}  # Λ(s/2)/√π
    if kind == "cheb2leg":
        return {"lam": lambda_sequence(2 * n + 1)}  # Λ(s/2)
    if kind == "ultra2ultra":
        lam1, lam2 = params
        scale = float(gamma_quotient([lam2], [lam1]))
        return {
            "poch": pochhammer_over_factorial(lam1 - lam2, m),
            "hank": scale * gamma_quotient([lam1], [lam2 + 1], base=s / 2),
        }
    if kind == "jacobi":
        a, b, g = params
        poch = pochhammer_over_factorial(a - g, m)
        k = m.astype(float)
        # Γ(k+α+β+1) has a pole at k = 0 when α+β = −1; index 0 is only used by row 0.
        num = np.full(n, np.nan)
        num[1:] = (2 * k[1:] + g + b + 1) * gamma_quotient([g + b + 1], [b + 1], base=k[1:])
        den = np.full(n, np.nan)
        den[1:] = gamma_quotient([b + 1], [a + b + 1], base=k[1:])
        hank = np.full(s.size, np.nan)
        hank[2:] = gamma_quotient([a + b + 1], [g + b + 2], base=s[2:])
        row0 = float(gamma_quotient([g + b + 2], [b + 1])) * gamma_quotient([b + 1], [g + b + 2], base=k) * poch
        return {"poch": poch, "left": num, "right": den, "hank": hank, "row0": row0}
    if kind == "lag2lag":
        a1, a2 = params
        return {"poch": pochhammer_over_factorial(a1 - a2, m)}
    raise ContractViolation(f"{kind} has no direct entry formula")


def _block(spec: DenseConversionSpec, j0: int, j1: int) -> np.ndarray:
    """Rows j0 … j1−1 of a single-stage conversion matrix."""
    n = spec.size
    kind = spec.kind
    j = np.arange(j0, j1)[:, None]
    k = np.arange(n)[None, :]
    diff = k - j
    upper = diff >= 0
    even = upper & (diff % 2 == 0)
    out = np.zeros((j1 - j0, n))
    if kind == "identity":
        out[diff == 0] = 1.0
        return out
    t = _tables(kind, spec.params, n)
    jj, kk = np.broadcast_arrays(j, k)
    if kind == "leg2cheb":
        mu = t["mu"]
        # (2/π) Λ(a) Λ(b) = 2 μ(a) μ(b) with μ = Λ/√π.
        val = 2.0 * mu[np.where(even, diff, 0)] * mu[jj + kk]
        out[even] = val[even]
        if j0 == 0:
            out[0] *= 0.5
        return out
    if kind == "cheb2leg":
        lam = t["lam"]
        off = even & (diff > 0)
        with np.errstate(divide="ignore", invalid="ignore"):
            val = (
                -kk
                * (jj + 0.5)
                * lam[np.where(off, diff - 2, 0)]
                / diff
                * lam[np.maximum(jj + kk - 1, 0)]
                / (jj + kk + 1)
            )
        out[off] = val[off]
        rows = np.arange(j0, j1)
        out[rows - j0, rows] = _SQRT_PI / (2 * lam[2 * rows])
        if j0 == 0:
            out[0, 0] = 1.0
        return out
    if kind == "ultra2ultra":
        lam2 = spec.params[1]
        val = (lam2 + jj) * t["poch"][np.where(even, diff // 2, 0)] * t["hank"][jj + kk]
        out[even] = val[even]
        return out
    if kind == "jacobi":
        with np.errstate(invalid="ignore"):
            val = t["left"][jj] * t["right"][kk] * t["poch"][np.where(upper, diff, 0)] * t["hank"][jj + kk]
        out[upper] = val[upper]
        if j0 == 0:
            out[0] = t["row0"]
        return out
    if kind == "lag2lag":
        val = t["poch"][np.where(upper, diff, 0)]
        out[upper] = val[upper]
        return out
    raise ContractViolation(f"{kind} has no direct entry formula")


def _row_blocks(spec: DenseConversionSpec):
    n = spec.size
    step = max(1, _BLOCK_ENTRIES // n)
    for j0 in range(0, n, step):
        j1 = min(n, j0 + step)
        yield j0, j1, _block(spec, j0, j1)


# ---------------------------------------------------------------------------
# Multi-stage kinds


def _stages(spec: DenseConversionSpec) -> list:
    """Factor a conversion into single-stage matrices and diagonal scalings.

    Stages are listed in application order.
    """
    n, p = spec.size, spec.params
    kind = spec.kind
    if kind == "ultra2ultra" and p[0] == p[1]:
        return []
    if kind == "lag2lag" and p[0] == p[1]:
        return []
    if kind == "jacobi" and p[0] == p[2]:
        return []
    if kind == "jac2jac":
        a, b, g, d = p
        stages: list = []
        if b != d:
            # P_k^(α,β)(x) = (−1)^k P_k^(β,α)(−x): change β with the roles swapped.
            stages += [("flip",), ("matrix", DenseConversionSpec("jacobi", (b, a, d), n)), ("flip",)]
        if a != g:
            stages.append(("matrix", DenseConversionSpec("jacobi", (a, d, g), n)))
        return stages
    if kind == "jac2cheb":
        inner = _stages(DenseConversionSpec("jac2jac", (*p, -0.5, -0.5), n))
        return inner + [("diag", lambda_sequence(2 * n - 1)[0::2] / _SQRT_PI)]
    if kind == "cheb2jac":
        inner = _stages(DenseConversionSpec("jac2jac", (-0.5, -0.5, *p), n))
        return [("diag", _SQRT_PI / lambda_sequence(2 * n - 1)[0::2])] + inner
    return [("matrix", spec)]


def _flip_signs(n: int) -> np.ndarray:
    return np.where(np.arange(n) % 2, -1.0, 1.0)


def _apply_stage(stage, v: np.ndarray) -> np.ndarray:
    if stage[0] == "flip":
        return v * _flip_signs(v.size)
    if stage[0] == "diag":
        return v * stage[1]
    out = np.empty(v.size)
    for j0, j1, block in _row_blocks(stage[1]):
        out[j0:j1] = dot2(block, v)
    return out


def _row_times_stage(r: np.ndarray, stage) -> np.ndarray:
    """rᵀ S for one stage S, streaming the rows of S."""
    if stage[0] == "flip":
        return r * _flip_signs(r.size)
    if stage[0] == "diag":
        return r * stage[1]
    out = np.zeros(r.size)
    for j0, j1, block in _row_blocks(stage[1]):
        out += dot2(block.T, r[j0:j1])
    return out


# ---------------------------------------------------------------------------
# Public operations


def dense_row(spec: DenseConversionSpec, j: int) -> np.ndarray:
    """Row j of the conversion matrix (0 ≤ j ≤ N)."""
    if not 0 <= j < spec.size:
        raise InvalidParameter(f"row index {j} outside 0..{spec.size - 1}")
    stages = _stages(spec)
    if stages == [("matrix", spec)]:
        return _block(spec, j, j + 1)[0]
    r = np.zeros(spec.size)
    r[j] = 1.0
    for stage in reversed(stages):
        r = _row_times_stage(r, stage)
    return r


def dense_matrix(spec: DenseConversionSpec) -> np.ndarray:
    """The full (N+1)×(N+1) matrix (testing aid, O(N²) memory)."""
    n = spec.size
    out = np.eye(n)
    for stage in _stages(spec):
        if stage[0] == "flip":
            out = _flip_signs(n)[:, None] * out
        elif stage[0] == "diag":
            out = stage[1][:, None] * out
        else:
            mat = np.vstack([block for _, _, block in _row_blocks(stage[1])])
            out = mat @ out
    return out


def direct_apply(spec: DenseConversionSpec, v) -> np.ndarray:
    """A·v by streamed compensated row dot products."""
    v = np.asarray(v, dtype=float)
    if v.shape != (spec.size,):
        raise ContractViolation(f"vector shape {v.shape} does not match size {spec.size}")
    out = v.copy()
    for stage in _stages(spec):
        out = _apply_stage(stage, out)
    return out
