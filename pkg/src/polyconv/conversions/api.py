"""Public conversion entry points and their case dispatch.

A conversion is a short pipeline of stages.  Integer parameter changes run
as banded one-step factors.  Each parameter also gets at most one formula
stage, which runs through the streamed direct algorithm for small N and
through a cached Toeplitz-dot-Hankel plan otherwise.
"""

from __future__ import annotations

import math
import threading
import time
from collections import OrderedDict
from dataclasses import dataclass, field
from typing import Callable, Optional, Union

import numpy as np

from .. import oracle
from ..errors import ContractViolation, InvalidParameter
from ..lowrank import DEFAULT_EPS
from ..special import gamma_quotient, lambda_sequence
from ..thop import ConversionPlan, plan_apply, plan_build
from ..toeplitz import ToeplitzOperator, toeplitz_apply, toeplitz_build
from .banded import jacobi_step, laguerre_step, ultraspherical_step
from .symbols import parts

__all__ = [
    "DIRECT_MAX_DEGREE",
    "FAMILIES",
    "Basis",
    "CoefficientVector",
    "ConversionReport",
    "leg2cheb",
    "cheb2leg",
    "ultra2ultra",
    "jac2jac",
    "jac2cheb",
    "cheb2jac",
    "lag2lag",
    "ultra2cheb",
    "cheb2ultra",
    "convert",
    "clear_plan_cache",
    "plan_cache_size",
    "get_plan",
    "formula_stage",
]

DIRECT_MAX_DEGREE = 512
FAMILIES = ("chebyshev", "legendre", "ultraspherical", "jacobi", "laguerre")
_NPARAMS = {"chebyshev": 0, "legendre": 0, "ultraspherical": 1, "jacobi": 2, "laguerre": 1}
_INT_TOL = 1e-12
_SQRT_PI = math.sqrt(math.pi)
_METHODS = ("auto", "direct", "fast")
_ORACLE_KIND = {
    "leg2cheb": "leg2cheb",
    "cheb2leg": "cheb2leg",
    "ultraspherical": "ultra2ultra",
    "jacobi": "jacobi",
    "laguerre": "lag2lag",
}


# ---------------------------------------------------------------------------
# Bases and coefficient vectors


@dataclass(frozen=True)
class Basis:
    """A polynomial family and its parameters.

    >>> Basis.parse("jacobi:0.5,-0.25")
    Basis(family='jacobi', params=(0.5, -0.25))
    """

    family: str
    params: tuple = ()

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InvalidParameter(f"unknown basis family {self.family!r}")
        params = tuple(float(p) for p in self.params)
        object.__setattr__(self, "params", params)
        if len(params) != _NPARAMS[self.family]:
            raise InvalidParameter(f"{self.family} takes {_NPARAMS[self.family]} parameter(s), got {len(params)}")
        if any(not math.isfinite(p) for p in params):
            raise InvalidParameter("basis parameters must be finite")
        if self.family == "ultraspherical" and params[0] <= 0:
            raise InvalidParameter("ultraspherical parameter must be positive")
        if self.family in ("jacobi", "laguerre") and min(params) <= -1:
            raise InvalidParameter(f"{self.family} parameters must exceed -1")

    @classmethod
    def parse(cls, text: str) -> "Basis":
        """Parse ``family`` or ``family:p1,p2``."""
        family, _, rest = text.strip().partition(":")
        try:
            params = tuple(float(p) for p in rest.split(",")) if rest.strip() else ()
        except ValueError:
            raise InvalidParameter(f"bad basis parameters in {text!r}") from None
        return cls(family.strip().lower(), params)

    @property
    def tag(self) -> str:
        return self.family

    def __str__(self) -> str:
        if not self.params:
            return self.family
        return f"{self.family}:" + ",".join(repr(p) for p in self.params)


@dataclass(frozen=True)
class CoefficientVector:
    """N+1 expansion coefficients in a given basis."""

    values: np.ndarray
    basis: Basis

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.ndim != 1 or values.size == 0:
            raise ContractViolation("coefficients must be a non-empty 1-D sequence")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def degree(self) -> int:
        return self.values.size - 1

    def __len__(self) -> int:
        return self.values.size


@dataclass
class ConversionReport:
    """Filled in by a conversion.

    Attributes
    ----------
    ranks
        Hankel rank K of every plan used, in stage order.
    direct_stages
        Number of formula stages run by the direct algorithm.
    plan_seconds
        Wall time spent building plans (zero when all came from the cache).
    """

    ranks: list = field(default_factory=list)
    direct_stages: int = 0
    plan_seconds: float = 0.0

    @property
    def max_rank(self) -> Optional[int]:
        return max(self.ranks) if self.ranks else None


# ---------------------------------------------------------------------------
# Plan cache


class _PlanCache:
    """Bounded LRU map from (kind, params, n, eps) to immutable plans."""

    def __init__(self, maxsize: int = 32):
        self.maxsize = maxsize
        self._data: OrderedDict = OrderedDict()
        self._lock = threading.Lock()

    def get_or_build(self, key, build: Callable):
        with self._lock:
            if key in self._data:
                self._data.move_to_end(key)
                return self._data[key]
        value = build()
        with self._lock:
            # Another thread may have built the same plan meanwhile; keep the first.
            value = self._data.setdefault(key, value)
            self._data.move_to_end(key)
            while len(self._data) > self.maxsize:
                self._data.popitem(last=False)
        return value

    def clear(self) -> None:
        with self._lock:
            self._data.clear()

    def __len__(self) -> int:
        with self._lock:
            return len(self._data)


_CACHE = _PlanCache()


def clear_plan_cache() -> None:
    _CACHE.clear()


def plan_cache_size() -> int:
    return len(_CACHE)


def _build(kind: str, params: tuple, n: int, eps: float) -> Union[ConversionPlan, ToeplitzOperator]:
    p = parts(kind, params, n)
    if kind == "laguerre":
        return toeplitz_build(p.toeplitz_column, p.toeplitz_row)
    return plan_build(
        n,
        p.d1,
        p.d2,
        (p.toeplitz_column, p.toeplitz_row),
        p.oracle(),
        eps=eps,
        split_first_row=p.split,
        first_row_entries=p.first_row,
    )


def get_plan(
    kind: str,
    params: tuple,
    n: int,
    eps: float = DEFAULT_EPS,
    cache: bool = True,
    report: Optional[ConversionReport] = None,
):
    """Plan for a single formula stage.

    ``kind`` is ``leg2cheb``, ``cheb2leg``, ``ultraspherical`` (λ₁, λ₂),
    ``jacobi`` (α, β, γ) or ``laguerre`` (α₁, α₂).  Laguerre stages are a
    bare :class:`ToeplitzOperator`.
    """
    params = tuple(float(x) for x in params)

    def build():
        start = time.perf_counter()
        plan = _build(kind, params, n, eps)
        if report is not None:
            report.plan_seconds += time.perf_counter() - start
        return plan

    if not cache:
        return build()
    return _CACHE.get_or_build((kind, params, n, float(eps)), build)


# ---------------------------------------------------------------------------
# Stages


@dataclass(frozen=True)
class _Options:
    eps: float
    method: str
    report: Optional[ConversionReport]
    cache: bool = True


def _formula_stage(kind: str, params: tuple, v: np.ndarray, opt: _Options) -> np.ndarray:
    n = v.size
    direct = opt.method == "direct" or (opt.method == "auto" and n - 1 <= DIRECT_MAX_DEGREE)
    if direct:
        if opt.report is not None:
            opt.report.direct_stages += 1
        return oracle.direct_apply(oracle.DenseConversionSpec(_ORACLE_KIND[kind], params, n), v)
    plan = get_plan(kind, params, n, opt.eps, opt.cache, opt.report)
    if isinstance(plan, ToeplitzOperator):
        return toeplitz_apply(plan, v)
    if opt.report is not None:
        opt.report.ranks.append(plan.rank)
    return plan_apply(plan, v)


def _is_integer(x: float) -> bool:
    return abs(x - round(x)) <= _INT_TOL


def _walk(v, start: float, target: float, step, formula) -> np.ndarray:
    """Move a parameter from ``start`` to ``target``.

    ``step(p)`` is the banded factor raising p to p + 1.  Integer gaps use
    only banded factors; otherwise whole steps toward the target come first
    and ``formula(v, p)`` covers the remaining fractional gap from p.
    """
    gap = target - start
    if _is_integer(gap):
        m = int(round(gap))
        for i in range(abs(m)):
            v = step(start + i).apply(v) if m > 0 else step(start - i - 1).solve(v)
        return v
    cur = start
    while abs(target - cur) > 1:
        if target > cur:
            v = step(cur).apply(v)
            cur += 1
        else:
            v = step(cur - 1).solve(v)
            cur -= 1
    return formula(v, cur)


def _flip(v: np.ndarray) -> np.ndarray:
    out = v.copy()
    out[1::2] *= -1
    return out


def _cheb_scale(n: int) -> np.ndarray:
    """P_k^(−1/2,−1/2)(1) = Λ(k)/√π, k = 0 … n−1."""
    return lambda_sequence(2 * n - 1)[0::2] / _SQRT_PI


def _ultra_to_jacobi_scale(lam: float, n: int) -> np.ndarray:
    """C_k^(λ) = s_k P_k^(λ−1/2, λ−1/2) with s_k = (2λ)_k / (λ+1/2)_k."""
    k = np.arange(n, dtype=float)
    return gamma_quotient([2 * lam], [lam + 0.5], base=k) * float(gamma_quotient([lam + 0.5], [2 * lam]))


def _leg2cheb(v, opt):
    return _formula_stage("leg2cheb", (), v, opt)


def _cheb2leg(v, opt):
    return _formula_stage("cheb2leg", (), v, opt)


def _ultra(v, lam1, lam2, opt):
    if lam1 == lam2:
        return v.copy()
    return _walk(
        v, lam1, lam2, ultraspherical_step, lambda w, cur: _formula_stage("ultraspherical", (cur, lam2), w, opt)
    )


def _jacobi_first(v, alpha, beta, gamma, opt):
    """P^(α,β) → P^(γ,β)."""
    if alpha == gamma:
        return v.copy()
    return _walk(
        v,
        alpha,
        gamma,
        lambda p: jacobi_step(p, beta),
        lambda w, cur: _formula_stage("jacobi", (cur, beta, gamma), w, opt),
    )


def _jacobi(v, alpha, beta, gamma, delta, opt):
    if (alpha, beta) == (gamma, delta):
        return v.copy()
    if beta != delta:
        # P_k^(α,β)(x) = (−1)^k P_k^(β,α)(−x)
        v = _flip(_jacobi_first(_flip(v), beta, alpha, delta, opt))
    return _jacobi_first(v, alpha, delta, gamma, opt)


def _jac2cheb(v, alpha, beta, opt):
    return _jacobi(v, alpha, beta, -0.5, -0.5, opt) * _cheb_scale(v.size)


def _cheb2jac(v, alpha, beta, opt):
    return _jacobi(v / _cheb_scale(v.size), -0.5, -0.5, alpha, beta, opt)


def _laguerre(v, alpha1, alpha2, opt):
    if alpha1 == alpha2:
        return v.copy()
    gap = alpha2 - alpha1
    if _is_integer(gap):
        return _walk(v, alpha1, alpha2, laguerre_step, None)
    # The Toeplitz entry formula holds for every noninteger gap.
    return _formula_stage("laguerre", (alpha1, alpha2), v, opt)


# ---------------------------------------------------------------------------
# Argument handling


def _options(eps, method, report) -> _Options:
    if method not in _METHODS:
        raise InvalidParameter(f"method must be one of {_METHODS}, got {method!r}")
    if not (eps > 0 and math.isfinite(eps)):
        raise InvalidParameter("eps must be positive and finite")
    return _Options(float(eps), method, report)


def _unwrap(c, basis: Basis) -> np.ndarray:
    if isinstance(c, CoefficientVector):
        if c.basis != basis:
            raise InvalidParameter(f"input is in basis {c.basis}, expected {basis}")
        return np.array(c.values)
    v = np.array(c, dtype=float)
    if v.ndim != 1 or v.size == 0:
        raise ContractViolation("coefficients must be a non-empty 1-D sequence")
    if not np.all(np.isfinite(v)):
        raise ContractViolation("coefficients must be finite")
    return v


def _run(c, src: Basis, dst: Basis, fn, eps, method, report):
    opt = _options(eps, method, report)
    out = fn(_unwrap(c, src), opt)
    return CoefficientVector(out, dst) if isinstance(c, CoefficientVector) else out


# ---------------------------------------------------------------------------
# Entry points


def leg2cheb(c, eps: float = DEFAULT_EPS, method: str = "auto", report: Optional[ConversionReport] = None):
    """Legendre → Chebyshev coefficients.

    Parameters
    ----------
    c : array_like or CoefficientVector
        Legendre coefficients c₀ … c_N.
    eps : float
        Relative tolerance for the Hankel compression.
    method : {'auto', 'direct', 'fast'}
        ``auto`` uses the direct O(N²) algorithm for N ≤ 512.
    report : ConversionReport, optional
        Receives the Hankel ranks of any plans used.

    Returns
    -------
    ndarray or CoefficientVector
        Same type as ``c``.
    """
    return _run(c, Basis("legendre"), Basis("chebyshev"), _leg2cheb, eps, method, report)


def cheb2leg(c, eps: float = DEFAULT_EPS, method: str = "auto", report: Optional[ConversionReport] = None):
    """Chebyshev → Legendre coefficients (see :func:`leg2cheb` for arguments)."""
    return _run(c, Basis("chebyshev"), Basis("legendre"), _cheb2leg, eps, method, report)


def ultra2ultra(
    c, lam1: float, lam2: float, eps: float = DEFAULT_EPS, method: str = "auto", report=None
):
    """C^(λ₁) → C^(λ₂) coefficients, λ₁, λ₂ > 0."""
    src, dst = Basis("ultraspherical", (lam1,)), Basis("ultraspherical", (lam2,))
    return _run(c, src, dst, lambda v, o: _ultra(v, src.params[0], dst.params[0], o), eps, method, report)


def jac2jac(
    c,
    alpha: float,
    beta: float,
    gamma: float,
    delta: float,
    eps: float = DEFAULT_EPS,
    method: str = "auto",
    report=None,
):
    """P^(α,β) → P^(γ,δ) coefficients, all parameters > −1.

    The second parameter is changed first (through the reflection
    x → −x), then the first.
    """
    src, dst = Basis("jacobi", (alpha, beta)), Basis("jacobi", (gamma, delta))
    return _run(c, src, dst, lambda v, o: _jacobi(v, *src.params, *dst.params, o), eps, method, report)


def jac2cheb(c, alpha: float, beta: float, eps: float = DEFAULT_EPS, method: str = "auto", report=None):
    """P^(α,β) → Chebyshev coefficients."""
    src = Basis("jacobi", (alpha, beta))
    return _run(c, src, Basis("chebyshev"), lambda v, o: _jac2cheb(v, *src.params, o), eps, method, report)


def cheb2jac(c, alpha: float, beta: float, eps: float = DEFAULT_EPS, method: str = "auto", report=None):
    """Chebyshev → P^(α,β) coefficients."""
    dst = Basis("jacobi", (alpha, beta))
    return _run(c, Basis("chebyshev"), dst, lambda v, o: _cheb2jac(v, *dst.params, o), eps, method, report)


def lag2lag(c, alpha1: float, alpha2: float, eps: float = DEFAULT_EPS, method: str = "auto", report=None):
    """L^(α₁) → L^(α₂) coefficients, α₁, α₂ > −1."""
    src, dst = Basis("laguerre", (alpha1,)), Basis("laguerre", (alpha2,))
    return _run(c, src, dst, lambda v, o: _laguerre(v, src.params[0], dst.params[0], o), eps, method, report)


def _ultra2cheb(v, lam, opt):
    a = lam - 0.5
    return _jac2cheb(v * _ultra_to_jacobi_scale(lam, v.size), a, a, opt)


def _cheb2ultra(v, lam, opt):
    a = lam - 0.5
    return _cheb2jac(v, a, a, opt) / _ultra_to_jacobi_scale(lam, v.size)


def ultra2cheb(c, lam: float, eps: float = DEFAULT_EPS, method: str = "auto", report=None):
    """C^(λ) → Chebyshev coefficients, through the proportional Jacobi basis."""
    src = Basis("ultraspherical", (lam,))
    return _run(c, src, Basis("chebyshev"), lambda v, o: _ultra2cheb(v, src.params[0], o), eps, method, report)


def cheb2ultra(c, lam: float, eps: float = DEFAULT_EPS, method: str = "auto", report=None):
    """Chebyshev → C^(λ) coefficients."""
    dst = Basis("ultraspherical", (lam,))
    return _run(c, Basis("chebyshev"), dst, lambda v, o: _cheb2ultra(v, dst.params[0], o), eps, method, report)


def _as_jacobi(basis: Basis) -> Optional[tuple]:
    if basis.family == "legendre":
        return (0.0, 0.0)
    if basis.family == "jacobi":
        return basis.params
    if basis.family == "ultraspherical":
        a = basis.params[0] - 0.5
        return (a, a)
    return None


def _route(src: Basis, dst: Basis) -> Callable:
    if src == dst:
        return lambda v, o: v.copy()
    fs, fd = src.family, dst.family
    if (fs == "laguerre") != (fd == "laguerre"):
        raise InvalidParameter(f"no conversion between {fs} and {fd}")
    if fs == "laguerre":
        return lambda v, o: _laguerre(v, src.params[0], dst.params[0], o)
    if (fs, fd) == ("legendre", "chebyshev"):
        return _leg2cheb
    if (fs, fd) == ("chebyshev", "legendre"):
        return _cheb2leg
    if fs == fd == "ultraspherical":
        return lambda v, o: _ultra(v, src.params[0], dst.params[0], o)

    def to_jacobi(v):
        return v * _ultra_to_jacobi_scale(src.params[0], v.size) if fs == "ultraspherical" else v

    def from_jacobi(v):
        return v / _ultra_to_jacobi_scale(dst.params[0], v.size) if fd == "ultraspherical" else v

    if fd == "chebyshev":
        return lambda v, o: _jac2cheb(to_jacobi(v), *_as_jacobi(src), o)
    if fs == "chebyshev":
        return lambda v, o: from_jacobi(_cheb2jac(v, *_as_jacobi(dst), o))
    return lambda v, o: from_jacobi(_jacobi(to_jacobi(v), *_as_jacobi(src), *_as_jacobi(dst), o))


def convert(
    c: CoefficientVector,
    to: Union[Basis, str],
    eps: float = DEFAULT_EPS,
    method: str = "auto",
    report: Optional[ConversionReport] = None,
) -> CoefficientVector:
    """Convert a coefficient vector to another basis.

    Legendre is treated as Jacobi (0, 0) and C^(λ) as a rescaled Jacobi
    (λ−1/2, λ−1/2) wherever no direct route exists.  Laguerre converts only
    to Laguerre.
    """
    if not isinstance(c, CoefficientVector):
        raise ContractViolation("convert expects a CoefficientVector")
    dst = Basis.parse(to) if isinstance(to, str) else to
    fn = _route(c.basis, dst)
    return _run(c, c.basis, dst, fn, eps, method, report)


def formula_stage(src: Basis, dst: Basis) -> tuple:
    """(kind, params) of the single Toeplitz-dot-Hankel stage taking src to dst.

    Raises
    ------
    InvalidParameter
        If the conversion is not exactly one such stage (integer gaps, gaps
        of one or more, mixed parameter changes, Laguerre).
    """
    fs, fd = src.family, dst.family
    if (fs, fd) == ("legendre", "chebyshev"):
        return "leg2cheb", ()
    if (fs, fd) == ("chebyshev", "legendre"):
        return "cheb2leg", ()
    gap = None
    if fs == fd == "ultraspherical":
        kind, params, gap = "ultraspherical", (src.params[0], dst.params[0]), dst.params[0] - src.params[0]
    elif fs in ("jacobi", "legendre") and fd in ("jacobi", "legendre"):
        (a, b), (g, d) = _as_jacobi(src), _as_jacobi(dst)
        if b == d:
            kind, params, gap = "jacobi", (a, b, g), g - a
    if gap is None or _is_integer(gap) or abs(gap) > 1:
        raise InvalidParameter(f"{src} -> {dst} is not a single Toeplitz-dot-Hankel stage")
    return kind, params
