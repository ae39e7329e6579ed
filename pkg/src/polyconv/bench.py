"""Benchmark and rank-profile drivers behind the ``bench`` and ``rank-profile`` commands."""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .conversions import Basis, CoefficientVector, ConversionReport, clear_plan_cache, convert, formula_stage
from .conversions.symbols import parts
from .errors import InvalidParameter
from .lowrank import DEFAULT_EPS, pivoted_cholesky

__all__ = ["BenchRow", "RankRow", "random_coefficients", "run_bench", "run_rank_profile"]

BENCH_COLUMNS = ("N", "method", "seconds", "plan-seconds", "max-abs-error")
RANK_COLUMNS = ("N", "K", "achieved-tol", "pivots")


@dataclass(frozen=True)
class BenchRow:
    N: int
    method: str
    seconds: float
    plan_seconds: float
    max_abs_error: float

    def cells(self) -> tuple:
        return (self.N, self.method, f"{self.seconds:.6g}", f"{self.plan_seconds:.6g}", f"{self.max_abs_error:.6g}")


@dataclass(frozen=True)
class RankRow:
    N: int
    K: int
    achieved_tol: float
    pivots: tuple

    def cells(self) -> tuple:
        return (self.N, self.K, f"{self.achieved_tol:.6g}", ";".join(str(p) for p in self.pivots))


def random_coefficients(size: int, decay: float, seed: int) -> np.ndarray:
    """``size`` standard normal entries, entry i scaled by (i+1)^(−decay).

    Drawn from PCG64 seeded with (seed, size), so each size gets its own
    reproducible stream.
    """
    rng = np.random.Generator(np.random.PCG64([seed, size]))
    return rng.standard_normal(size) / np.arange(1, size + 1, dtype=float) ** decay


def _check_sizes(sizes: Iterable[int], minimum: int) -> list[int]:
    sizes = [int(s) for s in sizes]
    if not sizes or min(sizes) < minimum:
        raise InvalidParameter(f"sizes must be integers >= {minimum}")
    return sizes


def run_bench(
    src: Basis,
    dst: Basis,
    sizes: Iterable[int],
    decay: float = 1.5,
    seed: int = 0,
    eps: float = DEFAULT_EPS,
) -> list[BenchRow]:
    """Time the direct and fast paths against the direct result.

    ``sizes`` are coefficient counts (matrix dimensions).  Each fast run
    starts from an empty plan cache, so ``seconds`` includes plan
    construction; ``plan_seconds`` is that share.
    """
    rows = []
    for size in _check_sizes(sizes, 1):
        cv = CoefficientVector(random_coefficients(size, decay, seed), src)
        reference = None
        for method in ("direct", "fast"):
            clear_plan_cache()
            report = ConversionReport()
            start = time.perf_counter()
            out = convert(cv, dst, eps=eps, method=method, report=report).values
            seconds = time.perf_counter() - start
            if reference is None:
                reference = out
            err = float(np.max(np.abs(out - reference)))
            rows.append(BenchRow(size, method, seconds, report.plan_seconds, err))
    clear_plan_cache()
    return rows


def run_rank_profile(src: Basis, dst: Basis, sizes: Iterable[int], eps: float = DEFAULT_EPS) -> list[RankRow]:
    """Pivoted Cholesky ranks of the Hankel part of a single-stage conversion.

    ``sizes`` are conversion-matrix dimensions; split-first-row families
    factor the trailing block of dimension size − 1.
    """
    kind, params = formula_stage(src, dst)
    rows = []
    for size in _check_sizes(sizes, 2):
        factor = pivoted_cholesky(parts(kind, params, size).oracle(), eps)
        rows.append(RankRow(size, factor.rank, factor.achieved_tol, tuple(int(p) for p in factor.pivots)))
    return rows
