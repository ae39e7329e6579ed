"""Conversions between orthogonal polynomial coefficient bases."""

from .api import (
    DIRECT_MAX_DEGREE,
    FAMILIES,
    Basis,
    CoefficientVector,
    ConversionReport,
    cheb2jac,
    cheb2leg,
    cheb2ultra,
    clear_plan_cache,
    convert,
    formula_stage,
    get_plan,
    jac2cheb,
    jac2jac,
    lag2lag,
    leg2cheb,
    plan_cache_size,
    ultra2cheb,
    ultra2ultra,
)
from .banded import BandedUpperFactor, jacobi_step, laguerre_step, ultraspherical_step
from .symbols import THParts, hankel_symbol, parts

__all__ = [
    "DIRECT_MAX_DEGREE",
    "FAMILIES",
    "Basis",
    "CoefficientVector",
    "ConversionReport",
    "BandedUpperFactor",
    "THParts",
    "cheb2jac",
    "cheb2leg",
    "cheb2ultra",
    "clear_plan_cache",
    "convert",
    "formula_stage",
    "get_plan",
    "hankel_symbol",
    "jac2cheb",
    "jac2jac",
    "jacobi_step",
    "lag2lag",
    "laguerre_step",
    "leg2cheb",
    "parts",
    "plan_cache_size",
    "ultra2cheb",
    "ultra2ultra",
    "ultraspherical_step",
]
