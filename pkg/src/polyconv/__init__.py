"""Fast conversion between orthogonal polynomial coefficient bases."""

from .conversions import (
    Basis,
    CoefficientVector,
    ConversionReport,
    cheb2jac,
    cheb2leg,
    cheb2ultra,
    clear_plan_cache,
    convert,
    hankel_symbol,
    jac2cheb,
    jac2jac,
    lag2lag,
    leg2cheb,
    plan_cache_size,
    ultra2cheb,
    ultra2ultra,
)
from .errors import ContractViolation, InvalidParameter, NotPsd, PoleError, PolyconvError, RankCapExceeded
from .lowrank import DEFAULT_EPS, LowRankFactor, PsdMatrixOracle, pivoted_cholesky
from .special import GammaRatioSpec, gamma_ratio, lam
from .thop import ConversionPlan, plan_apply, plan_build
from .toeplitz import ToeplitzOperator, toeplitz_apply, toeplitz_build

__version__ = "0.1.0"

__all__ = [
    "Basis",
    "CoefficientVector",
    "ConversionPlan",
    "ConversionReport",
    "ContractViolation",
    "DEFAULT_EPS",
    "GammaRatioSpec",
    "InvalidParameter",
    "LowRankFactor",
    "NotPsd",
    "PoleError",
    "PolyconvError",
    "PsdMatrixOracle",
    "RankCapExceeded",
    "ToeplitzOperator",
    "cheb2jac",
    "cheb2leg",
    "cheb2ultra",
    "clear_plan_cache",
    "convert",
    "gamma_ratio",
    "hankel_symbol",
    "jac2cheb",
    "jac2jac",
    "lag2lag",
    "lam",
    "leg2cheb",
    "pivoted_cholesky",
    "plan_apply",
    "plan_build",
    "plan_cache_size",
    "toeplitz_apply",
    "toeplitz_build",
    "ultra2cheb",
    "ultra2ultra",
]
